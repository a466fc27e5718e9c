use crate::error::{Error, Result};

/// Coefficients of `u_tt + γu_t + δu = Δ(αu + βu_t) + f(u) + g(u_t)` and the
/// weights that distribute the `P' = Q` coupling over the x-, y- and
/// nonlinear subflows.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub omega: [f64; 3],
}

pub const WEIGHT_SUM_TOL: f64 = 1e-12;

impl ModelParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64, delta: f64, omega: [f64; 3]) -> Result<Self> {
        let p = ModelParams {
            alpha,
            beta,
            gamma,
            delta,
            omega,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.alpha, self.beta, self.gamma, self.delta];
        if !all.iter().chain(&self.omega).all(|v| v.is_finite()) {
            return Err(Error::InvalidParameter("parameters must be finite".into()));
        }
        if self.alpha <= 0.0 {
            return Err(Error::InvalidParameter("alpha must be positive".into()));
        }
        if self.beta < 0.0 || self.gamma < 0.0 || self.delta < 0.0 {
            return Err(Error::InvalidParameter(
                "beta, gamma and delta must be nonnegative".into(),
            ));
        }
        if self.omega.iter().any(|&w| w <= 0.0) {
            return Err(Error::InvalidParameter("weights must be positive".into()));
        }
        if (self.omega.iter().sum::<f64>() - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidParameter("weights must sum to 1".into()));
        }
        Ok(())
    }
}
