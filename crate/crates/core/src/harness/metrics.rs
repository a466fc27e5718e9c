use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

/// `‖approx − reference‖_F / ‖reference‖_F`.
pub fn relerr(approx: &DenseMatrix, reference: &DenseMatrix) -> Result<f64> {
    if approx.shape() != reference.shape() {
        return Err(Error::Dimension {
            op: "relerr",
            expected: reference.shape(),
            got: approx.shape(),
        });
    }
    let denom = reference.frobenius_norm();
    if denom == 0.0 {
        return Err(Error::ZeroReference);
    }
    Ok(approx.sub(reference).frobenius_norm() / denom)
}

/// Observed order between two resolutions: `log(e₁/e₂) / log(τ₁/τ₂)`.
pub fn observed_rate(e1: f64, e2: f64, tau1: f64, tau2: f64) -> Result<f64> {
    let positive = |v: f64| v > 0.0 && v.is_finite();
    if !(positive(e1) && positive(e2) && positive(tau1) && positive(tau2)) {
        return Err(Error::InvalidParameter("rate needs positive errors and steps".into()));
    }
    if tau1 == tau2 {
        return Err(Error::InvalidParameter("rate needs two distinct step sizes".into()));
    }
    Ok((e1 / e2).ln() / (tau1 / tau2).ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relerr_cases() {
        let x = DenseMatrix::from_rows(&[&[1.0, -2.0], &[0.5, 3.0]]);
        assert_eq!(relerr(&x, &x).unwrap(), 0.0);
        assert!((relerr(&x.scaled(2.0), &x).unwrap() - 1.0).abs() < 1e-15);
        let a = DenseMatrix::from_rows(&[&[1.0, 0.0]]);
        let b = DenseMatrix::from_rows(&[&[0.0, 1.0]]);
        assert!((relerr(&a, &b).unwrap() - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert!(matches!(relerr(&a, &DenseMatrix::zeros(1, 2)), Err(Error::ZeroReference)));
        assert!(relerr(&a, &x).is_err());
    }

    #[test]
    fn rate_cases() {
        assert_eq!(observed_rate(3.0, 3.0, 0.1, 0.05).unwrap(), 0.0);
        assert!((observed_rate(4.0, 1.0, 0.1, 0.05).unwrap() - 2.0).abs() < 1e-14);
        let r = observed_rate(8.4712e-5, 2.1922e-5, 0.005, 0.0025).unwrap();
        assert!((r - 1.9502).abs() < 5e-5, "{r}");
        assert!(observed_rate(0.0, 1.0, 0.1, 0.05).is_err());
        assert!(observed_rate(1.0, 1.0, 0.1, 0.1).is_err());
    }
}
