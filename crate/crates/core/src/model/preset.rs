//! Named initial-value problems.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::model::{ModelParams, NonlinearPair, ScalarMap};

pub type InitialField = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Initial displacement `p` and velocity `q`, plus the coefficients each
/// named problem is run with by default.
#[derive(Clone)]
pub enum Preset {
    /// Smooth single sine mode with `f = u²`, `g = sin`.
    Example1,
    /// Larger amplitude data with a cubic nonlinearity.
    Example2,
    /// Five-petal rose indicator on `[-3, 3]²`.
    Flower,
    Cardioid,
    Astroid,
    Custom { p: InitialField, q: InitialField },
}

/// Defaults attached to a preset; every field can be overridden by a config.
#[derive(Clone, Debug)]
pub struct PresetDefaults {
    pub bounds: [f64; 4],
    pub params: ModelParams,
    pub nonlinear: NonlinearPair,
    pub t_final: f64,
    /// Rank used for the snapshot experiments.
    pub snapshot_rank: Option<usize>,
}

const SKEWED: [f64; 3] = [0.98, 0.01, 0.01];
const THIRDS: [f64; 3] = [1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0];

impl Preset {
    pub const NAMES: [&'static str; 5] = ["example1", "example2", "flower", "cardioid", "astroid"];

    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "example1" => Preset::Example1,
            "example2" => Preset::Example2,
            "flower" => Preset::Flower,
            "cardioid" => Preset::Cardioid,
            "astroid" => Preset::Astroid,
            other => return Err(Error::UnknownPreset(other.to_string())),
        })
    }

    pub fn custom(
        p: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        q: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Preset::Custom {
            p: Arc::new(p),
            q: Arc::new(q),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Example1 => "example1",
            Preset::Example2 => "example2",
            Preset::Flower => "flower",
            Preset::Cardioid => "cardioid",
            Preset::Astroid => "astroid",
            Preset::Custom { .. } => "custom",
        }
    }

    /// `(p(x, y), q(x, y))`.
    pub fn eval(&self, x: f64, y: f64) -> (f64, f64) {
        match self {
            Preset::Example1 => {
                let s = (3.0 * PI * x).sin() * (3.0 * PI * y).sin();
                (2.0 * s, -s)
            }
            Preset::Example2 => {
                let s = (3.0 * PI * x).sin() * (3.0 * PI * y).sin();
                let c = (3.0 * PI * x).cos() * (3.0 * PI * y).cos();
                (10.0 * s, -10.0 * c)
            }
            Preset::Flower => {
                let r2 = x * x + y * y;
                // atan2 keeps the rose defined on the whole plane, x = 0 included
                let theta = y.atan2(x);
                let edge = (5.0 * theta).sin() + 1.5;
                let p = if r2 <= edge * edge { 0.1 * (r2 + 1.0) } else { 0.0 };
                (p, 0.5 * p)
            }
            Preset::Cardioid => {
                let r2 = x * x + y * y;
                let w = r2 + x;
                let p = if w <= r2.sqrt() {
                    0.15 * (-(w * w) + r2).exp()
                } else {
                    0.0
                };
                (p, -0.25 * p)
            }
            Preset::Astroid => {
                // x^(2/3) read as (x²)^(1/3) so negative coordinates stay real
                let a = (x * x).cbrt() + (y * y).cbrt();
                let p = if a <= 0.49f64.cbrt() { -(a + 0.1) } else { 0.0 };
                (p, 10.0 * p)
            }
            Preset::Custom { p, q } => (p(x, y), q(x, y)),
        }
    }

    pub fn defaults(&self) -> PresetDefaults {
        let unit = [0.0, 1.0, 0.0, 1.0];
        let ex3 = |bounds, f, omega| PresetDefaults {
            bounds,
            params: params(0.6, 0.3, 0.05, 0.0, omega),
            nonlinear: NonlinearPair::new(f, ScalarMap::Zero),
            t_final: 3.0,
            snapshot_rank: None,
        };
        match self {
            Preset::Example1 => PresetDefaults {
                bounds: unit,
                params: params(1.0, 0.1, 0.001, 1.0, SKEWED),
                nonlinear: NonlinearPair::new(ScalarMap::Square, ScalarMap::Sin),
                t_final: 0.1,
                snapshot_rank: None,
            },
            Preset::Example2 => PresetDefaults {
                bounds: unit,
                params: params(1.0, 0.001, 1e-6, 1.0, THIRDS),
                nonlinear: NonlinearPair::new(ScalarMap::Cube, ScalarMap::Zero),
                t_final: 1.0,
                snapshot_rank: None,
            },
            Preset::Flower => PresetDefaults {
                snapshot_rank: Some(88),
                ..ex3([-3.0, 3.0, -3.0, 3.0], ScalarMap::Square, SKEWED)
            },
            Preset::Cardioid => PresetDefaults {
                snapshot_rank: Some(66),
                ..ex3([-2.5, 0.5, -1.5, 1.5], ScalarMap::Logistic, THIRDS)
            },
            Preset::Astroid => PresetDefaults {
                snapshot_rank: Some(73),
                ..ex3([-1.0, 1.0, -1.0, 1.0], ScalarMap::AbsSin, SKEWED)
            },
            Preset::Custom { .. } => PresetDefaults {
                bounds: unit,
                params: params(1.0, 0.0, 0.0, 0.0, THIRDS),
                nonlinear: NonlinearPair::zero(),
                t_final: 1.0,
                snapshot_rank: None,
            },
        }
    }
}

fn params(alpha: f64, beta: f64, gamma: f64, delta: f64, omega: [f64; 3]) -> ModelParams {
    ModelParams {
        alpha,
        beta,
        gamma,
        delta,
        omega,
    }
}

impl fmt::Debug for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example1_at_one_sixth() {
        let (p, q) = Preset::Example1.eval(1.0 / 6.0, 1.0 / 6.0);
        assert!((p - 2.0).abs() < 1e-14);
        assert!((q + 1.0).abs() < 1e-14);
    }

    #[test]
    fn flower_at_origin() {
        let (p, q) = Preset::Flower.eval(0.0, 0.0);
        assert!((p - 0.1).abs() < 1e-15);
        assert!((q - 0.05).abs() < 1e-15);
        // x = 0 is well defined: θ = π/2, sin(5π/2) + 1.5 = 2.5
        assert!(Preset::Flower.eval(0.0, 2.4).0 > 0.0);
        assert_eq!(Preset::Flower.eval(0.0, 2.6).0, 0.0);
    }

    #[test]
    fn astroid_is_symmetric() {
        let a = Preset::Astroid.eval(0.2, 0.1).0;
        assert!(a < 0.0);
        assert_eq!(a, Preset::Astroid.eval(-0.2, -0.1).0);
        assert_eq!(Preset::Astroid.eval(0.9, 0.0).0, 0.0);
    }

    #[test]
    fn cardioid_support() {
        // the cusp region around (-1, 0) lies inside, (0.4, 0) outside
        assert!(Preset::Cardioid.eval(-1.0, 0.0).0 > 0.0);
        assert_eq!(Preset::Cardioid.eval(0.4, 0.0).0, 0.0);
    }

    #[test]
    fn defaults_are_valid() {
        for name in Preset::NAMES {
            let d = Preset::from_name(name).unwrap().defaults();
            d.params.validate().unwrap();
        }
        assert!(Preset::from_name("square").is_err());
    }
}
