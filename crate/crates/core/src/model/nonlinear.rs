use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

/// Scalar map applied entrywise.
#[derive(Clone)]
pub enum ScalarMap {
    Zero,
    /// `u²`
    Square,
    /// `u³`
    Cube,
    Sin,
    /// `u (1 − u)`
    Logistic,
    /// `|sin u|`
    AbsSin,
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl ScalarMap {
    pub const NAMES: [&'static str; 6] = ["zero", "square", "cube", "sin", "logistic", "abs_sin"];

    #[inline]
    pub fn eval(&self, u: f64) -> f64 {
        match self {
            ScalarMap::Zero => 0.0,
            ScalarMap::Square => u * u,
            ScalarMap::Cube => u * u * u,
            ScalarMap::Sin => u.sin(),
            ScalarMap::Logistic => u * (1.0 - u),
            ScalarMap::AbsSin => u.sin().abs(),
            ScalarMap::Custom(f) => f(u),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ScalarMap::Zero => "zero",
            ScalarMap::Square => "square",
            ScalarMap::Cube => "cube",
            ScalarMap::Sin => "sin",
            ScalarMap::Logistic => "logistic",
            ScalarMap::AbsSin => "abs_sin",
            ScalarMap::Custom(_) => "custom",
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ScalarMap::Zero)
    }

    pub fn is_custom(&self) -> bool {
        matches!(self, ScalarMap::Custom(_))
    }

    pub fn apply(&self, m: &DenseMatrix) -> DenseMatrix {
        m.map(|x| self.eval(x))
    }
}

impl fmt::Debug for ScalarMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScalarMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "zero" => ScalarMap::Zero,
            "square" => ScalarMap::Square,
            "cube" => ScalarMap::Cube,
            "sin" => ScalarMap::Sin,
            "logistic" => ScalarMap::Logistic,
            "abs_sin" => ScalarMap::AbsSin,
            other => return Err(Error::UnknownNonlinearity(other.to_string())),
        })
    }
}

/// `F(P, Q) = f(P) + g(Q)`.
#[derive(Clone, Debug)]
pub struct NonlinearPair {
    pub f: ScalarMap,
    pub g: ScalarMap,
}

impl NonlinearPair {
    pub fn new(f: ScalarMap, g: ScalarMap) -> Self {
        NonlinearPair { f, g }
    }

    pub fn zero() -> Self {
        Self::new(ScalarMap::Zero, ScalarMap::Zero)
    }

    pub fn g_is_zero(&self) -> bool {
        self.g.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.g.is_zero()
    }
}

/// Entrywise `f(P_ij) + g(Q_ij)`; `Q` is not read when `g ≡ 0`.
pub fn apply_nonlinear(nl: &NonlinearPair, p: &DenseMatrix, q: &DenseMatrix) -> Result<DenseMatrix> {
    if p.shape() != q.shape() {
        return Err(Error::Dimension {
            op: "apply_nonlinear",
            expected: p.shape(),
            got: q.shape(),
        });
    }
    if nl.g_is_zero() {
        return Ok(nl.f.apply(p));
    }
    let (pd, qd) = (p.as_slice(), q.as_slice());
    let cols = p.cols();
    Ok(DenseMatrix::from_fn(p.rows(), cols, |i, j| {
        let k = i * cols + j;
        nl.f.eval(pd[k]) + nl.g.eval(qd[k])
    }))
}
