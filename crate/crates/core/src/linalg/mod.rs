//! Dense linear-algebra kernels: matrices, thin QR, truncated SVD and the
//! matrix exponential.

mod expm;
mod factor;
mod matrix;
mod qr;
mod svd;

pub use expm::expm;
pub use factor::LowRankFactor;
pub use matrix::{gemm, product, rel_diff, DenseMatrix, Op};
pub use qr::{thin_qr, QrPair, DEGENERATE_RANK_TOL};
pub use svd::{truncated_svd, TruncatedSvd, SINGULAR_CORE_TOL};
