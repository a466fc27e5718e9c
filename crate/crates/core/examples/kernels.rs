//! The dense building blocks: thin QR, truncated SVD and the matrix
//! exponential, each checked against an identity it has to satisfy.

use dlrwave::linalg::{expm, rel_diff, thin_qr, truncated_svd, DenseMatrix};
use dlrwave::splitting::exp2x2;

fn main() -> dlrwave::Result<()> {
    // a smooth 40×30 matrix with fast singular value decay
    let a = DenseMatrix::from_fn(40, 30, |i, j| 1.0 / (1.0 + i as f64 + 2.0 * j as f64));

    let qr = thin_qr(&a)?;
    println!(
        "thin QR: ‖QR − A‖/‖A‖ = {:.2e}, ‖QᵀQ − I‖ = {:.2e}",
        rel_diff(&qr.q.dot(&qr.r), &a),
        qr.q.orthonormality_defect()
    );

    let sv = truncated_svd(&a, 30)?.singular_values;
    println!("leading singular values: {:.3e} {:.3e} {:.3e} {:.3e}", sv[0], sv[1], sv[2], sv[3]);
    for r in [2, 4, 8] {
        let t = truncated_svd(&a, r)?;
        let tail = sv[r..].iter().map(|s| s * s).sum::<f64>().sqrt();
        let err = t.factor.to_dense().sub(&a).frobenius_norm();
        println!("rank {r:2}: ‖A − A_r‖_F = {err:.3e}, optimal {tail:.3e}");
    }

    // a damped oscillator generator: Padé against the closed form
    let m = [[0.0, 1.0], [-40.0, -0.3]];
    let pade = expm(&DenseMatrix::from_rows(&[&m[0], &m[1]]).scaled(0.7))?;
    let exact = exp2x2(m, 0.7);
    let exact = DenseMatrix::from_rows(&[&exact[0], &exact[1]]);
    println!("exp(0.7 G): Padé vs closed form {:.2e}", rel_diff(&pade, &exact));
    Ok(())
}
