use crate::linalg::{ComplexMatrix, C64};
use crate::spectral::SpectralDecomposition;

/// Taylor terms are summed on `X / 2^s` with `‖X / 2^s‖₁ ≤ SCALED_NORM`.
const SCALED_NORM: f64 = 0.5;
const MAX_TERMS: usize = 30;

/// `Σ e^{λ_j} P_j`.
pub fn exp_normal(dec: &SpectralDecomposition) -> ComplexMatrix {
    dec.borel_calculus(|z| z.exp())
}

/// Matrix exponential of an arbitrary square matrix by scaling and squaring
/// around a truncated Taylor series.
pub fn exp_general(x: &ComplexMatrix) -> ComplexMatrix {
    let n = x.n();
    let norm = x.norm_one();
    let squarings = if norm > SCALED_NORM {
        (norm / SCALED_NORM).log2().ceil() as i32
    } else {
        0
    };
    let a = x.scale_real(0.5f64.powi(squarings));

    let mut sum = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..=MAX_TERMS {
        term = (&term * &a).scale(C64::new(1.0 / k as f64, 0.0));
        sum = sum + &term;
        if term.norm_one() <= f64::EPSILON * 0.5 * sum.norm_one() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}
