//! Dense complex matrix substrate: arithmetic, Hermitian eigensolver,
//! simultaneous diagonalization, modulus and commutants.

mod commutant;
mod general;
mod jacobi;
mod matrix;
mod simdiag;

pub use commutant::{commutant_basis, in_double_commutant, in_double_commutant_with, CommutantBasis};
pub use general::{condition_number, general_eigenvalues, nullity, singular_values};
pub use jacobi::{herm_eig, HermEig};
pub use matrix::{ComplexMatrix, C64, I, ONE, ZERO};
pub use simdiag::simultaneous_diagonalize;

use crate::error::Result;
use crate::tol::Tolerances;

/// Relative normality defect `‖X*X − XX*‖_F / ‖X‖_F²` (zero for `X = 0`).
pub fn normality_residual(x: &ComplexMatrix) -> f64 {
    let nx = x.norm_fro();
    if nx == 0.0 {
        return 0.0;
    }
    let xa = x.adjoint();
    (&(&xa * x) - &(x * &xa)).norm_fro() / (nx * nx)
}

pub fn is_normal(x: &ComplexMatrix, tol: &Tolerances) -> bool {
    normality_residual(x) <= tol.norm
}

/// `|X| = (X*X)^{1/2}`, positive semidefinite; valid for non-normal `X`.
///
/// Eigenvalues of `X*X` below the rounding floor (including small negative
/// ones) are clamped to zero before the square root.
pub fn modulus(x: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    let gram = &x.adjoint() * x;
    let floor = 64.0 * f64::EPSILON * x.n() as f64 * gram.norm_fro();
    let eig = herm_eig(&gram.re_part(), tol)?;
    let roots: Vec<C64> = eig
        .values
        .iter()
        .map(|&mu| C64::new(if mu <= floor { 0.0 } else { mu.sqrt() }, 0.0))
        .collect();
    Ok(ComplexMatrix::conjugate_diag(&eig.vectors, &roots))
}
