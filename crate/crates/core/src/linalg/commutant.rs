use nalgebra::DMatrix;

use super::matrix::{ComplexMatrix, C64, ONE, ZERO};
use crate::error::{Error, Result};
use crate::tol::Tolerances;

/// Trace-orthonormal basis of `{Y}′ = {Z : YZ = ZY}`.
#[derive(Debug, Clone)]
pub struct CommutantBasis {
    pub dim: usize,
    pub basis: Vec<ComplexMatrix>,
}

/// Matrix of `Z ↦ YZ − ZY` acting on column-major `vec(Z)`:
/// `I ⊗ Y − Yᵀ ⊗ I`.
fn commutator_map(y: &ComplexMatrix) -> DMatrix<C64> {
    let n = y.n();
    let m = n * n;
    let mut l = DMatrix::<C64>::zeros(m, m);
    for j in 0..n {
        for i in 0..n {
            let row = i + j * n;
            // (YZ)_ij = Σ_k Y_ik Z_kj
            for k in 0..n {
                l[(row, k + j * n)] += y[(i, k)];
            }
            // (ZY)_ij = Σ_k Z_ik Y_kj
            for k in 0..n {
                l[(row, i + k * n)] -= y[(k, j)];
            }
        }
    }
    l
}

/// Nullspace of the commutator map by SVD, with singular values at or below
/// `tol.rank · σ_max` treated as zero.
pub fn commutant_basis(y: &ComplexMatrix, tol: &Tolerances) -> Result<CommutantBasis> {
    let n = y.n();
    let m = n * n;
    let l = commutator_map(y);
    let sigma_max_hint = l.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if sigma_max_hint == 0.0 {
        // Y is scalar: the commutant is the whole matrix algebra.
        let basis = (0..m)
            .map(|k| ComplexMatrix::from_fn(n, |i, j| if i + j * n == k { ONE } else { ZERO }))
            .collect();
        return Ok(CommutantBasis { dim: m, basis });
    }
    let svd =
        nalgebra::linalg::SVD::try_new(l, false, true, f64::EPSILON, 100 * m.max(10)).ok_or(Error::NoConvergence {
            iterations: 100 * m.max(10),
        })?;
    let v_t = svd.v_t.as_ref().expect("requested V^T");
    let sigma_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let cutoff = tol.rank * sigma_max;
    let basis: Vec<ComplexMatrix> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= cutoff)
        .map(|(k, _)| {
            // rows of V^H are v_k^H
            ComplexMatrix::from_fn(n, |i, j| v_t[(k, i + j * n)].conj())
        })
        .collect();
    Ok(CommutantBasis {
        dim: basis.len(),
        basis,
    })
}

/// Whether `W ∈ {Y}″`, given a precomputed commutant basis of `Y`.
///
/// The residual is `max_Z ‖WZ − ZW‖_F / (‖W‖_F ‖Z‖_F)` over the basis.
pub fn in_double_commutant_with(w: &ComplexMatrix, commutant: &CommutantBasis, tol: &Tolerances) -> (bool, f64) {
    let nw = w.norm_fro();
    if nw == 0.0 {
        return (true, 0.0);
    }
    let residual = commutant
        .basis
        .iter()
        .map(|z| w.commutator(z).norm_fro() / (nw * z.norm_fro()))
        .fold(0.0, f64::max);
    (residual <= tol.check, residual)
}

pub fn in_double_commutant(w: &ComplexMatrix, y: &ComplexMatrix, tol: &Tolerances) -> Result<(bool, f64)> {
    if w.n() != y.n() {
        return Err(Error::DimensionMismatch(w.n(), y.n()));
    }
    let commutant = commutant_basis(y, tol)?;
    Ok(in_double_commutant_with(w, &commutant, tol))
}
