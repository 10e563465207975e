use nalgebra::DMatrix;

use super::jacobi::{herm_eig, jacobi_raw};
use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};
use crate::tol::Tolerances;

/// Groups indices of an ascending list into runs whose consecutive gaps are
/// at most `radius`.
fn ascending_clusters(values: &[f64], radius: f64) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > radius {
            out.push(start..i);
            start = i;
        }
    }
    out
}

/// Unitary `V` such that `V*AV` and `V*BV` are both diagonal, for commuting
/// Hermitian `A`, `B`.
///
/// `A` is diagonalized first; inside each eigenvalue cluster of `A` the
/// compression of `B` is diagonalized and the cluster basis rotated to match.
pub fn simultaneous_diagonalize(a: &ComplexMatrix, b: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(a.n(), b.n()));
    }
    let (na, nb) = (a.norm_fro(), b.norm_fro());
    // Scaled by (‖A‖ + ‖B‖)² rather than ‖A‖‖B‖: the real or imaginary
    // part of a normal matrix is often pure roundoff.
    let scale = (na + nb).powi(2);
    let comm = a.commutator(b).norm_fro();
    if comm > tol.comm * scale {
        return Err(Error::NotCommuting {
            residual: comm / scale.max(f64::MIN_POSITIVE),
        });
    }
    if b.hermitian_residual() > tol.herm * nb {
        return Err(Error::NotHermitian {
            residual: b.hermitian_residual() / nb,
        });
    }

    let eig = herm_eig(a, tol)?;
    let mut v = eig.vectors.into_dmatrix();
    let radius = tol.cluster * na.max(1.0);
    let b_sym = b.re_part();

    for range in ascending_clusters(&eig.values, radius) {
        if range.len() < 2 {
            continue;
        }
        let block: DMatrix<C64> = v.columns(range.start, range.len()).into_owned();
        let compressed = b_sym.compress(&block);
        let compressed = (&compressed + compressed.adjoint()) * C64::new(0.5, 0.0);
        let norm = compressed.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let (_, w) = jacobi_raw(compressed, norm, tol.max_sweeps)?;
        let rotated = block * w;
        v.columns_mut(range.start, range.len()).copy_from(&rotated);
    }
    Ok(ComplexMatrix::from_dmatrix_unchecked(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn off_diag(m: &ComplexMatrix) -> f64 {
        let mut s = 0.0;
        for i in 0..m.n() {
            for j in 0..m.n() {
                if i != j {
                    s += m[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    }

    fn assert_joint(a: &ComplexMatrix, b: &ComplexMatrix, v: &ComplexMatrix) {
        let tol = Tolerances::default();
        let bound = tol.eig * a.n() as f64 * (a.norm_fro() + b.norm_fro());
        assert!((&v.adjoint() * v).sub_identity_norm() < 1e-13);
        assert!(off_diag(&(&(&v.adjoint() * a) * v)) <= bound);
        assert!(off_diag(&(&(&v.adjoint() * b) * v)) <= bound);
    }

    #[test]
    fn already_diagonal() {
        let a = ComplexMatrix::from_real_diag(&[1.0, 2.0]);
        let b = ComplexMatrix::from_real_diag(&[3.0, 4.0]);
        let v = simultaneous_diagonalize(&a, &b, &Tolerances::default()).unwrap();
        assert_joint(&a, &b, &v);
        for i in 0..2 {
            assert!((v[(i, i)].norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn identity_defers_to_second_matrix() {
        let a = ComplexMatrix::identity(2);
        let b = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let v = simultaneous_diagonalize(&a, &b, &Tolerances::default()).unwrap();
        assert_joint(&a, &b, &v);
        // columns are (1, ±1)/√2 up to phase
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for j in 0..2 {
            assert!((v[(0, j)].norm() - h).abs() < 1e-14);
            assert!((v[(1, j)].norm() - h).abs() < 1e-14);
        }
    }

    #[test]
    fn equal_matrices() {
        let a = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let v = simultaneous_diagonalize(&a, &a, &Tolerances::default()).unwrap();
        assert_joint(&a, &a, &v);
    }

    #[test]
    fn roundoff_sized_partner() {
        let a = ComplexMatrix::from_real_rows(&[vec![1e-17, 3e-17], vec![3e-17, -2e-17]]).unwrap();
        let b = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let v = simultaneous_diagonalize(&a, &b, &Tolerances::default()).unwrap();
        assert_joint(&a, &b, &v);
    }

    #[test]
    fn non_commuting_rejected() {
        let a = ComplexMatrix::from_real_diag(&[1.0, 2.0]);
        let b = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert!(matches!(
            simultaneous_diagonalize(&a, &b, &Tolerances::default()),
            Err(Error::NotCommuting { .. })
        ));
    }

    #[test]
    fn clusters_split_on_gaps() {
        let c = ascending_clusters(&[0.0, 1e-12, 1.0, 2.0, 2.0], 1e-9);
        assert_eq!(c, vec![0..2, 2..3, 3..5]);
        assert!(ascending_clusters(&[], 1.0).is_empty());
    }
}
