use std::f64::consts::PI;

use super::exp::exp_general;
use super::log::principal_log;
use crate::error::{Error, Result};
use crate::linalg::{general_eigenvalues, normality_residual, nullity, ComplexMatrix, C64};
use crate::tol::Tolerances;

/// `Y = N0 + 2πi·W` with `N0` the principal logarithm of the normal `e^Y`.
#[derive(Debug, Clone)]
pub struct KurepaDecomposition {
    pub n0: ComplexMatrix,
    pub w: ComplexMatrix,
    /// `‖Y − (N0 + 2πiW)‖_F / max(1, ‖Y‖_F)`.
    pub reconstruction_residual: f64,
    /// `‖N0 W − W N0‖_F / (max(1, ‖N0‖_F) · max(1, ‖W‖_F))`.
    pub commute_residual: f64,
    /// Largest distance from an eigenvalue of `W` to the nearest integer.
    pub integer_spectrum_residual: f64,
    /// Eigenvalues of `W` rounded to the nearest integer, ascending.
    pub integer_spectrum: Vec<i64>,
    /// Whether the geometric multiplicities of the integer eigenvalues add up
    /// to the dimension.
    pub diagonalizable: bool,
}

pub fn kurepa_decompose(y: &ComplexMatrix, tol: &Tolerances) -> Result<KurepaDecomposition> {
    let n = y.n();
    let e = exp_general(y);
    let residual = normality_residual(&e);
    if residual > tol.norm {
        return Err(Error::ExpNotNormal { residual });
    }
    let n0 = principal_log(&e, tol)?;
    let w = (y - &n0).scale(C64::new(0.0, -1.0 / (2.0 * PI)));

    let rebuilt = &n0 + &w.scale(C64::new(0.0, 2.0 * PI));
    let reconstruction_residual = (&rebuilt - y).norm_fro() / y.norm_fro().max(1.0);

    let scale = n0.norm_fro().max(1.0) * w.norm_fro().max(1.0);
    let commute_residual = n0.commutator(&w).norm_fro() / scale;

    let eigenvalues = general_eigenvalues(&w)?;
    let mut integer_spectrum_residual: f64 = 0.0;
    let mut integer_spectrum = Vec::with_capacity(n);
    for z in &eigenvalues {
        let k = z.re.round();
        integer_spectrum_residual = integer_spectrum_residual.max((z - C64::new(k, 0.0)).norm());
        integer_spectrum.push(k as i64);
    }
    integer_spectrum.sort_unstable();

    let mut distinct = integer_spectrum.clone();
    distinct.dedup();
    let geometric: usize = distinct
        .iter()
        .map(|&k| {
            let shifted = &w - &ComplexMatrix::identity(n).scale_real(k as f64);
            nullity(&shifted, tol.int)
        })
        .sum();

    Ok(KurepaDecomposition {
        n0,
        w,
        reconstruction_residual,
        commute_residual,
        integer_spectrum_residual,
        integer_spectrum,
        diagonalizable: geometric == n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn scalar_on_boundary() {
        let t = Tolerances::default();
        let k = kurepa_decompose(&ComplexMatrix::from_diag(&[c(0.0, PI)]), &t).unwrap();
        assert!((k.n0[(0, 0)] - c(0.0, PI)).norm() < 1e-12);
        assert!(k.w.norm_fro() < 1e-12);
        assert_eq!(k.integer_spectrum, vec![0]);
    }

    #[test]
    fn scalar_inside_strip() {
        let t = Tolerances::default();
        let k = kurepa_decompose(&ComplexMatrix::from_diag(&[c(0.0, 3.0)]), &t).unwrap();
        assert!((k.n0[(0, 0)] - c(0.0, 3.0)).norm() < 1e-12);
        assert!(k.w.norm_fro() < 1e-12);
    }

    #[test]
    fn similarity_oracle() {
        // T diag(iπ, −iπ) T⁻¹ with T = [[1,1],[0,1]] = [[iπ, −2iπ], [0, −iπ]]
        let t = Tolerances::default();
        let y =
            ComplexMatrix::from_rows(&[vec![c(0.0, PI), c(0.0, -2.0 * PI)], vec![c(0.0, 0.0), c(0.0, -PI)]]).unwrap();
        let k = kurepa_decompose(&y, &t).unwrap();
        assert!((&k.n0 - &ComplexMatrix::identity(2).scale(c(0.0, PI))).norm_fro() < 1e-10);
        let w = ComplexMatrix::from_real_rows(&[vec![0.0, -1.0], vec![0.0, -1.0]]).unwrap();
        assert!((&k.w - &w).norm_fro() < 1e-10);
        assert_eq!(k.integer_spectrum, vec![-1, 0]);
        assert!(k.integer_spectrum_residual < 1e-10);
        assert!(k.commute_residual < 1e-10);
        assert!(k.diagonalizable);
    }

    #[test]
    fn non_normal_exponential_rejected() {
        let y = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(
            kurepa_decompose(&y, &Tolerances::default()),
            Err(Error::ExpNotNormal { .. })
        ));
    }
}
