use std::collections::BTreeMap;
use std::f64::consts::PI;

use super::decomposition::SpectralDecomposition;
use super::region::{Edge, Region};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::tol::Tolerances;

/// Projections attached to horizontal strips for a pair `(X, Y)`, keyed by
/// the branch index `k` (so `e(0)` is `E_1` and `e(-1)` is `E_{-1}`):
///
/// * `p[k] = E_X(ℝ + i((2k−1)π, (2k+1)π))`, `q[k]` likewise for `Y`;
/// * `e[k] = E_X(ℝ + i(2k+1)π)`, `f[k]` likewise for `Y`.
#[derive(Debug, Clone)]
pub struct StripProjections {
    pub k_lo: i64,
    pub k_hi: i64,
    pub p: BTreeMap<i64, ComplexMatrix>,
    pub q: BTreeMap<i64, ComplexMatrix>,
    pub e: BTreeMap<i64, ComplexMatrix>,
    pub f: BTreeMap<i64, ComplexMatrix>,
}

/// `ℝ + i((2k−1)π, (2k+1)π)`.
pub fn open_strip(k: i64) -> Region {
    Region::horizontal_band(Edge::open((2 * k - 1) as f64 * PI), Edge::open((2 * k + 1) as f64 * PI))
}

/// `ℝ + i(2k+1)π`.
pub fn odd_line(k: i64) -> Region {
    Region::HLine {
        c: (2 * k + 1) as f64 * PI,
    }
}

fn ensure_window(dec: &SpectralDecomposition, k_lo: i64, k_hi: i64, tol: &Tolerances) -> Result<()> {
    let lo = (2 * k_lo + 1) as f64 * PI - tol.boundary;
    let hi = (2 * k_hi + 1) as f64 * PI + tol.boundary;
    match dec.eigenvalues().find(|z| z.im < lo || z.im > hi) {
        Some(point) => Err(Error::SpectrumOutOfRange { point, k_lo, k_hi }),
        None => Ok(()),
    }
}

fn measures(
    dec: &SpectralDecomposition,
    k_lo: i64,
    k_hi: i64,
    tol: &Tolerances,
) -> Result<(BTreeMap<i64, ComplexMatrix>, BTreeMap<i64, ComplexMatrix>)> {
    let mut strips = BTreeMap::new();
    let mut lines = BTreeMap::new();
    for k in k_lo..=k_hi {
        strips.insert(k, dec.spectral_measure(&open_strip(k), tol)?);
        lines.insert(k, dec.spectral_measure(&odd_line(k), tol)?);
    }
    Ok((strips, lines))
}

pub fn strip_projections(
    dec_x: &SpectralDecomposition,
    dec_y: &SpectralDecomposition,
    k_lo: i64,
    k_hi: i64,
    tol: &Tolerances,
) -> Result<StripProjections> {
    if k_lo > k_hi {
        return Err(Error::InvalidConfig(format!("empty strip window [{k_lo}, {k_hi}]")));
    }
    if dec_x.n != dec_y.n {
        return Err(Error::DimensionMismatch(dec_x.n, dec_y.n));
    }
    ensure_window(dec_x, k_lo, k_hi, tol)?;
    ensure_window(dec_y, k_lo, k_hi, tol)?;
    let (p, e) = measures(dec_x, k_lo, k_hi, tol)?;
    let (q, f) = measures(dec_y, k_lo, k_hi, tol)?;
    Ok(StripProjections { k_lo, k_hi, p, q, e, f })
}

impl StripProjections {
    pub fn n(&self) -> usize {
        self.p.values().next().map_or(0, ComplexMatrix::n)
    }

    /// `E_{2k+1}`; zero outside the window.
    pub fn e(&self, k: i64) -> ComplexMatrix {
        self.e
            .get(&k)
            .cloned()
            .unwrap_or_else(|| ComplexMatrix::zeros(self.n()))
    }

    /// `F_{2k+1}`; zero outside the window.
    pub fn f(&self, k: i64) -> ComplexMatrix {
        self.f
            .get(&k)
            .cloned()
            .unwrap_or_else(|| ComplexMatrix::zeros(self.n()))
    }

    /// `‖Σ_k (P + E) − I‖_F` and `‖Σ_k (Q + F) − I‖_F`.
    pub fn resolution_residuals(&self) -> (f64, f64) {
        let n = self.n();
        let sum = |a: &BTreeMap<i64, ComplexMatrix>, b: &BTreeMap<i64, ComplexMatrix>| {
            a.values()
                .chain(b.values())
                .fold(ComplexMatrix::zeros(n), |acc, m| acc + m)
                .sub_identity_norm()
        };
        (sum(&self.p, &self.e), sum(&self.q, &self.f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::C64;
    use crate::spectral::normal_eig;

    fn dec(diag: &[C64]) -> SpectralDecomposition {
        normal_eig(&ComplexMatrix::from_diag(diag), &Tolerances::default()).unwrap()
    }

    fn i(im: f64) -> C64 {
        C64::new(0.0, im)
    }

    #[test]
    fn boundary_flip_pair() {
        let t = Tolerances::default();
        let sp = strip_projections(&dec(&[i(PI), i(-PI)]), &dec(&[i(-PI), i(PI)]), -1, 0, &t).unwrap();
        assert_eq!(sp.e(0), ComplexMatrix::from_real_diag(&[1.0, 0.0]));
        assert_eq!(sp.f(0), ComplexMatrix::from_real_diag(&[0.0, 1.0]));
        assert_eq!(sp.e(-1), ComplexMatrix::from_real_diag(&[0.0, 1.0]));
        assert_eq!(sp.f(-1), ComplexMatrix::from_real_diag(&[1.0, 0.0]));
        for m in sp.p.values().chain(sp.q.values()) {
            assert_eq!(*m, ComplexMatrix::zeros(2));
        }
        let (rx, ry) = sp.resolution_residuals();
        assert!(rx < 1e-15 && ry < 1e-15);
    }

    #[test]
    fn scalar_zero() {
        let t = Tolerances::default();
        let sp = strip_projections(&dec(&[i(0.0)]), &dec(&[i(0.0)]), -1, 0, &t).unwrap();
        assert_eq!(sp.p[&0], ComplexMatrix::identity(1));
        assert_eq!(sp.q[&0], ComplexMatrix::identity(1));
        for m in sp.e.values().chain(sp.f.values()) {
            assert_eq!(*m, ComplexMatrix::zeros(1));
        }
    }

    #[test]
    fn shifted_branch_scalar() {
        let t = Tolerances::default();
        let x = dec(&[i(3.0)]);
        let y = dec(&[i(3.0 - 2.0 * PI)]);
        // 3 − 2π ≈ −3.28 lies below −π, outside the window [−1, 1]
        assert!(matches!(
            strip_projections(&x, &y, -1, 1, &t),
            Err(Error::SpectrumOutOfRange { .. })
        ));
        let sp = strip_projections(&x, &y, -2, 0, &t).unwrap();
        assert_eq!(sp.p[&0], ComplexMatrix::identity(1));
        assert_eq!(sp.q[&-1], ComplexMatrix::identity(1));
        assert_eq!(sp.p[&-1], ComplexMatrix::zeros(1));
    }
}
