//! Shared hypothesis tests and residual helpers.

use std::f64::consts::PI;

use crate::linalg::{is_normal, normality_residual, ComplexMatrix, C64};
use crate::logs::exp_general;
use crate::spectral::SpectralDecomposition;
use crate::tol::Tolerances;

use super::CheckReport;

/// `‖e^A − e^B‖_F / ‖e^A‖_F`.
pub(crate) fn exp_gap(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    let ea = exp_general(a);
    let eb = exp_general(b);
    (&ea - &eb).norm_fro() / ea.norm_fro().max(f64::MIN_POSITIVE)
}

/// `‖A‖ / max(1, s)`.
pub(crate) fn rel(value: f64, scale: f64) -> f64 {
    value / scale.max(1.0)
}

/// `‖AB − BA‖ / (‖A‖ ‖B‖)`, zero when either factor vanishes.
pub(crate) fn commute_residual(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    let (na, nb) = (a.norm_fro(), b.norm_fro());
    if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        a.commutator(b).norm_fro() / (na * nb)
    }
}

/// Every eigenvalue has `|Im| ≤ π` up to the boundary band.
pub(crate) fn spectrum_in_strip(dec: &SpectralDecomposition, tol: &Tolerances) -> bool {
    dec.eigenvalues().all(|z| z.im.abs() <= PI + tol.boundary)
}

/// Eigenvalue sits on `ℝ ± iπ`.
pub(crate) fn on_strip_boundary(z: C64, tol: &Tolerances) -> bool {
    (z.im.abs() - PI).abs() <= tol.boundary
}

/// Distance from a real number to the nearest odd multiple of `π`.
pub(crate) fn distance_to_odd_pi(t: f64) -> f64 {
    let k = ((t - PI) / (2.0 * PI)).round();
    (t - (2.0 * k + 1.0) * PI).abs()
}

pub(crate) fn is_hermitian(x: &ComplexMatrix, tol: &Tolerances) -> bool {
    x.hermitian_residual() <= tol.herm * x.norm_fro()
}

/// Records the normality of each labelled operand; returns false on the
/// first failure after noting it.
pub(crate) fn require_normal(report: &mut CheckReport, operands: &[(&str, &ComplexMatrix)], tol: &Tolerances) -> bool {
    for (label, m) in operands {
        if !is_normal(m, tol) {
            report.residual(&format!("normality_{label}"), normality_residual(m));
            report.note(&format!("{label} is not normal"));
            return false;
        }
    }
    true
}

/// Records the `e^A = e^B` gate; returns whether it holds.
pub(crate) fn require_exp_equal(
    report: &mut CheckReport,
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    tol: &Tolerances,
) -> bool {
    let gap = exp_gap(a, b);
    report.residual("exp_gap", gap).tolerance("exp_gap_gate", tol.gate);
    gap <= tol.gate
}
