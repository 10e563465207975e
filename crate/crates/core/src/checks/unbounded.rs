//! Checks for a self-adjoint `X` and a logarithm `Y` of the unitary
//! `e^{iX}`.

use std::f64::consts::PI;

use super::gates::{
    commute_residual, distance_to_odd_pi, is_hermitian, rel, require_exp_equal, require_normal, spectrum_in_strip,
};
use super::CheckReport;
use crate::error::Result;
use crate::linalg::{commutant_basis, in_double_commutant, in_double_commutant_with, ComplexMatrix, C64};
use crate::logs::exp_general;
use crate::spectral::{fold_unbounded, normal_eig, SpectralDecomposition};
use crate::tol::Tolerances;

const FINITE_NOTE: &str = "finite-dimensional instance: X is bounded, unboundedness is not exercised";

fn i_times(x: &ComplexMatrix) -> ComplexMatrix {
    x.scale(C64::new(0.0, 1.0))
}

/// Smallest `|λ_i − λ_j − 2kπ|` over distinct eigenvalues and nonzero `k`
/// reachable within the spectrum's diameter. Infinite for fewer than two
/// clusters.
fn congruence_gap(dec: &SpectralDecomposition) -> f64 {
    let values: Vec<f64> = dec.eigenvalues().map(|z| z.re).collect();
    let mut gap = f64::INFINITY;
    for (i, &a) in values.iter().enumerate() {
        for &b in &values[i + 1..] {
            let d = (a - b).abs();
            let k = (d / (2.0 * PI)).round().max(1.0);
            gap = gap.min((d - 2.0 * k * PI).abs());
        }
    }
    gap
}

/// Eigenvalue clusters of `X` within the cluster radius of an odd multiple
/// of `π`.
fn odd_pi_clusters(dec: &SpectralDecomposition, tol: &Tolerances) -> usize {
    let radius = dec.cluster_radius(tol);
    dec.eigenvalues().filter(|z| distance_to_odd_pi(z.re) <= radius).count()
}

fn hermitian_decomposition(
    report: &mut CheckReport,
    x: &ComplexMatrix,
    tol: &Tolerances,
) -> Result<Option<SpectralDecomposition>> {
    if !is_hermitian(x, tol) {
        report.residual("hermiticity", x.hermitian_residual() / x.norm_fro());
        report.note("x is not self-adjoint");
        return Ok(None);
    }
    Ok(Some(normal_eig(&x.re_part(), tol)?))
}

/// No eigenvalue gap of the self-adjoint operand is a nonzero multiple of
/// `2π` (within the cluster radius).
pub fn check_congruence_free(dec: &SpectralDecomposition, tol: &Tolerances) -> CheckReport {
    let mut report = CheckReport::new("congruence_free");
    let scale = dec.norm.max(1.0);
    let imag = dec.eigenvalues().map(|z| z.im.abs()).fold(0.0, f64::max);
    if imag > tol.herm * scale {
        report.residual("imaginary_spectrum", imag / scale);
        return report.gate_failed("decomposition is not of a self-adjoint operator");
    }
    let gap = congruence_gap(dec);
    let radius = dec.cluster_radius(tol);
    if gap.is_finite() {
        report.residual("congruence_gap", gap);
    }
    report.tolerance("cluster_radius", radius);
    report.note("passes when congruence_gap exceeds cluster_radius");
    report.finish(gap > radius)
}

/// Eigenprojections of a congruence-free self-adjoint `X` lie in `{Y}″` for
/// every `Y` with `e^Y = e^{iX}`; in particular `XY = YX`.
pub fn check_double_commutant(x: &ComplexMatrix, y: &ComplexMatrix, tol: &Tolerances) -> Result<CheckReport> {
    let mut report = CheckReport::new("double_commutant");
    report.note(FINITE_NOTE);
    let Some(dec) = hermitian_decomposition(&mut report, x, tol)? else {
        return Ok(report.gate_failed("x must be self-adjoint"));
    };
    if !require_exp_equal(&mut report, &i_times(x), y, tol) {
        return Ok(report.gate_failed("e^{iX} != e^Y"));
    }
    let cf = check_congruence_free(&dec, tol);
    if !cf.passed {
        if let Some(&g) = cf.residuals.get("congruence_gap") {
            report.residual("congruence_gap", g);
        }
        return Ok(report.gate_failed("x is not 2π-congruence-free"));
    }

    let commutant = commutant_basis(y, tol)?;
    let projection = dec
        .clusters
        .iter()
        .map(|c| in_double_commutant_with(&c.proj, &commutant, tol).1)
        .fold(0.0, f64::max);
    let comm = commute_residual(x, y);
    report
        .residual("projection_bicommutant", projection)
        .residual("commutator", comm)
        .tolerance("projection_bicommutant", tol.check)
        .tolerance("commutator", tol.check);
    report.note(&format!(
        "{} eigenprojections against a commutant of dimension {}",
        dec.clusters.len(),
        commutant.dim
    ));
    Ok(report.finish(projection <= tol.check && comm <= tol.check))
}

/// `XY = YX` when at most one eigenvalue of the self-adjoint `X` is an odd
/// multiple of `π` and `Y` is a normal logarithm of `e^{iX}` in the strip.
pub fn check_one_boundary_eigenvalue(x: &ComplexMatrix, y: &ComplexMatrix, tol: &Tolerances) -> Result<CheckReport> {
    let mut report = CheckReport::new("one_boundary_eigenvalue");
    report.note(FINITE_NOTE);
    let Some(dec) = hermitian_decomposition(&mut report, x, tol)? else {
        return Ok(report.gate_failed("x must be self-adjoint"));
    };
    if !require_normal(&mut report, &[("y", y)], tol) || !spectrum_in_strip(&normal_eig(y, tol)?, tol) {
        return Ok(report.gate_failed("y must be normal with spectrum in the strip"));
    }
    if !require_exp_equal(&mut report, &i_times(x), y, tol) {
        return Ok(report.gate_failed("e^{iX} != e^Y"));
    }
    let count = odd_pi_clusters(&dec, tol);
    report.note(&format!("{count} odd multiple(s) of π in the spectrum of x"));
    if count > 1 {
        return Ok(report.gate_failed("more than one odd multiple of π in the spectrum"));
    }
    let r = commute_residual(x, y);
    report.residual("commutator", r).tolerance("commutator", tol.check);
    Ok(report.finish(r <= tol.check))
}

/// With no odd multiple of `π` in the spectrum of `X`, `Y ∈ {e^{iX}}″` and
/// `Y = i·fold(X)`.
pub fn check_y_in_bicommutant_of_exp(x: &ComplexMatrix, y: &ComplexMatrix, tol: &Tolerances) -> Result<CheckReport> {
    let mut report = CheckReport::new("y_in_bicommutant_of_exp");
    report.note(FINITE_NOTE);
    let Some(dec) = hermitian_decomposition(&mut report, x, tol)? else {
        return Ok(report.gate_failed("x must be self-adjoint"));
    };
    if !require_normal(&mut report, &[("y", y)], tol) || !spectrum_in_strip(&normal_eig(y, tol)?, tol) {
        return Ok(report.gate_failed("y must be normal with spectrum in the strip"));
    }
    let ix = i_times(x);
    if !require_exp_equal(&mut report, &ix, y, tol) {
        return Ok(report.gate_failed("e^{iX} != e^Y"));
    }
    let count = odd_pi_clusters(&dec, tol);
    if count > 0 {
        return Ok(report.gate_failed(&format!("{count} odd multiple(s) of π in the spectrum of x")));
    }

    let (_, bicommutant) = in_double_commutant(y, &exp_general(&ix), tol)?;
    let folded = dec.borel_calculus(|z| C64::new(0.0, fold_unbounded(z.re)));
    let fold = rel((&folded - y).norm_fro(), y.norm_fro());
    report
        .residual("bicommutant", bicommutant)
        .residual("fold_identity", fold)
        .tolerance("bicommutant", tol.check)
        .tolerance("fold_identity", tol.check);
    Ok(report.finish(bicommutant <= tol.check && fold <= tol.check))
}
