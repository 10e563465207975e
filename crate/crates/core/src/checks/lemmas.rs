use std::f64::consts::PI;

use super::gates::{on_strip_boundary, rel, require_exp_equal, require_normal, spectrum_in_strip};
use super::CheckReport;
use crate::error::Result;
use crate::linalg::{ComplexMatrix, C64};
use crate::logs::exp_general;
use crate::spectral::{normal_eig, BoundaryBand, Edge, Membership, Region, SpectralDecomposition};
use crate::tol::Tolerances;

/// Equal exponentials of normal operands force equal real parts.
pub fn check_real_part(x: &ComplexMatrix, y: &ComplexMatrix, tol: &Tolerances) -> Result<CheckReport> {
    let mut report = CheckReport::new("real_part");
    if !require_normal(&mut report, &[("x", x), ("y", y)], tol) {
        return Ok(report.gate_failed("operands must be normal"));
    }
    if !require_exp_equal(&mut report, x, y, tol) {
        return Ok(report.gate_failed("e^X != e^Y"));
    }
    let r = rel((&x.re_part() - &y.re_part()).norm_fro(), x.norm_fro());
    report.residual("real_part", r).tolerance("real_part", tol.check);
    Ok(report.finish(r <= tol.check))
}

/// Regions inside the open strip used in place of "all Borel subsets": a
/// closed disc around every interior eigenvalue of either operand, the open
/// strip itself, and half-strips cut midway between consecutive distinct
/// real parts and imaginary parts of those eigenvalues.
pub fn interior_region_family(
    dec_x: &SpectralDecomposition,
    dec_y: &SpectralDecomposition,
    tol: &Tolerances,
) -> Vec<Region> {
    let band = BoundaryBand::from(tol);
    let radius = dec_x.cluster_radius(tol).max(dec_y.cluster_radius(tol));
    let interior = Region::strip_interior();
    let mut points: Vec<C64> = Vec::new();
    for z in dec_x.eigenvalues().chain(dec_y.eigenvalues()) {
        if interior.membership(z, band) == Membership::Inside && points.iter().all(|p| (p - z).norm() > radius) {
            points.push(z);
        }
    }

    let mut family = vec![interior];
    family.extend(points.iter().map(|&p| Region::point(p, radius)));

    let cuts = |mut coords: Vec<f64>| -> Vec<f64> {
        coords.sort_by(f64::total_cmp);
        coords
            .windows(2)
            .filter(|w| w[1] - w[0] > 4.0 * radius.max(tol.boundary))
            .map(|w| 0.5 * (w[0] + w[1]))
            .collect()
    };
    for m in cuts(points.iter().map(|z| z.re).collect()) {
        family.push(Region::Rect {
            re_lo: Edge::unbounded_below(),
            re_hi: Edge::closed(m),
            im_lo: Edge::open(-PI),
            im_hi: Edge::open(PI),
        });
    }
    for m in cuts(points.iter().map(|z| z.im).collect()) {
        family.push(Region::horizontal_band(Edge::open(-PI), Edge::closed(m)));
    }
    family
}

/// Agreement of the spectral measures on the open strip, equality of the
/// boundary-line projection sums, and equal real parts, for normal
/// logarithms in the closed strip with equal exponentials.
///
/// The converse direction is exercised by rebuilding `e^X` from the data of
/// `Y` alone: `−e^{Re μ}` on boundary clusters of `Y` and `e^μ` on interior
/// ones.
pub fn check_spectral_agreement(x: &ComplexMatrix, y: &ComplexMatrix, tol: &Tolerances) -> Result<CheckReport> {
    let mut report = CheckReport::new("spectral_agreement");
    if !require_normal(&mut report, &[("x", x), ("y", y)], tol) {
        return Ok(report.gate_failed("operands must be normal"));
    }
    let dec_x = normal_eig(x, tol)?;
    let dec_y = normal_eig(y, tol)?;
    if !spectrum_in_strip(&dec_x, tol) || !spectrum_in_strip(&dec_y, tol) {
        return Ok(report.gate_failed("spectrum leaves the closed strip"));
    }
    if !require_exp_equal(&mut report, x, y, tol) {
        return Ok(report.gate_failed("e^X != e^Y"));
    }

    let mut interior: f64 = 0.0;
    let family = interior_region_family(&dec_x, &dec_y, tol);
    for omega in &family {
        let ex = dec_x.spectral_measure(omega, tol)?;
        let ey = dec_y.spectral_measure(omega, tol)?;
        interior = interior.max((&ex - &ey).norm_fro());
    }

    let boundary = Region::strip_boundary();
    let bx = dec_x.spectral_measure(&boundary, tol)?;
    let by = dec_y.spectral_measure(&boundary, tol)?;
    let boundary_residual = (&bx - &by).norm_fro();

    let re = rel((&x.re_part() - &y.re_part()).norm_fro(), x.norm_fro());

    let ex = exp_general(x);
    let rebuilt = dec_y.borel_calculus(|mu| {
        if on_strip_boundary(mu, tol) {
            C64::new(-mu.re.exp(), 0.0)
        } else {
            mu.exp()
        }
    });
    let converse = (&ex - &rebuilt).norm_fro() / ex.norm_fro();

    let limit = tol.check * x.n() as f64;
    report
        .residual("interior", interior)
        .residual("boundary_sum", boundary_residual)
        .residual("real_part", re)
        .residual("converse_exp", converse)
        .tolerance("interior", limit)
        .tolerance("boundary_sum", limit)
        .tolerance("real_part", limit)
        .tolerance("converse_exp", limit);
    report.note(&format!("{} regions in the generated family", family.len()));
    let ok = [interior, boundary_residual, re, converse].iter().all(|&r| r <= limit);
    Ok(report.finish(ok))
}
