use std::f64::consts::PI;

use super::gates::{commute_residual, rel, require_exp_equal, require_normal, spectrum_in_strip};
use super::CheckReport;
use crate::error::Result;
use crate::linalg::{ComplexMatrix, C64};
use crate::spectral::{normal_eig, strip_projections, StripProjections};
use crate::tol::Tolerances;

/// `Σ_k 2kπi(P_k − Q_k) + (2k+1)πi(E_k − F_k)` over the window.
pub fn difference_rhs(sp: &StripProjections) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(sp.n());
    for k in sp.k_lo..=sp.k_hi {
        let strip = &sp.p[&k] - &sp.q[&k];
        let line = &sp.e[&k] - &sp.f[&k];
        out =
            out + strip.scale(C64::new(0.0, 2.0 * PI * k as f64)) + line.scale(C64::new(0.0, (2 * k + 1) as f64 * PI));
    }
    out
}

/// `X − Y` expressed through the strip and line projections of the two
/// normal logarithms, for spectra in `ℝ + i[(2k_lo+1)π, (2k_hi+1)π]`.
pub fn check_difference_formula(
    x: &ComplexMatrix,
    y: &ComplexMatrix,
    k_lo: i64,
    k_hi: i64,
    tol: &Tolerances,
) -> Result<CheckReport> {
    let mut report = CheckReport::new("difference_formula");
    if !require_normal(&mut report, &[("x", x), ("y", y)], tol) {
        return Ok(report.gate_failed("operands must be normal"));
    }
    if !require_exp_equal(&mut report, x, y, tol) {
        return Ok(report.gate_failed("e^X != e^Y"));
    }
    let sp = strip_projections(&normal_eig(x, tol)?, &normal_eig(y, tol)?, k_lo, k_hi, tol)?;
    let diff = x - y;
    let r = rel((&diff - &difference_rhs(&sp)).norm_fro(), x.norm_fro());
    let limit = tol.check * x.n() as f64;
    report.residual("difference", r).tolerance("difference", limit);
    report.note(&format!("window [{k_lo}, {k_hi}]"));
    Ok(report.finish(r <= limit))
}

/// The three special cases for logarithms confined to the closed strip:
/// `E_1 = 0` gives `XY = YX` and `X − Y = −2πiF_1`; `E_{−1} = 0` gives
/// `X − Y = 2πiF_{−1}`; both give `X = Y`. Every case whose hypothesis holds
/// is verified.
pub fn check_corollary_cases(x: &ComplexMatrix, y: &ComplexMatrix, tol: &Tolerances) -> Result<CheckReport> {
    let mut report = CheckReport::new("corollary_cases");
    if !require_normal(&mut report, &[("x", x), ("y", y)], tol) {
        return Ok(report.gate_failed("operands must be normal"));
    }
    let (dec_x, dec_y) = (normal_eig(x, tol)?, normal_eig(y, tol)?);
    if !spectrum_in_strip(&dec_x, tol) || !spectrum_in_strip(&dec_y, tol) {
        return Ok(report.gate_failed("spectrum leaves the closed strip"));
    }
    if !require_exp_equal(&mut report, x, y, tol) {
        return Ok(report.gate_failed("e^X != e^Y"));
    }
    let sp = strip_projections(&dec_x, &dec_y, -1, 0, tol)?;
    let (e_up, e_down) = (sp.e(0), sp.e(-1));
    let upper_empty = e_up.norm_fro() <= tol.gate;
    let lower_empty = e_down.norm_fro() <= tol.gate;
    if !upper_empty && !lower_empty {
        return Ok(report.gate_failed("neither E_1 nor E_-1 vanishes"));
    }

    let diff = x - y;
    let scale = x.norm_fro();
    let mut ok = true;
    let mut cases = Vec::new();
    let mut verify = |report: &mut CheckReport, name: &str, r: f64| {
        report.residual(name, r).tolerance(name, tol.check);
        ok &= r <= tol.check;
    };
    if upper_empty {
        cases.push("i");
        let target = sp.f(0).scale(C64::new(0.0, -2.0 * PI));
        verify(
            &mut report,
            "case_i_difference",
            rel((&diff - &target).norm_fro(), scale),
        );
        verify(&mut report, "case_i_commutator", commute_residual(x, y));
    }
    if lower_empty {
        cases.push("ii");
        let target = sp.f(-1).scale(C64::new(0.0, 2.0 * PI));
        verify(
            &mut report,
            "case_ii_difference",
            rel((&diff - &target).norm_fro(), scale),
        );
    }
    if upper_empty && lower_empty {
        cases.push("iii");
        verify(&mut report, "case_iii_equal", rel(diff.norm_fro(), scale));
    }
    report.note(&format!("cases verified: {}", cases.join(", ")));
    Ok(report.finish(ok))
}
