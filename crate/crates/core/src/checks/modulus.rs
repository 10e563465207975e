use super::gates::{commute_residual, on_strip_boundary, rel, require_exp_equal, require_normal, spectrum_in_strip};
use super::CheckReport;
use crate::error::{Error, Result};
use crate::linalg::{modulus, ComplexMatrix};
use crate::logs::kurepa_decompose;
use crate::spectral::normal_eig;
use crate::tol::Tolerances;

/// Gates shared by the modulus checks: `X` normal with spectrum in the
/// closed strip, and `e^X = e^Y`.
fn strip_gates(report: &mut CheckReport, x: &ComplexMatrix, y: &ComplexMatrix, tol: &Tolerances) -> Result<bool> {
    if !require_normal(report, &[("x", x)], tol) {
        return Ok(false);
    }
    if !spectrum_in_strip(&normal_eig(x, tol)?, tol) {
        report.note("spectrum of x leaves the closed strip");
        return Ok(false);
    }
    Ok(require_exp_equal(report, x, y, tol))
}

/// `|X| = |Y|` for normal logarithms in the closed strip with equal
/// exponentials.
pub fn check_modulus_equal(x: &ComplexMatrix, y: &ComplexMatrix, tol: &Tolerances) -> Result<CheckReport> {
    let mut report = CheckReport::new("modulus_equal");
    if !require_normal(&mut report, &[("y", y)], tol) || !strip_gates(&mut report, x, y, tol)? {
        return Ok(report.gate_failed("normal operands in the strip with e^X = e^Y"));
    }
    if !spectrum_in_strip(&normal_eig(y, tol)?, tol) {
        return Ok(report.gate_failed("spectrum of y leaves the closed strip"));
    }
    let r = rel((&modulus(x, tol)? - &modulus(y, tol)?).norm_fro(), x.norm_fro());
    report.residual("modulus", r).tolerance("modulus", tol.check);
    Ok(report.finish(r <= tol.check))
}

/// `|X|` commutes with every `Y` (normal or not) sharing the exponential of
/// a normal `X` in the closed strip.
pub fn check_modulus_commute(x: &ComplexMatrix, y: &ComplexMatrix, tol: &Tolerances) -> Result<CheckReport> {
    let mut report = CheckReport::new("modulus_commute");
    if !strip_gates(&mut report, x, y, tol)? {
        return Ok(report.gate_failed("normal x in the strip with e^X = e^Y"));
    }
    let r = commute_residual(&modulus(x, tol)?, y);
    report.residual("commutator", r).tolerance("commutator", tol.check);
    Ok(report.finish(r <= tol.check))
}

/// `X²Y = YX²` when no boundary eigenvalue of `X` other than `±iπ` has its
/// conjugate in the spectrum.
pub fn check_square_commute(x: &ComplexMatrix, y: &ComplexMatrix, tol: &Tolerances) -> Result<CheckReport> {
    let mut report = CheckReport::new("square_commute");
    if !strip_gates(&mut report, x, y, tol)? {
        return Ok(report.gate_failed("normal x in the strip with e^X = e^Y"));
    }
    let dec = normal_eig(x, tol)?;
    let radius = dec.cluster_radius(tol);
    let planted = dec.clusters.iter().find(|c| {
        let z = c.lambda;
        on_strip_boundary(z, tol)
            && z.re.abs() > tol.boundary
            && dec.eigenvalues().any(|w| (w - z.conj()).norm() <= radius)
    });
    if let Some(c) = planted {
        let z = c.lambda;
        return Ok(report.gate_failed(&format!(
            "boundary eigenvalue {:.6}{:+.6}i has its conjugate in the spectrum",
            z.re, z.im
        )));
    }
    let x2 = x * x;
    let scale = x.norm_fro().powi(2) * y.norm_fro();
    let r = if scale == 0.0 {
        0.0
    } else {
        x2.commutator(y).norm_fro() / scale
    };
    report.residual("commutator", r).tolerance("commutator", tol.check);
    Ok(report.finish(r <= tol.check))
}

/// `Y = N0 + 2πiW` with `W` commuting with `N0` and having integer spectrum,
/// for any `Y` whose exponential is normal.
pub fn check_kurepa(y: &ComplexMatrix, tol: &Tolerances) -> Result<CheckReport> {
    let mut report = CheckReport::new("kurepa");
    let k = match kurepa_decompose(y, tol) {
        Ok(k) => k,
        Err(Error::ExpNotNormal { residual }) => {
            report.residual("exp_normality", residual);
            return Ok(report.gate_failed("e^Y is not normal"));
        }
        Err(e) => return Err(e),
    };
    report
        .residual("reconstruction", k.reconstruction_residual)
        .residual("commutator", k.commute_residual)
        .residual("integer_spectrum", k.integer_spectrum_residual)
        .tolerance("reconstruction", tol.check)
        .tolerance("commutator", tol.check)
        .tolerance("integer_spectrum", tol.int);
    let spectrum: Vec<String> = k.integer_spectrum.iter().map(i64::to_string).collect();
    report.note(&format!("spectrum of W: [{}]", spectrum.join(", ")));
    if !k.diagonalizable {
        report.note("W is not diagonalizable");
    }
    let ok = k.reconstruction_residual <= tol.check
        && k.commute_residual <= tol.check
        && k.integer_spectrum_residual <= tol.int;
    Ok(report.finish(ok))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::C64;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn diag(d: &[C64]) -> ComplexMatrix {
        ComplexMatrix::from_diag(d)
    }

    fn rotation(t: f64) -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[vec![t.cos(), -t.sin()], vec![t.sin(), t.cos()]]).unwrap()
    }

    fn similar(t: &ComplexMatrix, d: &ComplexMatrix) -> ComplexMatrix {
        &(t * d) * &t.inverse().unwrap()
    }

    #[test]
    fn modulus_equal_examples() {
        let t = Tolerances::default();
        let r = check_modulus_equal(&diag(&[c(0.0, PI)]), &diag(&[c(0.0, -PI)]), &t).unwrap();
        assert!(r.passed);

        let d = diag(&[c(0.0, PI), c(0.0, -PI)]);
        let (u, v) = (rotation(0.4), rotation(1.3));
        let r = check_modulus_equal(&similar(&u, &d), &similar(&v, &d), &t).unwrap();
        assert!(r.passed, "{r:?}");

        let r = check_modulus_equal(
            &diag(&[c(1.0, PI), c(-2.0, 0.0)]),
            &diag(&[c(1.0, -PI), c(-2.0, 0.0)]),
            &t,
        )
        .unwrap();
        assert!(r.passed && r.residuals["modulus"] < 1e-14);
    }

    #[test]
    fn modulus_commute_examples() {
        let t = Tolerances::default();
        let x = diag(&[c(0.0, PI), c(0.0, -PI)]);
        let tt = ComplexMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        let r = check_modulus_commute(&x, &similar(&tt, &x), &t).unwrap();
        assert!(r.passed, "{r:?}");

        let x = diag(&[c(0.0, PI), c(0.0, -PI), c(0.0, 0.0)]);
        let s =
            ComplexMatrix::from_real_rows(&[vec![2.0, 1.0, 0.0], vec![0.5, 1.0, 0.0], vec![0.0, 0.0, 1.0]]).unwrap();
        let r = check_modulus_commute(&x, &similar(&s, &x), &t).unwrap();
        assert!(r.passed, "{r:?}");

        let x = diag(&[c(0.3, 1.0), c(-1.0, 2.0)]);
        let r = check_modulus_commute(&x, &x, &t).unwrap();
        assert!(r.passed);
    }

    #[test]
    fn square_commute_examples() {
        let t = Tolerances::default();
        let r = check_square_commute(&diag(&[c(1.0, PI), c(2.0, PI)]), &diag(&[c(1.0, -PI), c(2.0, PI)]), &t).unwrap();
        assert!(r.passed, "{r:?}");

        let x = diag(&[c(1.0, PI), c(1.0, -PI)]);
        let y = ComplexMatrix::identity(2).scale(c(1.0, PI));
        let r = check_square_commute(&x, &y, &t).unwrap();
        assert!(!r.hypothesis_met && !r.passed);

        let r = check_square_commute(&diag(&[c(0.0, PI)]), &diag(&[c(0.0, -PI)]), &t).unwrap();
        assert!(r.passed);
    }

    #[test]
    fn kurepa_oracle() {
        let t = Tolerances::default();
        let y =
            ComplexMatrix::from_rows(&[vec![c(0.0, PI), c(0.0, -2.0 * PI)], vec![c(0.0, 0.0), c(0.0, -PI)]]).unwrap();
        let r = check_kurepa(&y, &t).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.notes.contains("[-1, 0]"));

        let nil = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        let r = check_kurepa(&nil, &t).unwrap();
        assert!(!r.hypothesis_met);
    }

    #[test]
    fn gates_reject_mismatched_exponentials() {
        let t = Tolerances::default();
        let x = diag(&[c(0.0, 1.0)]);
        let y = diag(&[c(0.0, 2.0)]);
        for r in [
            check_modulus_equal(&x, &y, &t).unwrap(),
            check_modulus_commute(&x, &y, &t).unwrap(),
            check_square_commute(&x, &y, &t).unwrap(),
        ] {
            assert!(!r.hypothesis_met && !r.passed);
        }
    }
}
