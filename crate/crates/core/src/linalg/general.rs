//! Routines for the few non-normal matrices whose spectra are needed.

use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};

use nalgebra::DMatrix;

/// Iterations allowed per eigenvalue before giving up.
const QR_ITER_PER_EIGENVALUE: usize = 60;
/// Every this many stalled iterations an exceptional shift is used.
const EXCEPTIONAL_EVERY: usize = 10;

/// `(c, s)` with `|c|² + |s|² = 1` such that `[c̄ s̄; −s c]·[x; y] = [r; 0]`.
fn givens(x: C64, y: C64) -> (C64, C64) {
    let r = x.norm().hypot(y.norm());
    if r == 0.0 {
        (C64::new(1.0, 0.0), C64::new(0.0, 0.0))
    } else {
        (x / r, y / r)
    }
}

/// One explicit shifted QR step `H ← RQ + μI` on the active block `lo..=hi`
/// of an upper Hessenberg matrix. Only the block is touched; entries outside
/// it do not affect its eigenvalues.
fn qr_step(h: &mut DMatrix<C64>, lo: usize, hi: usize, mu: C64) {
    for i in lo..=hi {
        h[(i, i)] -= mu;
    }
    let mut rotations = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
        for j in k..=hi {
            let (u, v) = (h[(k, j)], h[(k + 1, j)]);
            h[(k, j)] = c.conj() * u + s.conj() * v;
            h[(k + 1, j)] = -s * u + c * v;
        }
        rotations.push((c, s));
    }
    for (k, &(c, s)) in (lo..hi).zip(&rotations) {
        for i in lo..=(k + 1) {
            let (u, v) = (h[(i, k)], h[(i, k + 1)]);
            h[(i, k)] = u * c + v * s;
            h[(i, k + 1)] = -u * s.conj() + v * c.conj();
        }
    }
    for i in lo..=hi {
        h[(i, i)] += mu;
    }
}

/// Eigenvalue of the trailing 2x2 block closer to its last diagonal entry.
fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mean = (a + d) * 0.5;
    let (m1, m2) = (mean + disc, mean - disc);
    if (m1 - d).norm() <= (m2 - d).norm() {
        m1
    } else {
        m2
    }
}

/// Eigenvalues of a general complex matrix: Hessenberg reduction followed by
/// single-shift QR with Wilkinson shifts.
///
/// A subdiagonal entry is deflated when it is negligible relative to its
/// diagonal neighbours or below `ε‖H‖_F` in absolute terms; the absolute
/// floor keeps roundoff-sized matrices (and zero diagonals) from stalling.
pub fn general_eigenvalues(m: &ComplexMatrix) -> Result<Vec<C64>> {
    let n = m.n();
    let mut h = nalgebra::linalg::Hessenberg::new(m.as_dmatrix().clone()).h();
    let floor = f64::EPSILON * h.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let budget = QR_ITER_PER_EIGENVALUE * n.max(1);
    let mut total = 0;
    let mut stalled = 0;
    let mut hi = n.saturating_sub(1);
    while hi > 0 {
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            if sub <= f64::EPSILON * (h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm()) || sub <= floor {
                h[(lo, lo - 1)] = C64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            stalled = 0;
            continue;
        }
        total += 1;
        stalled += 1;
        if total > budget {
            return Err(Error::NoConvergence { iterations: total });
        }
        let mu = if stalled % EXCEPTIONAL_EVERY == 0 {
            h[(hi, hi)] + C64::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };
        qr_step(&mut h, lo, hi, mu);
    }
    Ok((0..n).map(|i| h[(i, i)]).collect())
}

/// Singular values of `m`, descending.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    let mut s: Vec<f64> = m.as_dmatrix().singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// `σ_max / σ_min`, infinite for singular input.
pub fn condition_number(m: &ComplexMatrix) -> f64 {
    let s = singular_values(m);
    match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) if lo > 0.0 => hi / lo,
        _ => f64::INFINITY,
    }
}

/// Dimension of the nullspace of `m`, with cutoff `rel · max(1, σ_max)`.
pub fn nullity(m: &ComplexMatrix, rel: f64) -> usize {
    let s = singular_values(m);
    let cutoff = rel * s.first().copied().unwrap_or(0.0).max(1.0);
    s.iter().filter(|&&x| x <= cutoff).count()
}
