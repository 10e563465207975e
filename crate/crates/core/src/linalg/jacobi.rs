//! Cyclic Jacobi eigensolver for Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `h_pq` with a diagonal
//! unitary and then applies the classical real Jacobi rotation, so the whole
//! step is the unitary
//!
//! ```text
//! G = [ c            s          ]
//!     [ -s·e^{-iφ}   c·e^{-iφ}  ]     (rows/cols p, q),  h_pq = |h_pq| e^{iφ}
//! ```
//!
//! and `H ← G* H G`, `V ← V G`.

use nalgebra::DMatrix;

use super::matrix::{ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};
use crate::tol::Tolerances;

/// Eigen-decomposition `H = V diag(values) V*` with ascending eigenvalues.
#[derive(Debug, Clone)]
pub struct HermEig {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

fn off_diagonal_mass(a: &DMatrix<C64>) -> f64 {
    let n = a.nrows();
    let mut s = 0.0;
    for j in 0..n {
        for i in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Eigenvalues (ascending) and a unitary eigenvector matrix of a Hermitian `H`.
pub fn herm_eig(h: &ComplexMatrix, tol: &Tolerances) -> Result<HermEig> {
    let norm = h.norm_fro();
    let residual = h.hermitian_residual();
    if residual > tol.herm * norm {
        return Err(Error::NotHermitian {
            residual: residual / norm.max(f64::MIN_POSITIVE),
        });
    }
    let (values, vectors) = jacobi_raw(h.re_part().into_dmatrix(), norm, tol.max_sweeps)?;
    Ok(HermEig {
        values,
        vectors: ComplexMatrix::from_dmatrix_unchecked(vectors),
    })
}

/// Jacobi iteration on an already-Hermitian working matrix.
pub(crate) fn jacobi_raw(mut a: DMatrix<C64>, norm: f64, max_sweeps: usize) -> Result<(Vec<f64>, DMatrix<C64>)> {
    let n = a.nrows();
    let mut v = DMatrix::<C64>::identity(n, n);
    let target = 1e-14 * norm;

    let mut sweeps = 0;
    while off_diagonal_mass(&a) > target {
        if sweeps == max_sweeps {
            return Err(Error::NoConvergence { iterations: sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = DMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok((values, vectors))
}

fn rotate(a: &mut DMatrix<C64>, v: &mut DMatrix<C64>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let b = apq.norm();
    if b == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Skip pivots that are already negligible against both diagonal entries.
    if b < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = ZERO;
        a[(q, p)] = ZERO;
        return;
    }
    let phase = apq / b;
    let theta = (aqq - app) / (2.0 * b);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let g_pp = C64::new(c, 0.0);
    let g_pq = C64::new(s, 0.0);
    let g_qp = -phase.conj() * s;
    let g_qq = phase.conj() * c;

    let n = a.nrows();
    // columns: A ← A G
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
    // rows: A ← G* A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
}
