use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};
use crate::spectral::{normal_eig, SpectralDecomposition};
use crate::tol::Tolerances;

/// Integer branch offsets (units of `2πi`) per cluster index of a
/// decomposition. Clusters without an entry use the principal branch.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BranchShift {
    pub shifts: BTreeMap<usize, i64>,
}

impl BranchShift {
    pub fn principal() -> Self {
        Self::default()
    }

    pub fn uniform(clusters: usize, k: i64) -> Self {
        Self {
            shifts: (0..clusters).map(|i| (i, k)).collect(),
        }
    }

    pub fn with(mut self, cluster: usize, k: i64) -> Self {
        self.shifts.insert(cluster, k);
        self
    }

    pub fn get(&self, cluster: usize) -> i64 {
        self.shifts.get(&cluster).copied().unwrap_or(0)
    }
}

/// Principal scalar logarithm with `Im ∈ (−π, π]`.
///
/// Points within `band` (relative to `|z|`) of the negative real axis are
/// treated as lying on it and mapped to `log|z| + iπ`.
pub fn principal_scalar_log(z: C64, band: f64) -> C64 {
    if z.re < 0.0 && z.im.abs() <= band * z.norm() {
        C64::new(z.norm().ln(), PI)
    } else {
        z.ln()
    }
}

fn ensure_invertible(dec: &SpectralDecomposition, tol: &Tolerances) -> Result<()> {
    let min_modulus = dec.eigenvalues().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
    if min_modulus < tol.inv * dec.norm {
        return Err(Error::Singular { min_modulus });
    }
    Ok(())
}

/// `Σ (Log λ_j + 2πi·k_j) P_j` for a decomposition of a normal invertible
/// matrix.
pub fn branch_log(dec: &SpectralDecomposition, shift: &BranchShift, tol: &Tolerances) -> Result<ComplexMatrix> {
    if let Some(&index) = shift.shifts.keys().find(|&&i| i >= dec.clusters.len()) {
        return Err(Error::InvalidShift {
            index,
            clusters: dec.clusters.len(),
        });
    }
    ensure_invertible(dec, tol)?;
    let mut out = ComplexMatrix::zeros(dec.n);
    for (i, c) in dec.clusters.iter().enumerate() {
        let value = principal_scalar_log(c.lambda, tol.boundary) + C64::new(0.0, 2.0 * PI * shift.get(i) as f64);
        out = out + c.proj.scale(value);
    }
    Ok(out)
}

/// Principal logarithm of a normal invertible matrix: the normal logarithm
/// whose eigenvalues all satisfy `−π < Im ≤ π`.
pub fn principal_log(n: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    let dec = normal_eig(n, tol)?;
    branch_log(&dec, &BranchShift::principal(), tol)
}
