use serde::{Deserialize, Serialize};

/// Numerical thresholds shared by every operation.
///
/// All fields are overridable from a suite configuration file; missing
/// fields fall back to the defaults below.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Relative Hermitian-ness threshold, `‖H − H*‖_F ≤ herm · ‖H‖_F`.
    pub herm: f64,
    /// Relative normality threshold, `‖X*X − XX*‖_F ≤ norm · ‖X‖_F²`.
    pub norm: f64,
    /// Eigensolver accuracy scale.
    pub eig: f64,
    /// Relative commutation threshold for simultaneous diagonalization.
    pub comm: f64,
    /// Threshold used by every theorem check.
    pub check: f64,
    /// Threshold for hypothesis gates (`e^X = e^Y`, vanishing projections).
    /// Kept apart from `check` so that tightening the conclusions does not
    /// silently turn every instance into a skipped one.
    pub gate: f64,
    /// Singular value cutoff (relative to the largest) for nullspaces.
    pub rank: f64,
    /// Width of the band around region edges.
    pub boundary: f64,
    /// Distance below which a point counts as lying exactly on an edge.
    pub on_edge: f64,
    /// Eigenvalue merge radius, scaled by `max(1, ‖X‖_F)`.
    pub cluster: f64,
    /// Invertibility threshold, scaled by `‖N‖_F`.
    pub inv: f64,
    /// Distance to the nearest integer accepted as integer spectrum.
    pub int: f64,
    /// Cap on cyclic Jacobi sweeps.
    pub max_sweeps: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            herm: 1e-10,
            norm: 1e-10,
            eig: 1e-12,
            comm: 1e-10,
            check: 1e-8,
            gate: 1e-8,
            rank: 1e-10,
            boundary: 1e-9,
            on_edge: 1e-11,
            cluster: 1e-8,
            inv: 1e-10,
            int: 1e-6,
            max_sweeps: 30,
        }
    }
}

impl Tolerances {
    pub fn with_check(mut self, check: f64) -> Self {
        self.check = check;
        self
    }
}
