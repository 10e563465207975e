use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (relative residual {residual:.3e})")]
    NotHermitian { residual: f64 },
    #[error("iteration did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("matrices do not commute (relative residual {residual:.3e})")]
    NotCommuting { residual: f64 },
    #[error("matrix is not normal (relative residual {residual:.3e})")]
    NotNormal { residual: f64 },
    #[error("eigenvalue {point} lies within the tolerance band of an excluded region edge")]
    AmbiguousBoundary { point: Complex64 },
    #[error("eigenvalue {point} lies outside the strip window [{k_lo}, {k_hi}]")]
    SpectrumOutOfRange { point: Complex64, k_lo: i64, k_hi: i64 },
    #[error("{t} is outside the fold window for k in [{k_lo}, {k_hi}]")]
    OutOfFoldRange { t: f64, k_lo: i64, k_hi: i64 },
    #[error("matrix is singular (smallest eigenvalue modulus {min_modulus:.3e})")]
    Singular { min_modulus: f64 },
    #[error("exponential of the input is not normal (relative residual {residual:.3e})")]
    ExpNotNormal { residual: f64 },
    #[error("branch shift refers to cluster {index}, but only {clusters} clusters exist")]
    InvalidShift { index: usize, clusters: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("instance construction failed: {0}")]
    ConstructionFailed(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
