pub mod checks;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod logs;
pub mod spectral;
pub mod tol;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, C64};
pub use tol::Tolerances;
