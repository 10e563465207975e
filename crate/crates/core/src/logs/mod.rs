//! Matrix exponentials, principal and shifted-branch logarithms and the
//! decomposition `Y = N0 + 2πi·W` of a matrix with normal exponential.

mod exp;
mod kurepa;
mod log;

pub use exp::{exp_general, exp_normal};
pub use kurepa::{kurepa_decompose, KurepaDecomposition};
pub use log::{branch_log, principal_log, principal_scalar_log, BranchShift};
