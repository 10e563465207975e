//! One verification per result. Every check gates on its hypotheses first
//! and records a failed gate as `hypothesis_met = false` rather than as a
//! failure of the conclusion.

mod difference;
mod gates;
mod lemmas;
mod modulus;
mod report;
mod unbounded;

pub use difference::{check_corollary_cases, check_difference_formula, difference_rhs};
pub use lemmas::{check_real_part, check_spectral_agreement, interior_region_family};
pub use modulus::{check_kurepa, check_modulus_commute, check_modulus_equal, check_square_commute};
pub use report::CheckReport;
pub use unbounded::{
    check_congruence_free, check_double_commutant, check_one_boundary_eigenvalue, check_y_in_bicommutant_of_exp,
};
