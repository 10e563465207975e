//! Instance generators, file formats, and the suite runner.

mod generators;
pub mod io;
pub mod rng;
mod suite;

pub use generators::{make_pair, random_unitary, Family, FamilyParams, Instance, InstanceSpec, Relation};
pub use io::{read_pair, write_json, PairFile};
pub use suite::{
    evaluate, run_suite, run_suite_with, targets, CheckName, Execution, ResultRow, SuiteConfig, SuiteReport, Summary,
};
