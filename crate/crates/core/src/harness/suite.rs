use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::generators::{make_pair, Family, Instance, InstanceSpec};
use crate::checks::{self, CheckReport};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::spectral::normal_eig;
use crate::tol::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckName {
    RealPart,
    SpectralAgreement,
    ModulusEqual,
    ModulusCommute,
    SquareCommute,
    DifferenceFormula,
    CorollaryCases,
    Kurepa,
    CongruenceFree,
    DoubleCommutant,
    OneBoundaryEigenvalue,
    YInBicommutantOfExp,
}

impl CheckName {
    pub const ALL: [CheckName; 12] = [
        CheckName::RealPart,
        CheckName::SpectralAgreement,
        CheckName::ModulusEqual,
        CheckName::ModulusCommute,
        CheckName::SquareCommute,
        CheckName::DifferenceFormula,
        CheckName::CorollaryCases,
        CheckName::Kurepa,
        CheckName::CongruenceFree,
        CheckName::DoubleCommutant,
        CheckName::OneBoundaryEigenvalue,
        CheckName::YInBicommutantOfExp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckName::RealPart => "real_part",
            CheckName::SpectralAgreement => "spectral_agreement",
            CheckName::ModulusEqual => "modulus_equal",
            CheckName::ModulusCommute => "modulus_commute",
            CheckName::SquareCommute => "square_commute",
            CheckName::DifferenceFormula => "difference_formula",
            CheckName::CorollaryCases => "corollary_cases",
            CheckName::Kurepa => "kurepa",
            CheckName::CongruenceFree => "congruence_free",
            CheckName::DoubleCommutant => "double_commutant",
            CheckName::OneBoundaryEigenvalue => "one_boundary_eigenvalue",
            CheckName::YInBicommutantOfExp => "y_in_bicommutant_of_exp",
        }
    }

    /// Runs the check on a pair. `k_lo`, `k_hi` only matter for the
    /// difference formula.
    pub fn run(
        self,
        x: &ComplexMatrix,
        y: &ComplexMatrix,
        k_lo: i64,
        k_hi: i64,
        tol: &Tolerances,
    ) -> Result<CheckReport> {
        match self {
            CheckName::RealPart => checks::check_real_part(x, y, tol),
            CheckName::SpectralAgreement => checks::check_spectral_agreement(x, y, tol),
            CheckName::ModulusEqual => checks::check_modulus_equal(x, y, tol),
            CheckName::ModulusCommute => checks::check_modulus_commute(x, y, tol),
            CheckName::SquareCommute => checks::check_square_commute(x, y, tol),
            CheckName::DifferenceFormula => checks::check_difference_formula(x, y, k_lo, k_hi, tol),
            CheckName::CorollaryCases => checks::check_corollary_cases(x, y, tol),
            CheckName::Kurepa => checks::check_kurepa(y, tol),
            CheckName::CongruenceFree => Ok(checks::check_congruence_free(&normal_eig(x, tol)?, tol)),
            CheckName::DoubleCommutant => checks::check_double_commutant(x, y, tol),
            CheckName::OneBoundaryEigenvalue => checks::check_one_boundary_eigenvalue(x, y, tol),
            CheckName::YInBicommutantOfExp => checks::check_y_in_bicommutant_of_exp(x, y, tol),
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.replace('-', "_");
        CheckName::ALL
            .into_iter()
            .find(|c| c.name() == key)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown check {s:?}")))
    }
}

/// Checks an instance of `family` is dispatched to. Negative controls go
/// only to the checks whose hypothesis they were built to violate.
pub fn targets(family: Family, negative: bool) -> &'static [CheckName] {
    use CheckName::*;
    match (family, negative) {
        (Family::InteriorPair | Family::BoundaryFlipPair, false) => &[
            RealPart,
            SpectralAgreement,
            ModulusEqual,
            ModulusCommute,
            SquareCommute,
            DifferenceFormula,
            CorollaryCases,
            Kurepa,
        ],
        (Family::BoundaryFlipPair, true) => &[SquareCommute],
        (Family::DistinctProjectionPair, _) => &[
            RealPart,
            SpectralAgreement,
            ModulusEqual,
            ModulusCommute,
            SquareCommute,
            DifferenceFormula,
            Kurepa,
        ],
        (Family::ShiftedBranchPair, _) => &[DifferenceFormula, Kurepa],
        (Family::NonNormalLogPair, _) => &[ModulusCommute, Kurepa],
        (Family::SelfAdjointCongruenceFree, false) => &[
            CongruenceFree,
            DoubleCommutant,
            OneBoundaryEigenvalue,
            YInBicommutantOfExp,
        ],
        (Family::SelfAdjointCongruenceFree, true) => &[DoubleCommutant],
        (Family::OddPiEigenvalue, false) => &[OneBoundaryEigenvalue],
        (Family::OddPiEigenvalue, true) => &[OneBoundaryEigenvalue, YInBicommutantOfExp],
        (Family::InteriorPair, true) => &[],
    }
}

fn default_suite() -> String {
    "default".into()
}

fn default_families() -> Vec<Family> {
    Family::ALL.to_vec()
}

fn default_sizes() -> Vec<usize> {
    vec![2, 4, 8, 16]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    #[serde(default = "default_suite")]
    pub suite: String,
    #[serde(default = "default_families")]
    pub families: Vec<Family>,
    #[serde(default = "default_sizes")]
    pub sizes: Vec<usize>,
    /// Seeds per (family, size): `seed_base .. seed_base + seeds`.
    #[serde(default = "SuiteConfig::default_seeds")]
    pub seeds: u64,
    #[serde(default)]
    pub seed_base: u64,
    /// Also run each family's planted hypothesis violations (n ≥ 2).
    #[serde(default = "SuiteConfig::default_negative")]
    pub negative_controls: bool,
    #[serde(default)]
    pub tolerances: Tolerances,
    /// Worker threads; not part of the report so that it stays identical
    /// across thread counts.
    #[serde(default, skip_serializing)]
    pub jobs: Option<usize>,
}

impl SuiteConfig {
    fn default_seeds() -> u64 {
        25
    }

    fn default_negative() -> bool {
        true
    }

    pub fn instances(&self) -> Result<Vec<InstanceSpec>> {
        if let Some(&n) = self.sizes.iter().find(|&&n| n == 0) {
            return Err(Error::InvalidConfig(format!("invalid size {n}")));
        }
        let mut out = Vec::new();
        for &family in &self.families {
            for &n in &self.sizes {
                for seed in self.seed_base..self.seed_base + self.seeds {
                    out.push(InstanceSpec::new(family, n, seed));
                    if self.negative_controls && family.has_negative_control() && n >= 2 {
                        out.push(InstanceSpec::new(family, n, seed).negative());
                    }
                }
            }
        }
        Ok(out)
    }
}

impl Default for SuiteConfig {
    fn default() -> Self {
        serde_json::from_str("{}").expect("defaults deserialize")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub check: String,
    pub family: String,
    pub n: usize,
    pub seed: u64,
    pub hypothesis_met: bool,
    pub passed: bool,
    pub residuals: BTreeMap<String, f64>,
    pub tolerances: BTreeMap<String, f64>,
    pub notes: String,
}

impl ResultRow {
    pub fn from_report(report: CheckReport, family: &str, n: usize, seed: u64) -> Self {
        Self {
            check: report.check_name,
            family: family.into(),
            n,
            seed,
            hypothesis_met: report.hypothesis_met,
            passed: report.passed,
            residuals: report.residuals,
            tolerances: report.tolerances,
            notes: report.notes,
        }
    }

    fn error(check: &str, family: &str, n: usize, seed: u64, err: &Error) -> Self {
        Self {
            check: check.into(),
            family: family.into(),
            n,
            seed,
            hypothesis_met: true,
            passed: false,
            residuals: BTreeMap::new(),
            tolerances: BTreeMap::new(),
            notes: format!("error: {err}"),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub skipped_hypothesis: usize,
    pub failed: usize,
}

impl Summary {
    pub fn of(rows: &[ResultRow]) -> Self {
        let passed = rows.iter().filter(|r| r.passed).count();
        let skipped_hypothesis = rows.iter().filter(|r| !r.hypothesis_met).count();
        Self {
            total: rows.len(),
            passed,
            skipped_hypothesis,
            failed: rows.len() - passed - skipped_hypothesis,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub config: SuiteConfig,
    pub results: Vec<ResultRow>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn exit_code(&self) -> i32 {
        i32::from(self.summary.failed > 0)
    }
}

/// Generates one instance and runs its target checks, in target order.
pub fn evaluate(spec: &InstanceSpec, tol: &Tolerances) -> Vec<ResultRow> {
    let family = spec.family.name();
    let negative = spec.params.negative;
    let inst: Instance = match make_pair(spec) {
        Ok(inst) => inst,
        Err(e) => return vec![ResultRow::error("construction", family, spec.n, spec.seed, &e)],
    };
    targets(spec.family, negative)
        .iter()
        .map(|&check| match check.run(&inst.x, &inst.y, inst.k_lo, inst.k_hi, tol) {
            Ok(report) => {
                let mut row = ResultRow::from_report(report, family, spec.n, spec.seed);
                if negative {
                    row.notes = format!("negative control; {}", row.notes);
                    if row.hypothesis_met {
                        row.passed = false;
                        row.notes.push_str("; planted violation was not detected");
                    }
                }
                row
            }
            Err(e) => ResultRow::error(check.name(), family, spec.n, spec.seed, &e),
        })
        .collect()
}

/// How instances are spread over threads. Both produce the same report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Worker pool of the given size; `None` uses the global pool.
    #[cfg(feature = "parallel")]
    Parallel(Option<usize>),
}

impl Execution {
    /// Parallel when the feature is enabled and more than one job is
    /// allowed, sequential otherwise.
    pub fn from_jobs(jobs: Option<usize>) -> Self {
        match jobs {
            Some(1) => Execution::Sequential,
            #[cfg(feature = "parallel")]
            j => Execution::Parallel(j),
            #[cfg(not(feature = "parallel"))]
            _ => Execution::Sequential,
        }
    }
}

fn evaluate_all(specs: &[InstanceSpec], tol: &Tolerances, exec: Execution) -> Result<Vec<Vec<ResultRow>>> {
    match exec {
        Execution::Sequential => Ok(specs.iter().map(|s| evaluate(s, tol)).collect()),
        #[cfg(feature = "parallel")]
        Execution::Parallel(jobs) => {
            use rayon::prelude::*;
            let run = || specs.par_iter().map(|s| evaluate(s, tol)).collect();
            match jobs {
                None => Ok(run()),
                Some(j) => {
                    let pool = rayon::ThreadPoolBuilder::new()
                        .num_threads(j)
                        .build()
                        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
                    Ok(pool.install(run))
                }
            }
        }
    }
}

pub fn run_suite_with(config: &SuiteConfig, exec: Execution) -> Result<SuiteReport> {
    if config.jobs == Some(0) {
        return Err(Error::InvalidConfig("jobs must be at least 1".into()));
    }
    let specs = config.instances()?;
    let results: Vec<ResultRow> = evaluate_all(&specs, &config.tolerances, exec)?
        .into_iter()
        .flatten()
        .collect();
    Ok(SuiteReport {
        suite: config.suite.clone(),
        config: config.clone(),
        summary: Summary::of(&results),
        results,
    })
}

pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    run_suite_with(config, Execution::from_jobs(config.jobs))
}
