use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Outcome of verifying one result on one instance.
///
/// `passed` is only ever true when `hypothesis_met` is; the constructor
/// methods enforce this.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_name: String,
    pub passed: bool,
    pub hypothesis_met: bool,
    pub residuals: BTreeMap<String, f64>,
    pub tolerances: BTreeMap<String, f64>,
    pub notes: String,
}

impl CheckReport {
    pub fn new(name: &str) -> Self {
        Self {
            check_name: name.to_owned(),
            passed: false,
            hypothesis_met: true,
            residuals: BTreeMap::new(),
            tolerances: BTreeMap::new(),
            notes: String::new(),
        }
    }

    /// Records a residual; non-finite values are stored as `f64::MAX` so the
    /// report stays serializable and the comparison fails.
    pub fn residual(&mut self, name: &str, value: f64) -> &mut Self {
        let v = if value.is_finite() { value.abs() } else { f64::MAX };
        self.residuals.insert(name.to_owned(), v);
        self
    }

    pub fn tolerance(&mut self, name: &str, value: f64) -> &mut Self {
        self.tolerances.insert(name.to_owned(), value);
        self
    }

    pub fn note(&mut self, text: &str) -> &mut Self {
        if !self.notes.is_empty() {
            self.notes.push_str("; ");
        }
        self.notes.push_str(text);
        self
    }

    /// Marks the hypothesis gate as failed. The report can no longer pass.
    pub fn gate_failed(mut self, why: &str) -> Self {
        self.hypothesis_met = false;
        self.passed = false;
        self.note(&format!("hypothesis not met: {why}"));
        self
    }

    /// Sets `passed` from the supplied verdict, respecting the gate.
    pub fn finish(mut self, verdict: bool) -> Self {
        self.passed = verdict && self.hypothesis_met;
        self
    }

    /// Pass iff `residual ≤ tolerance` for every key recorded in both maps.
    pub fn finish_by_tolerances(self) -> Self {
        let ok = self
            .residuals
            .iter()
            .all(|(k, r)| self.tolerances.get(k).is_none_or(|t| r <= t));
        self.finish(ok)
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.values().copied().fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gate_blocks_pass() {
        let r = CheckReport::new("x").gate_failed("nope").finish(true);
        assert!(!r.passed && !r.hypothesis_met);
        assert!(r.notes.contains("nope"));
    }

    #[test]
    fn tolerance_comparison() {
        let mut r = CheckReport::new("x");
        r.residual("a", 1e-9).tolerance("a", 1e-8).residual("b", f64::NAN);
        let r = r.finish_by_tolerances();
        // "b" has no tolerance so it is informational only
        assert!(r.passed);
        assert_eq!(r.residuals["b"], f64::MAX);

        let mut r = CheckReport::new("x");
        r.residual("a", 2e-8).tolerance("a", 1e-8);
        assert!(!r.finish_by_tolerances().passed);
    }
}
