//! Verification reports and their JSON/CSV serializations.

use serde::{Deserialize, Serialize};
use std::time::Duration;

/// How a harness covered its case space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum ReportMode {
    Exhaustive,
    Sample { seed: u64, count: u64 },
    ExtremalOnly,
}

impl std::fmt::Display for ReportMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ReportMode::Exhaustive => write!(f, "exhaustive"),
            ReportMode::Sample { seed, count } => write!(f, "sample(seed={seed};count={count})"),
            ReportMode::ExtremalOnly => write!(f, "extremal-only"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Outcome of one harness run. `violations` hold serialized witnesses
/// (BFAM families or BGF graphs) that re-fail when re-run individually;
/// `exceptions` are the expected extremal non-Hamiltonian families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub target: String,
    pub n: usize,
    pub mode: ReportMode,
    pub cases_checked: u64,
    pub hypothesis_cases: u64,
    pub violations: Vec<String>,
    pub exceptions: Vec<String>,
    pub elapsed_ms: u64,
    pub verdict: Verdict,
}

impl VerificationReport {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        target: &str,
        n: usize,
        mode: ReportMode,
        cases_checked: u64,
        hypothesis_cases: u64,
        violations: Vec<String>,
        exceptions: Vec<String>,
        elapsed: Duration,
    ) -> Self {
        let verdict = if violations.is_empty() { Verdict::Pass } else { Verdict::Fail };
        VerificationReport {
            target: target.to_string(),
            n,
            mode,
            cases_checked,
            hypothesis_cases,
            violations,
            exceptions,
            elapsed_ms: elapsed.as_millis() as u64,
            verdict,
        }
    }

    pub fn is_pass(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// JSON with the timing field zeroed, for run-to-run comparisons.
    pub fn to_json_without_elapsed(&self) -> String {
        let mut clone = self.clone();
        clone.elapsed_ms = 0;
        clone.to_json()
    }

    pub fn csv_header() -> &'static str {
        "target,n,mode,cases_checked,hypothesis_cases,violations,exceptions,elapsed_ms,verdict"
    }

    /// One summary row; list fields are reported as counts.
    pub fn csv_row(&self) -> String {
        let verdict = match self.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        };
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.target,
            self.n,
            self.mode,
            self.cases_checked,
            self.hypothesis_cases,
            self.violations.len(),
            self.exceptions.len(),
            self.elapsed_ms,
            verdict
        )
    }
}
