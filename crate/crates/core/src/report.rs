//! Structured pass/fail records for verification runs.
//!
//! Every identity check produces one `CheckResult`. Failing checks carry
//! both sides serialized exactly so discrepancies are diagnosable from the
//! report alone.

use serde::Serialize;

/// One verified identity.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    /// Machine-friendly check name, stable across runs.
    pub check: String,
    /// Human description of the identity being verified.
    pub paper_ref: String,
    pub q: u64,
    pub n: u32,
    #[serde(rename = "J")]
    pub jmax: usize,
    #[serde(rename = "K")]
    pub kmax: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of a single identity comparison, before being bound to a
/// configuration in a `CheckResult`.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub pass: bool,
    /// Exact serializations of both sides; populated on failure.
    pub lhs: Option<String>,
    pub rhs: Option<String>,
}

impl Outcome {
    pub fn pass() -> Self {
        Outcome {
            pass: true,
            lhs: None,
            rhs: None,
        }
    }

    pub fn fail(lhs: String, rhs: String) -> Self {
        Outcome {
            pass: false,
            lhs: Some(lhs),
            rhs: Some(rhs),
        }
    }

    pub fn of(pass: bool, lhs: impl Fn() -> String, rhs: impl Fn() -> String) -> Self {
        if pass {
            Self::pass()
        } else {
            Self::fail(lhs(), rhs())
        }
    }
}

/// A full verification report: deterministic content and field order.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub q: u64,
    pub n: u32,
    pub jmax: usize,
    pub kmax: usize,
    pub suite: String,
    pub checks: Vec<CheckResult>,
    pub passed: usize,
    pub failed: usize,
}

impl Report {
    pub fn new(q: u64, n: u32, jmax: usize, kmax: usize, suite: &str, checks: Vec<CheckResult>) -> Self {
        let passed = checks.iter().filter(|c| c.status == Status::Pass).count();
        let failed = checks.len() - passed;
        Report {
            q,
            n,
            jmax,
            kmax,
            suite: suite.to_string(),
            checks,
            passed,
            failed,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}
