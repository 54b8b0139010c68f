//! Verification report records.

use std::time::Duration;

use gmfkit_core::moduli::{CheckOutcome, Verdict};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AssumptionOut {
    pub name: &'static str,
    pub statement: String,
    pub status: &'static str,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check: &'static str,
    pub d: u32,
    #[serde(rename = "N")]
    pub max_degree: i64,
    pub structure: Option<&'static str>,
    pub verdict: &'static str,
    pub first_mismatch_degree: Option<i64>,
    pub assumptions: Vec<AssumptionOut>,
    /// Coefficient comparisons are exact.
    pub tolerance: u32,
    pub details: Vec<String>,
    pub wall_time_s: f64,
}

impl CheckRecord {
    pub fn new(outcome: &CheckOutcome, elapsed: Duration) -> Self {
        CheckRecord {
            check: outcome.check,
            d: outcome.d,
            max_degree: outcome.max_degree,
            structure: outcome.structure.map(|s| s.as_str()),
            verdict: outcome.verdict.as_str(),
            first_mismatch_degree: outcome.first_mismatch_degree,
            assumptions: outcome
                .assumptions
                .iter()
                .map(|a| AssumptionOut {
                    name: a.name,
                    statement: a.statement.clone(),
                    status: a.status.as_str(),
                })
                .collect(),
            tolerance: 0,
            details: outcome.details.clone(),
            wall_time_s: elapsed.as_secs_f64(),
        }
    }

    /// Pass, or Interval on the bounds check where an interval is the
    /// expected answer.
    pub fn acceptable(&self) -> bool {
        self.verdict == Verdict::Pass.as_str()
            || (self.check == "mtgmf-bounds" && self.verdict == Verdict::Interval.as_str())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct VerifyReport {
    pub records: Vec<CheckRecord>,
}

impl VerifyReport {
    pub fn all_acceptable(&self) -> bool {
        self.records.iter().all(CheckRecord::acceptable)
    }
}
