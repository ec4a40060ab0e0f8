//! Machine-readable verification reports.
//!
//! Every check produces one [`Report`]:
//! `{ "claim": …, "k": …, "order": …, "status": "pass"|"fail", "diff": [...] }`.
//! `tier` says how a failure is treated: `exact` and `A` failures are hard
//! errors, `B` failures are warnings.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Tier {
    #[serde(rename = "exact")]
    Exact,
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub claim: String,
    pub k: i64,
    pub order: i64,
    pub status: Status,
    pub diff: Vec<Value>,
    pub tier: Tier,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tolerance: Option<f64>,
}

impl Report {
    pub fn new(claim: impl Into<String>, k: i64, order: i64, tier: Tier) -> Self {
        Self {
            claim: claim.into(),
            k,
            order,
            status: Status::Pass,
            diff: Vec::new(),
            tier,
            tolerance: None,
        }
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tolerance = Some(tol);
        self
    }

    /// Records a mismatch and marks the report failed.
    pub fn fail(&mut self, entry: Value) {
        self.status = Status::Fail;
        self.diff.push(entry);
    }

    /// Records an informational entry without changing the status.
    pub fn note(&mut self, entry: Value) {
        self.diff.push(entry);
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// True when a failure of this report should fail the run.
    pub fn is_blocking_failure(&self) -> bool {
        !self.passed() && self.tier != Tier::B
    }

    pub fn summary_line(&self) -> String {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail if self.tier == Tier::B => "WARN",
            Status::Fail => "FAIL",
        };
        format!(
            "[{status}] {} (k={}, order={})",
            self.claim, self.k, self.order
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn schema() {
        let mut r = Report::new("demo", 3, 40, Tier::Exact);
        r.fail(json!({"n": 1}));
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["claim"], "demo");
        assert_eq!(v["k"], 3);
        assert_eq!(v["order"], 40);
        assert_eq!(v["status"], "fail");
        assert_eq!(v["diff"][0]["n"], 1);
        assert_eq!(v["tier"], "exact");
        assert!(v.get("tolerance").is_none());
        assert!(r.is_blocking_failure());
    }

    #[test]
    fn tier_b_failures_are_warnings() {
        let mut r = Report::new("raw", 0, 300, Tier::B).with_tolerance(1e-2);
        r.fail(json!({}));
        assert!(!r.is_blocking_failure());
        assert!(r.summary_line().starts_with("[WARN]"));
    }
}
