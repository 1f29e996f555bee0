//! Instance generators, enumerators, and theorem-verification harnesses.

pub mod enumerate;
pub mod gen;
pub mod suite;
pub mod theorems;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::report::Status;

pub use suite::{run_suite, Level, SuiteOptions};
pub use theorems::{verify_forest_theorem, verify_gkl_lemma, verify_pfpm_theorem};

/// One checked claim about one instance.
///
/// Failing reports carry the serialized instance, so they can be re-run alone.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub instance: Value,
    pub expected: Value,
    pub observed: Value,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attachments: Option<Value>,
}

impl VerificationReport {
    pub fn new(
        theorem: impl Into<String>,
        instance: Value,
        expected: impl Into<Value>,
        observed: impl Into<Value>,
        status: Status,
    ) -> Self {
        VerificationReport {
            theorem: theorem.into(),
            instance,
            expected: expected.into(),
            observed: observed.into(),
            status,
            attachments: None,
        }
    }

    pub fn with_attachments(mut self, attachments: Value) -> Self {
        self.attachments = Some(attachments);
        self
    }
}

/// `{"pass": n, "fail": n, "unknown": n, "reports": [...]}`
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub unknown: usize,
    pub reports: Vec<VerificationReport>,
}

impl Summary {
    pub fn from_reports(reports: Vec<VerificationReport>) -> Self {
        let count = |s| reports.iter().filter(|r| r.status == s).count();
        Summary {
            pass: count(Status::Pass),
            fail: count(Status::Fail),
            unknown: count(Status::Unknown),
            reports,
        }
    }

    pub fn status(&self) -> Status {
        if self.fail > 0 {
            Status::Fail
        } else if self.unknown > 0 {
            Status::Unknown
        } else {
            Status::Pass
        }
    }

    /// 0 when everything passed, 1 on any failure, 3 when only unknowns remain.
    pub fn exit_code(&self) -> i32 {
        match self.status() {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Unknown => 3,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn summary_counts_and_exit_codes() {
        let r = |s| VerificationReport::new("t", json!(null), "x", "x", s);
        let s = Summary::from_reports(vec![r(Status::Pass), r(Status::Unknown)]);
        assert_eq!((s.pass, s.fail, s.unknown), (1, 0, 1));
        assert_eq!(s.exit_code(), 3);
        let s = Summary::from_reports(vec![r(Status::Fail), r(Status::Unknown)]);
        assert_eq!(s.exit_code(), 1);
        assert_eq!(Summary::default().exit_code(), 0);
        let v = serde_json::to_value(Summary::from_reports(vec![r(Status::Pass)])).unwrap();
        assert_eq!(v["pass"], 1);
        assert_eq!(v["reports"][0]["status"], "pass");
        assert!(v["reports"][0].get("attachments").is_none());
    }
}
