//! Deterministic suite reports: per-check status with witnesses, stable
//! ordering, and counters. Serialization is byte-stable for a fixed
//! (document, seed, samples) triple; wall-clock timing never enters the
//! canonical report.

use serde::{Deserialize, Serialize};

/// The report schema version, kept alongside the model schema version.
pub const REPORT_SCHEMA: &str = "1";

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SuiteReport {
    pub schema: String,
    pub suite: String,
    pub seed: u64,
    pub samples: u64,
    pub checks: Vec<CheckResult>,
    pub counters: Counters,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckResult {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct Counters {
    pub pass: u64,
    pub fail: u64,
    pub skipped: u64,
    pub checks: u64,
}

impl SuiteReport {
    pub fn new(suite: &str, seed: u64, samples: u64) -> SuiteReport {
        SuiteReport {
            schema: REPORT_SCHEMA.to_string(),
            suite: suite.to_string(),
            seed,
            samples,
            checks: Vec::new(),
            counters: Counters::default(),
        }
    }

    pub fn pass(&mut self, id: &str) {
        self.push(CheckResult {
            id: id.to_string(),
            status: Status::Pass,
            witness: None,
            reason: None,
        });
    }

    /// A passing check carrying auditable data (sample grids, counts).
    pub fn pass_with(&mut self, id: &str, data: serde_json::Value) {
        self.push(CheckResult {
            id: id.to_string(),
            status: Status::Pass,
            witness: Some(data),
            reason: None,
        });
    }

    pub fn fail(&mut self, id: &str, witness: serde_json::Value) {
        self.push(CheckResult {
            id: id.to_string(),
            status: Status::Fail,
            witness: Some(witness),
            reason: None,
        });
    }

    pub fn check(&mut self, id: &str, ok: bool, witness: impl FnOnce() -> serde_json::Value) {
        if ok {
            self.pass(id);
        } else {
            self.fail(id, witness());
        }
    }

    pub fn skip(&mut self, id: &str, reason: &str) {
        self.push(CheckResult {
            id: id.to_string(),
            status: Status::Skipped,
            witness: None,
            reason: Some(reason.to_string()),
        });
    }

    fn push(&mut self, c: CheckResult) {
        match c.status {
            Status::Pass => self.counters.pass += 1,
            Status::Fail => self.counters.fail += 1,
            Status::Skipped => self.counters.skipped += 1,
        }
        self.counters.checks += 1;
        self.checks.push(c);
    }

    pub fn all_pass(&self) -> bool {
        self.counters.fail == 0
    }

    /// 0 when nothing failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn human_lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        for c in &self.checks {
            let line = match c.status {
                Status::Pass => format!("PASS {}", c.id),
                Status::Fail => format!(
                    "FAIL {} witness={}",
                    c.id,
                    c.witness
                        .as_ref()
                        .map(|w| w.to_string())
                        .unwrap_or_default()
                ),
                Status::Skipped => format!(
                    "SKIP {} ({})",
                    c.id,
                    c.reason.as_deref().unwrap_or("")
                ),
            };
            out.push(line);
        }
        out.push(format!(
            "{}: {} pass, {} fail, {} skipped",
            self.suite, self.counters.pass, self.counters.fail, self.counters.skipped
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counters_and_exit_codes() {
        let mut r = SuiteReport::new("demo", 0, 0);
        r.pass("a");
        r.skip("b", "missing section");
        assert!(r.all_pass());
        assert_eq!(r.exit_code(), 0);
        r.fail("c", serde_json::json!({"pair": ["0", "1"]}));
        assert!(!r.all_pass());
        assert_eq!(r.exit_code(), 1);
        assert_eq!(r.counters.checks, 3);
    }

    #[test]
    fn serialization_roundtrips_witnesses() {
        let mut r = SuiteReport::new("demo", 7, 3);
        r.fail("x", serde_json::json!({"value": "1/2", "ids": ["a", "b"]}));
        let text = r.to_json();
        let back: SuiteReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        // the rational inside the witness parses back exactly
        let w = back.checks[0].witness.as_ref().unwrap();
        let q = crate::q::parse_q(w["value"].as_str().unwrap()).unwrap();
        assert_eq!(q, crate::q::q(1, 2));
    }
}
