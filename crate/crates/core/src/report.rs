//! Structured suite results and their text rendering.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::liealg::{CheckOutcome, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub point: BTreeMap<String, String>,
    pub residual: String,
}

impl From<&Witness> for WitnessReport {
    fn from(w: &Witness) -> Self {
        WitnessReport {
            point: w.point.iter().map(|(s, v)| (s.to_string(), v.to_string())).collect(),
            residual: w.residual.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub anchor: String,
    pub status: Status,
    pub witness: Option<WitnessReport>,
    pub ms: u64,
}

impl CheckReport {
    pub fn from_outcome(name: &str, anchor: &str, out: &CheckOutcome, ms: u64) -> Self {
        CheckReport {
            name: name.to_string(),
            anchor: anchor.to_string(),
            status: if out.passed { Status::Pass } else { Status::Fail },
            witness: out.witness.as_ref().map(WitnessReport::from),
            ms,
        }
    }

    /// A failed check that never produced an identity (construction error).
    pub fn error(name: &str, anchor: &str, message: String, ms: u64) -> Self {
        CheckReport {
            name: name.to_string(),
            anchor: anchor.to_string(),
            status: Status::Fail,
            witness: Some(WitnessReport {
                point: BTreeMap::new(),
                residual: message,
            }),
            ms,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub checks: Vec<CheckReport>,
    pub status: Status,
}

impl SuiteReport {
    pub fn new(name: &str, checks: Vec<CheckReport>) -> Self {
        let status = overall(checks.iter().map(|c| c.status));
        SuiteReport {
            name: name.to_string(),
            checks,
            status,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
    pub status: Status,
}

/// Pass iff every non-skipped entry passes.
fn overall(it: impl Iterator<Item = Status>) -> Status {
    if it.into_iter().any(|s| s == Status::Fail) {
        Status::Fail
    } else {
        Status::Pass
    }
}

impl Report {
    pub fn new(seed: u64, suites: Vec<SuiteReport>) -> Self {
        let status = overall(suites.iter().map(|s| s.status));
        Report {
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            suites,
            status,
        }
    }

    /// The report with every timing zeroed, for comparing runs.
    pub fn without_timing(&self) -> Report {
        let mut r = self.clone();
        for s in &mut r.suites {
            for c in &mut s.checks {
                c.ms = 0;
            }
        }
        r
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            let _ = writeln!(out, "suite {} [{}]", s.name, s.status);
            for c in &s.checks {
                let _ = writeln!(out, "  {:<4} {} ({} ms)", c.status, c.name, c.ms);
                if c.status == Status::Fail {
                    let _ = writeln!(out, "       anchor: {}", c.anchor);
                    if let Some(w) = &c.witness {
                        let _ = writeln!(out, "       residual: {}", w.residual);
                    }
                }
            }
        }
        let passed = self.suites.iter().flat_map(|s| &s.checks).filter(|c| c.status == Status::Pass).count();
        let total = self.suites.iter().map(|s| s.checks.len()).sum::<usize>();
        let _ = writeln!(out, "{passed}/{total} checks passed, seed {}: {}", self.seed, self.status);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(status: Status) -> CheckReport {
        CheckReport {
            name: "c".into(),
            anchor: "a".into(),
            status,
            witness: None,
            ms: 3,
        }
    }

    #[test]
    fn skips_do_not_fail() {
        let s = SuiteReport::new("s", vec![check(Status::Pass), check(Status::Skip)]);
        assert_eq!(s.status, Status::Pass);
        let r = Report::new(0, vec![s, SuiteReport::new("t", vec![check(Status::Fail)])]);
        assert_eq!(r.status, Status::Fail);
    }

    #[test]
    fn json_field_names() {
        let r = Report::new(4, vec![SuiteReport::new("s", vec![check(Status::Pass)])]);
        let v = serde_json::to_value(&r).unwrap();
        for k in ["version", "seed", "suites", "status"] {
            assert!(v.get(k).is_some(), "{k}");
        }
        let c = &v["suites"][0]["checks"][0];
        for k in ["name", "anchor", "status", "witness", "ms"] {
            assert!(c.get(k).is_some(), "{k}");
        }
        assert_eq!(c["status"], "pass");
    }
}
