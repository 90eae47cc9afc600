//! Verification records and suite reports.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::homology::{HomologyResult, Pi1Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    /// Every homological identity holds but `pi_1` evidence is missing.
    HomologyOnly,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::HomologyOnly => "homology-only",
            Status::Fail => "fail",
        }
    }
}

/// Outcome of one verifier on one object.
#[derive(Clone, Debug, Serialize)]
pub struct Verification {
    pub check: String,
    pub status: Status,
    /// Reduced Betti numbers from degree 0 of the principal complex.
    pub betti: Vec<usize>,
    pub pi1: Option<Pi1Status>,
    pub data: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

impl Verification {
    pub fn new(check: impl Into<String>) -> Self {
        Verification {
            check: check.into(),
            status: Status::Pass,
            betti: Vec::new(),
            pi1: None,
            data: BTreeMap::new(),
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn is_failure(&self) -> bool {
        self.status == Status::Fail
    }

    /// Records an asserted identity; a false one fails the check.
    pub fn require(&mut self, ok: bool, what: impl FnOnce() -> String) -> bool {
        if !ok {
            self.failures.push(what());
            self.status = Status::Fail;
        }
        ok
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        self.data.insert(key.to_owned(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn set_homology(&mut self, h: &HomologyResult) {
        self.betti = h.betti_vector();
        self.set("homology", h);
    }

    /// Downgrades a passing check when `pi_1` was needed but not decided.
    pub fn need_simply_connected(&mut self, pi1: Option<Pi1Status>) {
        self.pi1 = pi1;
        if self.status == Status::Pass && pi1 != Some(Pi1Status::Trivial) {
            self.status = Status::HomologyOnly;
        }
    }
}

/// One row of a suite report.
#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub graph: String,
    #[serde(flatten)]
    pub verification: Verification,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    #[serde(rename = "homology-only")]
    pub homology_only: usize,
    pub fail: usize,
}

/// A suite run. Wall time is kept out of the serialized form so reports are
/// byte-identical across runs.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub tool_version: String,
    pub assumptions: Vec<String>,
    pub summary: Summary,
    pub records: Vec<Record>,
    #[serde(skip)]
    pub wall_time: std::time::Duration,
}

impl SuiteReport {
    pub fn new(suite: &str, assumptions: Vec<String>, mut records: Vec<Record>) -> Self {
        records.sort_by(|a, b| (&a.graph, &a.verification.check).cmp(&(&b.graph, &b.verification.check)));
        let mut summary = Summary { total: records.len(), ..Summary::default() };
        for r in &records {
            match r.verification.status {
                Status::Pass => summary.pass += 1,
                Status::HomologyOnly => summary.homology_only += 1,
                Status::Fail => summary.fail += 1,
            }
        }
        SuiteReport {
            suite: suite.to_owned(),
            tool_version: env!("CARGO_PKG_VERSION").to_owned(),
            assumptions,
            summary,
            records,
            wall_time: std::time::Duration::ZERO,
        }
    }

    pub fn any_failed(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One line per record, for terminals.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let v = &r.verification;
            out.push_str(&format!("{:<14} {:<28} {:<22} betti={:?}", v.status.as_str(), r.graph, v.check, v.betti));
            if let Some(p) = v.pi1 {
                out.push_str(&format!(" pi1={p:?}"));
            }
            out.push('\n');
            for f in &v.failures {
                out.push_str(&format!("    ! {f}\n"));
            }
        }
        let s = &self.summary;
        out.push_str(&format!(
            "{}: {} checks, {} pass, {} homology-only, {} fail\n",
            self.suite, s.total, s.pass, s.homology_only, s.fail
        ));
        out
    }
}
