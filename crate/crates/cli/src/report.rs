//! Report structure and rendering.

use std::fmt::Write as _;

use qcti::identities::VerdictRecord;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
    Timeout,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
            Status::Timeout => "TIMEOUT",
        }
    }
}

/// One evaluated point. `verdict` is present for the identity suites,
/// `reason` for skipped points and `detail` for errors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub suite: String,
    pub point: Value,
    pub label: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<VerdictRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Wall time in seconds.
    pub elapsed: f64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub timeout: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub version: String,
    #[serde(rename = "q-field")]
    pub q_field: String,
}

impl Default for Meta {
    fn default() -> Self {
        Meta { version: env!("CARGO_PKG_VERSION").to_string(), q_field: "QQ(q)".to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub meta: Meta,
    pub results: Vec<Entry>,
    pub summary: Summary,
}

impl Report {
    pub fn new(results: Vec<Entry>) -> Self {
        let mut summary = Summary::default();
        for e in &results {
            match e.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Skip => summary.skipped += 1,
                Status::Timeout => summary.timeout += 1,
            }
        }
        Report { meta: Meta::default(), results, summary }
    }

    pub fn failed(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per point: `suite params STATUS elapsed`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.results {
            let _ = writeln!(out, "{} {} {} {:.3}s", e.suite, e.label, e.status.label(), e.elapsed);
        }
        out
    }

    pub fn summary_line(&self) -> String {
        let s = self.summary;
        format!("pass {} fail {} skipped {} timeout {}", s.pass, s.fail, s.skipped, s.timeout)
    }

    /// The report with timings zeroed, for comparing runs.
    pub fn without_timings(&self) -> Report {
        let mut r = self.clone();
        for e in &mut r.results {
            e.elapsed = 0.0;
            if let Some(v) = &mut e.verdict {
                v.elapsed = std::time::Duration::ZERO;
            }
        }
        r
    }
}
