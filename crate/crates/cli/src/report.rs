//! Structured outcome of a seeded property-verification run, emitted as one
//! JSON object per line.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    /// Human-readable description of the property being checked.
    pub anchor: String,
    pub seed: u64,
    pub samples: u64,
    pub verdict: Verdict,
    /// Offending inputs in text syntax; always present on failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    /// Opt-in (--timings); omitted by default so reports are byte-stable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl SuiteReport {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report is serializable")
    }
}
