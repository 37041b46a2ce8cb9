//! Verification reports.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Inconclusive,
    Refuted,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Inconclusive => "inconclusive",
            Status::Refuted => "refuted",
        }
    }

    /// `verified < inconclusive < refuted`
    pub fn worst(statuses: impl IntoIterator<Item = Status>) -> Status {
        statuses.into_iter().max().unwrap_or(Status::Verified)
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of checking one claim. A `verified` report carries a witness
/// that can be re-checked without searching; every report records the
/// bounds it ran under.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub claim_id: String,
    pub status: Status,
    pub witnesses: Value,
    pub search_bound: Value,
    pub elapsed_ms: u64,
}

impl WitnessReport {
    pub fn new(claim_id: &str, status: Status, witnesses: Value, search_bound: Value) -> Self {
        WitnessReport { claim_id: claim_id.to_string(), status, witnesses, search_bound, elapsed_ms: 0 }
    }

    /// Runs `f` and stamps the wall-clock time on its report.
    pub fn timed(f: impl FnOnce() -> WitnessReport) -> WitnessReport {
        let start = Instant::now();
        let mut r = f();
        r.elapsed_ms = start.elapsed().as_millis() as u64;
        r
    }

    /// The report with the timing field zeroed, for determinism checks.
    pub fn without_timing(&self) -> WitnessReport {
        WitnessReport { elapsed_ms: 0, ..self.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worst_status() {
        assert_eq!(Status::worst([]), Status::Verified);
        assert_eq!(Status::worst([Status::Verified, Status::Inconclusive]), Status::Inconclusive);
        assert_eq!(Status::worst([Status::Refuted, Status::Inconclusive]), Status::Refuted);
    }

    #[test]
    fn key_order() {
        let r = WitnessReport::new("x", Status::Verified, Value::Null, serde_json::json!({"height": 2}));
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(
            s,
            r#"{"claim_id":"x","status":"verified","witnesses":null,"search_bound":{"height":2},"elapsed_ms":0}"#
        );
    }
}
