//! Check outcomes and their JSON form.

use std::time::Instant;

use serde::{Deserialize, Serialize};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub pass: bool,
    /// Extracted weight-diagonal operator: one (weight, sign) per weight space.
    #[serde(rename = "D")]
    pub d: Vec<(Vec<i64>, i64)>,
    /// Sample points, rationals as "p/q".
    pub samples: Vec<Vec<String>>,
    pub notes: Vec<String>,
    pub ms: u64,
    pub seed: Option<u64>,
    pub version: String,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            pass: true,
            d: vec![],
            samples: vec![],
            notes: vec![],
            ms: 0,
            seed: None,
            version: VERSION.to_string(),
        }
    }

    pub fn fail(&mut self, why: impl Into<String>) {
        self.pass = false;
        self.notes.push(why.into());
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Runs `f` against a fresh report and records elapsed time.
    pub fn timed(name: impl Into<String>, f: impl FnOnce(&mut CheckReport)) -> Self {
        let mut r = Self::new(name);
        let t = Instant::now();
        f(&mut r);
        r.ms = t.elapsed().as_millis() as u64;
        r
    }

    /// A report for an error that stopped the check before it could decide.
    pub fn from_error(name: impl Into<String>, e: &crate::Error) -> Self {
        let mut r = Self::new(name);
        r.fail(e.to_string());
        r
    }

    /// One line: `PASS name (12 ms)` plus the first note on failure.
    pub fn summary(&self) -> String {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        match (self.pass, self.notes.first()) {
            (false, Some(n)) => format!("{tag} {} ({} ms): {n}", self.name, self.ms),
            _ => format!("{tag} {} ({} ms)", self.name, self.ms),
        }
    }
}

pub fn to_json(reports: &[CheckReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize")
}

pub fn from_json(s: &str) -> crate::Result<Vec<CheckReport>> {
    serde_json::from_str(s).map_err(|e| crate::Error::Parse(e.to_string()))
}
