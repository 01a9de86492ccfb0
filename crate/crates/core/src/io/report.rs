//! Machine-readable verification reports.

use serde::Serialize;

use crate::mannheim::RelationEntry;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Environment {
    pub samples: usize,
    pub tolerance: f64,
    pub rule: String,
    pub mode: String,
    pub theta: String,
    pub theta_star: String,
}

/// A check that could not run, with the reason.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Skipped {
    pub check: String,
    pub code: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub environment: Environment,
    pub entries: Vec<RelationEntry>,
    pub skipped: Vec<Skipped>,
    /// Number of asserted entries out of tolerance.
    pub failed: usize,
}

impl VerifyReport {
    pub fn new(environment: Environment) -> Self {
        VerifyReport {
            environment,
            entries: Vec::new(),
            skipped: Vec::new(),
            failed: 0,
        }
    }

    pub fn push(&mut self, entry: RelationEntry) {
        if entry.failed() {
            self.failed += 1;
        }
        self.entries.push(entry);
    }

    pub fn extend(&mut self, entries: impl IntoIterator<Item = RelationEntry>) {
        for e in entries {
            self.push(e);
        }
    }

    pub fn skip(&mut self, check: &str, err: &crate::GeomError) {
        self.skipped.push(Skipped {
            check: check.into(),
            code: err.code().into(),
            reason: err.to_string(),
        });
    }

    pub fn entry(&self, id: &str) -> Option<&RelationEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}
