//! Pass/fail reports shared by every verification routine.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Outcome of one check. Serialises as
/// `{check, spec, trials, seed, pass, witnesses, notes}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub spec: String,
    pub trials: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub pass: bool,
    pub witnesses: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(check: impl Into<String>, spec: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            spec: spec.into(),
            trials: 0,
            seed: None,
            pass: true,
            witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Records a failure witness and marks the report failed.
    pub fn fail(&mut self, witness: impl Into<String>) {
        self.pass = false;
        self.witnesses.push(witness.into());
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Folds a sub-report into this one.
    pub fn absorb(&mut self, other: &Report) {
        if !other.pass {
            self.pass = false;
            for w in &other.witnesses {
                self.witnesses.push(format!("{}: {}", other.check, w));
            }
        }
        self.trials += other.trials;
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {} ({})", if self.pass { "PASS" } else { "FAIL" }, self.check, self.spec)?;
        for w in &self.witnesses {
            write!(f, "\n  witness: {w}")?;
        }
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        Ok(())
    }
}
