//! Structured pass/fail results.

use serde::Serialize;

use crate::expr::RatExpr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Vacuous,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Printed residual, `None` when there is nothing to show.
    pub residual: Option<String>,
    pub notes: String,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status) -> Self {
        Self {
            name: name.into(),
            status,
            residual: None,
            notes: String::new(),
        }
    }

    /// Passes iff every residual is exactly zero; the first nonzero one is
    /// recorded.
    pub fn zero<'a>(
        name: impl Into<String>,
        residuals: impl IntoIterator<Item = &'a RatExpr>,
    ) -> Self {
        let first = residuals.into_iter().find(|r| !r.is_zero());
        Self {
            name: name.into(),
            status: Status::from_bool(first.is_none()),
            residual: Some(first.map_or_else(|| "0".to_string(), ToString::to_string)),
            notes: String::new(),
        }
    }

    pub fn with_residual(mut self, residual: impl Into<String>) -> Self {
        self.residual = Some(residual.into());
        self
    }

    pub fn with_notes(mut self, notes: impl Into<String>) -> Self {
        self.notes = notes.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// True when no check failed; vacuous checks count as passing.
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}
