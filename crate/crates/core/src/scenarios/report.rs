use std::fmt;
use std::str::FromStr;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A known discrepancy in the source data, surfaced without failing.
    Flagged,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Flagged => "flagged",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub details: String,
}

impl Check {
    pub fn new(id: &str, status: Status, details: impl Into<String>) -> Self {
        Check { id: id.to_string(), status, details: details.into() }
    }

    pub fn from_bool(id: &str, ok: bool, details: impl Into<String>) -> Self {
        Self::new(id, if ok { Status::Pass } else { Status::Fail }, details)
    }
}

/// Outcome of verifying one scenario. `overall` is `Pass` unless some check
/// failed; flagged checks do not count as failures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub scenario: String,
    pub checks: Vec<Check>,
    pub overall: Status,
}

impl Report {
    pub fn new(scenario: &str, checks: Vec<Check>) -> Self {
        let overall = if checks.iter().any(|c| c.status == Status::Fail) { Status::Fail } else { Status::Pass };
        Report { scenario: scenario.to_string(), checks, overall }
    }

    pub fn passed(&self) -> bool {
        self.overall == Status::Pass
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn with_status(&self, status: Status) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(move |c| c.status == status)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "scenario {}", self.scenario)?;
        let width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Flagged => "FLAG",
            };
            writeln!(f, "  {tag}  {:width$}  {}", c.id, c.details)?;
        }
        let failed = self.with_status(Status::Fail).count();
        let flagged = self.with_status(Status::Flagged).count();
        write!(
            f,
            "overall: {} ({} checks, {failed} failed, {flagged} flagged)",
            self.overall,
            self.checks.len()
        )
    }
}

/// Report sections. A check belongs to the section named by the prefix of
/// its id (`lattice.gram` is in `Lattice`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Section {
    Chow,
    Nef,
    Movable,
    Lattice,
    Domain,
    Lifting,
}

impl Section {
    pub const ALL: &'static [Section] =
        &[Section::Chow, Section::Nef, Section::Movable, Section::Lattice, Section::Domain, Section::Lifting];

    pub fn name(self) -> &'static str {
        match self {
            Section::Chow => "chow",
            Section::Nef => "nef",
            Section::Movable => "movable",
            Section::Lattice => "lattice",
            Section::Domain => "domain",
            Section::Lifting => "lifting",
        }
    }

    pub fn owns(self, id: &str) -> bool {
        id.split('.').next() == Some(self.name())
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Section {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Section::ALL
            .iter()
            .copied()
            .find(|sec| sec.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Section::ALL.iter().map(|s| s.name()).collect();
                format!("unknown section `{s}` (expected one of {})", names.join(", "))
            })
    }
}
