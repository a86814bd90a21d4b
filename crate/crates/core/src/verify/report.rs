use std::fmt::Write as _;

use serde::Serialize;

use crate::ccsystem::{CCSolution, FlatSolution};
use crate::geometry::DistanceVector;

/// Evidence attached to a failed case, dumped at full precision.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Solution(Box<FlatSolution>),
    Distances(DistanceVector),
    Lengths([f64; 4]),
}

impl From<&CCSolution> for Witness {
    fn from(sol: &CCSolution) -> Self {
        Witness::Solution(Box::new(sol.flat()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseFailure {
    pub case: String,
    pub detail: String,
    /// Signed slack of the violated inequality (negative when violated).
    pub slack: f64,
    pub witness: Option<Witness>,
}

/// Outcome of one executable theorem check over a corpus.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub cases_checked: usize,
    pub failures: Vec<CaseFailure>,
    /// Solver runs that did not produce anything to check. Kept apart from
    /// `failures`: they say nothing about the statement itself.
    pub solver_failures: Vec<String>,
    /// Most negative slack seen, or 0 when every slack is non-negative.
    pub max_slack_violation: f64,
    pub notes: Vec<String>,
}

impl TheoremReport {
    pub fn new(theorem: impl Into<String>) -> Self {
        Self {
            theorem: theorem.into(),
            cases_checked: 0,
            failures: Vec::new(),
            solver_failures: Vec::new(),
            max_slack_violation: 0.0,
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.solver_failures.is_empty()
    }

    /// Counts a case and records its slack.
    pub(crate) fn observe(&mut self, slack: f64) {
        self.cases_checked += 1;
        self.max_slack_violation = self.max_slack_violation.min(slack);
    }

    pub(crate) fn fail(
        &mut self,
        case: impl Into<String>,
        detail: impl Into<String>,
        slack: f64,
        witness: Option<Witness>,
    ) {
        self.failures.push(CaseFailure { case: case.into(), detail: detail.into(), slack, witness });
    }

    pub(crate) fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }
}

/// Plain-text table of reports, one row per theorem followed by failure
/// and note lines.
pub fn render_table(reports: &[TheoremReport]) -> String {
    let width = reports.iter().map(|r| r.theorem.len()).max().unwrap_or(7).max(7);
    let mut out = String::new();
    let _ =
        writeln!(out, "{:<width$}  {:>6}  {:>8}  {:>7}  {:>12}", "theorem", "status", "cases", "failed", "worst slack");
    for r in reports {
        let status = if r.passed() { "pass" } else { "FAIL" };
        let failed = r.failures.len() + r.solver_failures.len();
        let _ = writeln!(
            out,
            "{:<width$}  {:>6}  {:>8}  {:>7}  {:>12.3e}",
            r.theorem, status, r.cases_checked, failed, r.max_slack_violation
        );
        for f in &r.failures {
            let _ = writeln!(out, "    violation [{}]: {} (slack {:e})", f.case, f.detail, f.slack);
        }
        for s in &r.solver_failures {
            let _ = writeln!(out, "    solver: {s}");
        }
        for n in &r.notes {
            let _ = writeln!(out, "    note: {n}");
        }
    }
    out
}
