use std::collections::BTreeMap;
use std::io::{self, Write};

use rayon::prelude::*;
use serde::Serialize;

use super::root::{solve_b, trapezoid_distances};
use super::{ScanConfig, SolveError};
use crate::ccsystem::{CCSolution, Gate};

pub const CSV_HEADER: &str = "c,d,b,e,f,m2,m3,m4,lambda,sigma,shape,in_omega";

/// Why a grid cell (or one root within it) produced no accepted solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    InvalidCell,
    Parallelogram,
    InfeasibleGeometry,
    NoSignChange,
    Evaluation,
    OutsideOmega,
    NonPositiveMasses,
    ResidualGate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellFailure {
    pub c: f64,
    pub d: f64,
    /// Leg length of the rejected root, if one was found.
    pub b: Option<f64>,
    pub kind: FailureKind,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MassRange {
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanSummary {
    pub a_fixed: f64,
    pub cells: usize,
    pub roots: usize,
    pub accepted: usize,
    pub failures: BTreeMap<FailureKind, usize>,
    pub m1_greater_than_m2: usize,
    pub m1_less_than_m2: usize,
    /// Ranges of m2, m3, m4 over accepted solutions (`m1 = 1`).
    pub masses: BTreeMap<String, MassRange>,
    pub note: Option<String>,
}

/// Accepted solutions in `(c, d, b)` order plus every recorded failure.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanOutcome {
    pub config: ScanConfig,
    pub solutions: Vec<CCSolution>,
    pub failures: Vec<CellFailure>,
}

impl ScanOutcome {
    pub fn summary(&self) -> ScanSummary {
        let mut failures = BTreeMap::new();
        for f in &self.failures {
            *failures.entry(f.kind).or_insert(0) += 1;
        }
        let mut masses = BTreeMap::new();
        for sol in &self.solutions {
            for (name, m) in [("m2", sol.masses.m2), ("m3", sol.masses.m3), ("m4", sol.masses.m4)] {
                let range = masses.entry(name.to_string()).or_insert(MassRange { min: m, max: m });
                range.min = range.min.min(m);
                range.max = range.max.max(m);
            }
        }
        let gt = self.solutions.iter().filter(|s| s.masses.m1 > s.masses.m2).count();
        let lt = self.solutions.iter().filter(|s| s.masses.m1 < s.masses.m2).count();
        let cells = self.config.c_range.steps * self.config.d_range.steps;
        let roots = self.solutions.len() + self.failures.iter().filter(|f| f.b.is_some()).count();
        let note = self.solutions.is_empty().then(|| {
            if roots == 0 {
                "no grid cell admits a root of the relation inside the ordering bracket".to_string()
            } else {
                format!("{roots} roots found but none passed the acceptance gates")
            }
        });
        ScanSummary {
            a_fixed: self.config.a_fixed,
            cells,
            roots,
            accepted: self.solutions.len(),
            failures,
            m1_greater_than_m2: gt,
            m1_less_than_m2: lt,
            masses,
            note,
        }
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{CSV_HEADER}")?;
        for sol in &self.solutions {
            writeln!(out, "{}", csv_row(sol))?;
        }
        Ok(())
    }
}

/// One CSV row; floats use the shortest round-trip representation.
pub fn csv_row(sol: &CCSolution) -> String {
    let r = &sol.distances;
    let m = &sol.masses;
    let mu = &sol.multipliers;
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{}",
        r.r34, r.r14, r.r23, r.r13, r.r24, m.m2, m.m3, m.m4, mu.lambda, mu.sigma, sol.shape.tag, sol.in_omega
    )
}

type CellResult = (Vec<CCSolution>, Vec<CellFailure>);

fn classify_gates(gates: &[Gate], in_omega: bool) -> FailureKind {
    if !in_omega {
        FailureKind::OutsideOmega
    } else if gates.contains(&Gate::PositiveMasses) {
        FailureKind::NonPositiveMasses
    } else {
        FailureKind::ResidualGate
    }
}

fn solve_cell(cfg: &ScanConfig, c: f64, d: f64) -> CellResult {
    let a = cfg.a_fixed;
    let fail = |b, kind, detail: String| CellFailure { c, d, b, kind, detail };
    let roots = match solve_b(a, c, d, cfg) {
        Ok(root) => vec![root],
        Err(SolveError::MultipleRoots { roots }) => roots,
        Err(err) => {
            let kind = match err {
                SolveError::ParallelogramDegenerate => FailureKind::Parallelogram,
                SolveError::InfeasibleGeometry { .. } => FailureKind::InfeasibleGeometry,
                SolveError::NoSignChange { .. } => FailureKind::NoSignChange,
                _ => FailureKind::InvalidCell,
            };
            return (vec![], vec![fail(None, kind, err.to_string())]);
        }
    };

    let mut accepted = Vec::new();
    let mut failures = Vec::new();
    for root in roots {
        let b = Some(root.b);
        let Some(r) = trapezoid_distances(a, root.b, c, d) else {
            failures.push(fail(b, FailureKind::InfeasibleGeometry, "diagonals undefined at root".into()));
            continue;
        };
        match CCSolution::evaluate(&r, &cfg.tolerances) {
            Ok(sol) => {
                let gates = sol.gate_failures(&cfg.tolerances);
                if gates.is_empty() && sol.in_omega {
                    accepted.push(sol);
                } else {
                    let detail = if sol.in_omega { format!("{gates:?}") } else { "outside ordering region".into() };
                    failures.push(fail(b, classify_gates(&gates, sol.in_omega), detail));
                }
            }
            Err(err) => failures.push(fail(b, FailureKind::Evaluation, err.to_string())),
        }
    }
    (accepted, failures)
}

fn run(cfg: &ScanConfig) -> ScanOutcome {
    let cs = cfg.c_range.values();
    let ds = cfg.d_range.values();
    let cells: Vec<(f64, f64)> = cs.iter().flat_map(|&c| ds.iter().map(move |&d| (c, d))).collect();
    let results: Vec<CellResult> = cells.par_iter().map(|&(c, d)| solve_cell(cfg, c, d)).collect();
    let mut solutions = Vec::new();
    let mut failures = Vec::new();
    for (acc, fails) in results {
        solutions.extend(acc);
        failures.extend(fails);
    }
    ScanOutcome { config: *cfg, solutions, failures }
}

/// Solves every `(c, d)` cell of the grid on the global thread pool.
///
/// Output is ordered by grid index (`c` major, then `d`, then `b`) whatever
/// the execution order.
pub fn scan_family(cfg: &ScanConfig) -> Result<ScanOutcome, SolveError> {
    cfg.validate()?;
    Ok(run(cfg))
}

/// [`scan_family`] on a dedicated pool of `threads` workers.
pub fn scan_family_with_threads(cfg: &ScanConfig, threads: usize) -> Result<ScanOutcome, SolveError> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| SolveError::InvalidInput(format!("thread pool: {e}")))?;
    Ok(pool.install(|| run(cfg)))
}
