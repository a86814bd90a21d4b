//! Finding trapezoidal central configurations.
//!
//! The base `a = r12` fixes the scale. For given base `c = r34` and leg
//! `d = r14` the diagonals are explicit in the remaining leg `b = r23`, so
//! the sextic relation becomes a scalar equation in `b` ([`solve_b`]).
//! [`scan_family`] sweeps a `(c, d)` grid, [`solve_equal_mass`] moves along
//! the family to equalize two masses, and [`rhombus_branch`] covers the
//! parallelogram case where the diagonal formulas are singular.

mod equal_mass;
mod rhombus;
mod root;
mod scan;

use serde::Serialize;

use crate::ccsystem::{CcError, Gate, Tolerances};
use crate::geometry::GeometryError;

pub use equal_mass::{solve_equal_mass, BoundaryWitness, EqualMassProblem, EqualMassSolution, MassPair};
pub use rhombus::{rhombus_branch, rhombus_distances, rhombus_positivity_limit, RhombusMasses};
pub use root::{find_roots_in, omega_bracket, relation_in_b, solve_b, trapezoid_distances, RootOptions, RootResult};
pub use scan::{scan_family, scan_family_with_threads, CellFailure, FailureKind, ScanOutcome, ScanSummary, CSV_HEADER};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SolveError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("bases are equal: parallelogram configurations go through the rhombus branch")]
    ParallelogramDegenerate,
    #[error("relation has no sign change on [{}, {}]", .bracket.0, .bracket.1)]
    NoSignChange { bracket: (f64, f64) },
    #[error("sides cannot close a trapezoid inside [{}, {}]", .bracket.0, .bracket.1)]
    InfeasibleGeometry { bracket: (f64, f64) },
    #[error("{} roots in the leg bracket", .roots.len())]
    MultipleRoots { roots: Vec<RootResult> },
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("iteration left the ordering region; closest admissible point has base gap {:e}", .witness.base_gap)]
    ConvergedOutsideOmega { witness: Box<BoundaryWitness> },
    #[error("no positive masses for diagonal ratio {diag_ratio} (m2/m1 = {mass_ratio})")]
    NoPositiveMasses { diag_ratio: f64, mass_ratio: f64 },
    #[error("solution rejected by gates {gates:?}")]
    Rejected { gates: Vec<Gate> },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Cc(#[from] CcError),
}

/// One axis of the scan grid: `steps` equally spaced values from `min` to
/// `max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridAxis {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl GridAxis {
    pub fn new(min: f64, max: f64, steps: usize) -> Self {
        Self { min, max, steps }
    }

    pub fn value(&self, k: usize) -> f64 {
        if self.steps <= 1 {
            self.min
        } else if k + 1 == self.steps {
            self.max
        } else {
            self.min + (self.max - self.min) * k as f64 / (self.steps - 1) as f64
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.steps).map(|k| self.value(k)).collect()
    }
}

/// Parameters of a `(c, d)` family scan at fixed base `a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanConfig {
    pub a_fixed: f64,
    pub c_range: GridAxis,
    pub d_range: GridAxis,
    /// Panels used to isolate sign changes in `b`.
    pub panels: usize,
    /// Relative bisection width for `b`.
    pub tol_root: f64,
    pub tolerances: Tolerances,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            a_fixed: 8.0,
            c_range: GridAxis::new(0.5, 7.9, 50),
            d_range: GridAxis::new(7.0, 8.0, 50),
            panels: 64,
            tol_root: 1e-13,
            tolerances: Tolerances::default(),
        }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<(), SolveError> {
        let bad = |msg: String| Err(SolveError::InvalidInput(msg));
        if !(self.a_fixed.is_finite() && self.a_fixed > 0.0) {
            return bad(format!("a_fixed = {} must be positive", self.a_fixed));
        }
        for (name, axis) in [("c", &self.c_range), ("d", &self.d_range)] {
            if !(axis.min > 0.0 && axis.max.is_finite() && axis.min <= axis.max) {
                return bad(format!("{name} range [{}, {}] must be positive and ordered", axis.min, axis.max));
            }
            if axis.steps == 0 {
                return bad(format!("{name}_steps must be at least 1"));
            }
        }
        if self.c_range.max >= self.a_fixed {
            return bad(format!("c_max = {} must stay below a_fixed = {}", self.c_range.max, self.a_fixed));
        }
        if self.panels == 0 {
            return bad("panels must be at least 1".into());
        }
        if !(self.tol_root > 0.0 && self.tol_root < 1.0) {
            return bad(format!("tol_root = {} must lie in (0, 1)", self.tol_root));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_hits_both_ends() {
        let axis = GridAxis::new(1.0, 2.0, 3);
        assert_eq!(axis.values(), vec![1.0, 1.5, 2.0]);
        assert_eq!(GridAxis::new(4.0, 9.0, 1).values(), vec![4.0]);
    }

    #[test]
    fn config_validation() {
        assert!(ScanConfig::default().validate().is_ok());
        let mut cfg = ScanConfig::default();
        cfg.c_range.max = 8.0;
        assert!(cfg.validate().is_err());
        let mut cfg = ScanConfig::default();
        cfg.d_range.steps = 0;
        assert!(cfg.validate().is_err());
        let cfg = ScanConfig { c_range: GridAxis::new(3.0, 2.0, 5), ..Default::default() };
        assert!(cfg.validate().is_err());
    }
}
