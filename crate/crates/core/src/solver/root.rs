use serde::Serialize;

use super::{ScanConfig, SolveError};
use crate::ccsystem::relation_residual;
use crate::geometry::{DistanceVector, TrapezoidShape, PARALLELOGRAM_REL_GAP};

/// A refined root of the relation in the leg length `b = r23`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootResult {
    pub b: f64,
    pub iterations: usize,
    /// `|normalized relation residual|` at `b`.
    pub residual_at_root: f64,
    /// Sign-change bracket the root was refined from.
    pub bracket_used: (f64, f64),
}

/// Settings for isolating and refining roots in `b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootOptions {
    /// Number of equal panels scanned for sign changes.
    pub panels: usize,
    /// Bisection stops once the bracket is narrower than `rel_tol · b`.
    pub rel_tol: f64,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self { panels: 64, rel_tol: 1e-13 }
    }
}

impl From<&ScanConfig> for RootOptions {
    fn from(cfg: &ScanConfig) -> Self {
        Self { panels: cfg.panels, rel_tol: cfg.tol_root }
    }
}

/// Assembles the trapezoid `(a, b, c, d)` with derived diagonals.
pub fn trapezoid_distances(a: f64, b: f64, c: f64, d: f64) -> Option<DistanceVector> {
    TrapezoidShape::new(a, b, c, d).ok()?.distances().ok()
}

/// Normalized relation residual of the trapezoid `(a, b, c, d)`, or `None`
/// where the four sides do not close a trapezoid.
pub fn relation_in_b(a: f64, b: f64, c: f64, d: f64) -> Option<f64> {
    trapezoid_distances(a, b, c, d).map(|r| relation_residual(&r).normalized)
}

/// Leg interval compatible with the ordering region for fixed `a > c` and
/// `d`: `c ≤ b ≤ d`, the legs must span the base gap (`b > d - (a - c)`),
/// and the short diagonal must exceed the base (`r24 > r12`, equivalently
/// `b² > (a - c)² + c d² / a`).
pub fn omega_bracket(a: f64, c: f64, d: f64) -> (f64, f64) {
    let gap = a - c;
    let lo = c.max(d - gap).max((gap * gap + c * d * d / a).sqrt());
    (lo, d)
}

fn check_inputs(a: f64, c: f64, d: f64) -> Result<(), SolveError> {
    for (name, v) in [("a", a), ("c", c), ("d", d)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(SolveError::InvalidInput(format!("{name} = {v} must be positive")));
        }
    }
    if (a - c).abs() <= PARALLELOGRAM_REL_GAP * a {
        return Err(SolveError::ParallelogramDegenerate);
    }
    if c > a {
        return Err(SolveError::InvalidInput(format!("base c = {c} exceeds base a = {a}")));
    }
    Ok(())
}

/// Solves the relation for the leg `b` on the ordering bracket.
///
/// Exactly one root is expected; several sign changes produce
/// [`SolveError::MultipleRoots`] carrying every refined root.
pub fn solve_b(a: f64, c: f64, d: f64, cfg: &ScanConfig) -> Result<RootResult, SolveError> {
    check_inputs(a, c, d)?;
    if d > a * (1.0 + 1e-12) {
        return Err(SolveError::InvalidInput(format!("leg d = {d} exceeds base a = {a}")));
    }
    let mut roots = find_roots_in(a, c, d, omega_bracket(a, c, d), &RootOptions::from(cfg))?;
    match roots.len() {
        1 => Ok(roots.remove(0)),
        _ => Err(SolveError::MultipleRoots { roots }),
    }
}

/// Every root of the relation in `b` inside `bracket`, in increasing order.
pub fn find_roots_in(
    a: f64,
    c: f64,
    d: f64,
    bracket: (f64, f64),
    opts: &RootOptions,
) -> Result<Vec<RootResult>, SolveError> {
    check_inputs(a, c, d)?;
    let (lo, hi) = bracket;
    if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) {
        return Err(SolveError::InfeasibleGeometry { bracket });
    }
    let g = |b: f64| relation_in_b(a, b, c, d);
    let panels = opts.panels.max(1);
    let samples: Vec<(f64, Option<f64>)> = (0..=panels)
        .map(|k| {
            let b = if k == panels { hi } else { lo + (hi - lo) * k as f64 / panels as f64 };
            (b, g(b))
        })
        .collect();
    if samples.iter().all(|(_, v)| v.is_none()) {
        return Err(SolveError::InfeasibleGeometry { bracket });
    }

    let mut roots = Vec::new();
    for (k, &(b, v)) in samples.iter().enumerate() {
        if v == Some(0.0) {
            roots.push(RootResult { b, iterations: 0, residual_at_root: 0.0, bracket_used: (b, b) });
            continue;
        }
        let Some(&(b1, Some(v1))) = samples.get(k + 1) else { continue };
        let Some(v0) = v else { continue };
        if v1 != 0.0 && v0.signum() != v1.signum() {
            roots.push(refine(&g, (b, v0), (b1, v1), opts.rel_tol)?);
        }
    }
    if roots.is_empty() {
        return Err(SolveError::NoSignChange { bracket });
    }
    Ok(roots)
}

/// Bisection down to `rel_tol`, then one Newton step that is kept only if
/// it stays inside the final bracket and lowers the residual.
fn refine(
    g: &impl Fn(f64) -> Option<f64>,
    (mut x0, mut g0): (f64, f64),
    (mut x1, _): (f64, f64),
    rel_tol: f64,
) -> Result<RootResult, SolveError> {
    let bracket_used = (x0, x1);
    let mut iterations = 0;
    while (x1 - x0) > rel_tol * x0.abs().max(x1.abs()) && iterations < 200 {
        let mid = 0.5 * (x0 + x1);
        if mid <= x0 || mid >= x1 {
            break;
        }
        iterations += 1;
        let gm = g(mid).ok_or(SolveError::InfeasibleGeometry { bracket: bracket_used })?;
        if gm == 0.0 {
            return Ok(RootResult { b: mid, iterations, residual_at_root: 0.0, bracket_used });
        }
        if gm.signum() == g0.signum() {
            x0 = mid;
            g0 = gm;
        } else {
            x1 = mid;
        }
    }

    let mut b = 0.5 * (x0 + x1);
    let mut gb = g(b).ok_or(SolveError::InfeasibleGeometry { bracket: bracket_used })?;
    let step = 1e-7 * b;
    if let (Some(gp), Some(gm)) = (g(b + step), g(b - step)) {
        let slope = (gp - gm) / (2.0 * step);
        if slope != 0.0 {
            let candidate = b - gb / slope;
            if candidate >= x0 && candidate <= x1 {
                if let Some(gc) = g(candidate) {
                    iterations += 1;
                    if gc.abs() < gb.abs() {
                        b = candidate;
                        gb = gc;
                    }
                }
            }
        }
    }
    Ok(RootResult { b, iterations, residual_at_root: gb.abs(), bracket_used })
}
