use serde::Serialize;

use super::root::{find_roots_in, omega_bracket, relation_in_b, trapezoid_distances, RootOptions};
use super::SolveError;
use crate::ccsystem::{mass_ratios, CCSolution, MassVector, Tolerances};
use crate::geometry::{height, DistanceVector, PARALLELOGRAM_REL_GAP};
use crate::verify::check_omega;

/// Bodies `(i, j)` whose masses are to be equal, `1 ≤ i < j ≤ 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MassPair(usize, usize);

impl MassPair {
    pub fn new(i: usize, j: usize) -> Result<Self, SolveError> {
        let (i, j) = (i.min(j), i.max(j));
        if i < 1 || j > 4 || i == j {
            return Err(SolveError::InvalidInput(format!("mass pair ({i}, {j}) must name two distinct bodies 1..4")));
        }
        Ok(Self(i, j))
    }

    pub fn i(&self) -> usize {
        self.0
    }

    pub fn j(&self) -> usize {
        self.1
    }
}

/// Setup for [`solve_equal_mass`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EqualMassProblem {
    pub pair: MassPair,
    /// Starting `(c, d)`.
    pub init: (f64, f64),
    pub a_fixed: f64,
    /// Pins the trapezoid height, turning the underdetermined one-equation
    /// problem into a square system. Without it each step is the minimum
    /// norm Newton step.
    pub height: Option<f64>,
    pub max_iter: usize,
    /// Target for `|m_i - m_j| / (m_i + m_j)` and the relative height error.
    pub residual_tol: f64,
    /// Relative base gap `(a - c) / a` below which the iteration is taken to
    /// have run onto the parallelogram boundary.
    pub boundary_gap: f64,
    pub tolerances: Tolerances,
}

impl EqualMassProblem {
    pub fn new(pair: MassPair, init: (f64, f64)) -> Self {
        Self {
            pair,
            init,
            a_fixed: 8.0,
            height: None,
            max_iter: 100,
            residual_tol: 1e-13,
            boundary_gap: 1e-7,
            tolerances: Tolerances::default(),
        }
    }

    pub fn with_height(self, h: f64) -> Self {
        Self { height: Some(h), ..self }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EqualMassSolution {
    pub solution: CCSolution,
    pub iterations: usize,
    /// `|m_i - m_j| / (m_i + m_j)` at the solution.
    pub mass_gap: f64,
}

/// Last admissible iterate when the equal-mass iteration runs out of the
/// region of proper trapezoids.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryWitness {
    pub distances: DistanceVector,
    pub masses: MassVector,
    /// `|a - c| / a`
    pub base_gap: f64,
    /// `|b - d| / a`
    pub leg_gap: f64,
    /// `(max side - min side) / a`
    pub side_spread: f64,
    pub mass_gap: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Point {
    c: f64,
    d: f64,
    b: f64,
    r: DistanceVector,
    masses: MassVector,
    res: [f64; 2],
}

impl Point {
    fn norm(&self) -> f64 {
        self.res[0].hypot(self.res[1])
    }
}

/// Ordering region up to the mirror image `r14 < r23`, which the
/// iteration may cross while approaching the isosceles curve.
fn admissible(r: &DistanceVector, band: f64) -> bool {
    check_omega(r, band).violations.iter().all(|v| v.name == "r14 >= r23" || v.name == "r23 >= r34")
}

struct Iteration<'a> {
    p: &'a EqualMassProblem,
}

impl Iteration<'_> {
    /// Leg `b` solving the relation at `(c, d)`: the root nearest `hint`, or
    /// for a cold start the Ω root closest to `d`.
    fn leg(&self, c: f64, d: f64, hint: Option<f64>) -> Option<f64> {
        let a = self.p.a_fixed;
        let gap = a - c;
        let opts = RootOptions { panels: 64, rel_tol: 1e-14 };
        match hint {
            Some(h) => {
                // Roots may leave [c, d] during the iteration (the isosceles
                // curve sits at b = d), so allow every leg that closes.
                let lo = (d - gap).max(1e-9 * a);
                let roots = find_roots_in(a, c, d, (lo, d + gap), &opts).ok()?;
                roots.into_iter().map(|r| r.b).min_by(|x, y| (x - h).abs().total_cmp(&(y - h).abs()))
            }
            None => {
                let roots = find_roots_in(a, c, d, omega_bracket(a, c, d), &opts).ok()?;
                roots.last().map(|r| r.b)
            }
        }
    }

    fn eval(&self, c: f64, d: f64, hint: Option<f64>) -> Option<Point> {
        let a = self.p.a_fixed;
        if !(c > 0.0 && d > 0.0 && c < a && (a - c) > PARALLELOGRAM_REL_GAP * a * 10.0) {
            return None;
        }
        let b = self.leg(c, d, hint)?;
        self.eval_at(c, d, b)
    }

    fn eval_at(&self, c: f64, d: f64, b: f64) -> Option<Point> {
        let a = self.p.a_fixed;
        let r = trapezoid_distances(a, b, c, d)?;
        let masses = mass_ratios(&r).ok()?;
        if !masses.all_positive() || !admissible(&r, self.p.tolerances.omega_band) {
            return None;
        }
        let (mi, mj) = (masses.get(self.p.pair.i()), masses.get(self.p.pair.j()));
        let gap = (mi - mj) / (mi + mj);
        let h_res = match self.p.height {
            Some(target) => (height(&r).ok()? - target) / a,
            None => 0.0,
        };
        (gap.is_finite() && h_res.is_finite()).then_some(Point { c, d, b, r, masses, res: [gap, h_res] })
    }

    /// Central-difference Jacobian of the residuals in `(c, d)`.
    fn jacobian(&self, x: &Point) -> Option<[[f64; 2]; 2]> {
        let step = 1e-7 * self.p.a_fixed;
        // One-sided where the other side leaves the admissible region.
        let col = |dc: f64, dd: f64| -> Option<[f64; 2]> {
            let plus = self.eval(x.c + dc, x.d + dd, Some(x.b));
            let minus = self.eval(x.c - dc, x.d - dd, Some(x.b));
            let (hi, lo, width) = match (plus, minus) {
                (Some(p), Some(m)) => (p, m, 2.0 * step),
                (Some(p), None) => (p, *x, step),
                (None, Some(m)) => (*x, m, step),
                (None, None) => return None,
            };
            Some([(hi.res[0] - lo.res[0]) / width, (hi.res[1] - lo.res[1]) / width])
        };
        let jc = col(step, 0.0)?;
        let jd = col(0.0, step)?;
        Some([[jc[0], jd[0]], [jc[1], jd[1]]])
    }

    fn newton_step(&self, x: &Point, j: &[[f64; 2]; 2]) -> Option<(f64, f64)> {
        if self.p.height.is_some() {
            let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
            if det == 0.0 || !det.is_finite() {
                return None;
            }
            let dc = -(x.res[0] * j[1][1] - x.res[1] * j[0][1]) / det;
            let dd = -(j[0][0] * x.res[1] - j[1][0] * x.res[0]) / det;
            Some((dc, dd))
        } else {
            let g = j[0];
            let n2 = g[0] * g[0] + g[1] * g[1];
            (n2 > 0.0).then(|| (-x.res[0] * g[0] / n2, -x.res[0] * g[1] / n2))
        }
    }

    /// Leg `d = b` of the isosceles trapezoid with base `c` that satisfies
    /// the relation, nearest `near`.
    fn isosceles_leg(&self, c: f64, near: f64) -> Option<f64> {
        let a = self.p.a_fixed;
        let g = |d: f64| relation_in_b(a, d, c, d);
        let panels = 256;
        let sample = |k: usize| c + (a - c) * k as f64 / panels as f64;
        let mut best: Option<f64> = None;
        for k in 0..panels {
            let (mut lo, mut hi) = (sample(k), sample(k + 1));
            let (Some(mut glo), Some(ghi)) = (g(lo), g(hi)) else { continue };
            if glo.signum() == ghi.signum() {
                continue;
            }
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let Some(gm) = g(mid) else { break };
                if gm.signum() == glo.signum() {
                    lo = mid;
                    glo = gm;
                } else {
                    hi = mid;
                }
            }
            let root = 0.5 * (lo + hi);
            if best.is_none_or(|b| (root - near).abs() < (b - near).abs()) {
                best = Some(root);
            }
        }
        best
    }

    /// When no interior point balances the pair, the residual decreases along
    /// the isosceles family towards the square. Halve the base gap along it
    /// while the residual keeps dropping.
    fn slide_along_isosceles(&self, mut x: Point, iterations: &mut usize) -> Point {
        let a = self.p.a_fixed;
        let mut shrink: f64 = 0.0;
        while (a - x.c) / a >= self.p.boundary_gap
            && x.norm() >= self.p.residual_tol
            && *iterations < 4 * self.p.max_iter
        {
            // The first pass only projects onto the isosceles family.
            let c = x.c + shrink * (a - x.c);
            let Some(y) = self.isosceles_leg(c, x.d).and_then(|d| self.eval_at(c, d, d)) else { break };
            let projecting = shrink == 0.0;
            shrink = 0.5;
            if !projecting && y.norm() >= x.norm() {
                break;
            }
            x = y;
            *iterations += 1;
        }
        x
    }

    fn witness(&self, x: &Point, iterations: usize) -> BoundaryWitness {
        let r = &x.r;
        let sides = [r.r12, r.r23, r.r34, r.r14];
        let max = sides.iter().copied().fold(f64::MIN, f64::max);
        let min = sides.iter().copied().fold(f64::MAX, f64::min);
        let a = self.p.a_fixed;
        BoundaryWitness {
            distances: *r,
            masses: x.masses,
            base_gap: (a - x.c).abs() / a,
            leg_gap: (x.b - x.d).abs() / a,
            side_spread: (max - min) / a,
            mass_gap: x.res[0].abs(),
            iterations,
        }
    }
}

/// Moves `(c, d)` until bodies `i` and `j` carry equal mass, re-solving the
/// relation for `b` at every evaluation.
///
/// Damped Newton with a central-difference Jacobian (step `1e-7 · a`) and
/// backtracking on the residual norm. If the iterates run onto the
/// parallelogram boundary the last admissible point is returned inside
/// [`SolveError::ConvergedOutsideOmega`].
pub fn solve_equal_mass(problem: &EqualMassProblem) -> Result<EqualMassSolution, SolveError> {
    let a = problem.a_fixed;
    let (c0, d0) = problem.init;
    if !(a.is_finite() && a > 0.0 && c0 > 0.0 && c0 < a && d0 > 0.0 && d0 <= a) {
        return Err(SolveError::InvalidInput(format!("start (c, d) = ({c0}, {d0}) is outside 0 < c < a, 0 < d <= a")));
    }
    let it = Iteration { p: problem };
    let mut x = it
        .eval(c0, d0, None)
        .ok_or_else(|| SolveError::InvalidInput(format!("no admissible leg at start (c, d) = ({c0}, {d0})")))?;

    let mut iterations = 0;
    let mut converged = x.norm() < problem.residual_tol;
    let mut stuck = false;
    while !converged && iterations < problem.max_iter {
        iterations += 1;
        let Some((dc, dd)) = it.jacobian(&x).and_then(|j| it.newton_step(&x, &j)) else {
            stuck = true;
            break;
        };
        let mut t = 1.0;
        let mut next = None;
        for _ in 0..40 {
            if let Some(y) = it.eval(x.c + t * dc, x.d + t * dd, Some(x.b)) {
                if y.norm() < x.norm() {
                    next = Some(y);
                    break;
                }
            }
            t *= 0.5;
        }
        let Some(y) = next else {
            stuck = true;
            break;
        };
        x = y;
        converged = x.norm() < problem.residual_tol;
        if (a - x.c) / a < problem.boundary_gap {
            stuck = true;
            break;
        }
    }

    if !converged && problem.height.is_none() {
        x = it.slide_along_isosceles(x, &mut iterations);
        converged = x.norm() < problem.residual_tol;
    }
    if (a - x.c) / a < problem.boundary_gap {
        return Err(SolveError::ConvergedOutsideOmega { witness: Box::new(it.witness(&x, iterations)) });
    }
    if stuck && !converged {
        return Err(SolveError::NoConvergence { iterations, residual: x.norm() });
    }
    if !converged {
        return Err(SolveError::NoConvergence { iterations, residual: x.norm() });
    }
    let solution = CCSolution::evaluate(&x.r, &problem.tolerances)?;
    if !solution.in_omega {
        return Err(SolveError::ConvergedOutsideOmega { witness: Box::new(it.witness(&x, iterations)) });
    }
    let gates = solution.gate_failures(&problem.tolerances);
    if !gates.is_empty() {
        return Err(SolveError::Rejected { gates });
    }
    Ok(EqualMassSolution { solution, iterations, mass_gap: x.res[0].abs() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden;

    #[test]
    fn pair_validation() {
        assert!(MassPair::new(0, 2).is_err());
        assert!(MassPair::new(3, 3).is_err());
        assert_eq!(MassPair::new(4, 3).unwrap(), MassPair(3, 4));
    }

    #[test]
    fn first_two_masses_with_height_gauge_reproduce_golden() {
        let problem = EqualMassProblem::new(MassPair::new(1, 2).unwrap(), (4.4, 7.6)).with_height(7.0);
        let sol = solve_equal_mass(&problem).unwrap();
        let e3 = golden::e3();
        for (got, want) in sol.solution.distances.to_array().iter().zip(e3.to_array()) {
            assert!((got - want).abs() / want < 1e-6, "{} vs {}", sol.solution.distances, e3);
        }
        assert!((sol.solution.distances.r14 - sol.solution.distances.r23).abs() > 0.5);
    }

    #[test]
    fn last_two_masses_force_isosceles() {
        for init in [(4.4, 7.6), (6.0, 7.9), (3.0, 7.9)] {
            let problem = EqualMassProblem::new(MassPair::new(3, 4).unwrap(), init);
            let sol = solve_equal_mass(&problem).unwrap();
            let r = sol.solution.distances;
            assert!((r.r14 - r.r23).abs() < 1e-8 * 8.0, "{init:?}: {r}");
            assert!((r.r13 - r.r24).abs() < 1e-8 * 8.0);
            assert!((sol.solution.masses.m1 - sol.solution.masses.m2).abs() < 1e-8);
        }
    }

    #[test]
    fn diagonal_pairs_run_onto_the_rhombus_boundary() {
        for (i, j) in [(1, 3), (2, 4)] {
            let problem = EqualMassProblem::new(MassPair::new(i, j).unwrap(), (4.4, 7.6));
            match solve_equal_mass(&problem) {
                Err(SolveError::ConvergedOutsideOmega { witness }) => {
                    assert!(witness.side_spread < 1e-5, "({i},{j}): {witness:?}");
                    assert!(witness.mass_gap < 1e-4);
                }
                other => panic!("({i},{j}): {other:?}"),
            }
        }
    }
}
