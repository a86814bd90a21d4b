use serde::Serialize;

use super::report::{TheoremReport, Witness};
use crate::ccsystem::{grad_parallel_check, CCSolution, Tolerances};
use crate::geometry::{classify_shape, DistanceVector, ShapeTag};
use crate::solver::{rhombus_branch, solve_equal_mass, EqualMassProblem, MassPair, SolveError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VerifyError {
    #[error("lengths must be positive and non-decreasing, got {0:?}")]
    Unordered([f64; 4]),
    #[error("x1 = x4 makes the ratio's denominator vanish")]
    DegenerateDenominator,
}

/// Checks `m3 ≤ m4 ≤ m2` and `m3 ≤ m1` on every solution, each up to `tol`.
pub fn verify_mass_ordering(corpus: &[CCSolution], tol: f64) -> TheoremReport {
    let mut report = TheoremReport::new("mass ordering m3 <= m4 <= m2, m3 <= m1");
    let (mut heavier, mut lighter) = (0, 0);
    for (k, sol) in corpus.iter().enumerate() {
        let [m1, m2, m3, m4] = sol.masses.to_array();
        let checks = [("m3 <= m4", m4 - m3), ("m4 <= m2", m2 - m4), ("m3 <= m1", m1 - m3)];
        let worst = checks.iter().map(|(_, s)| *s).fold(f64::INFINITY, f64::min);
        report.observe(worst);
        for (name, slack) in checks {
            if slack < -tol {
                report.fail(format!("#{k}"), format!("{name} violated"), slack, Some(sol.into()));
            }
        }
        if m1 > m2 {
            heavier += 1;
        } else if m1 < m2 {
            lighter += 1;
        }
    }
    report.note(format!("m1 > m2 in {heavier} cases, m1 < m2 in {lighter}"));
    report
}

fn is_parallelogram(tag: ShapeTag) -> bool {
    matches!(tag, ShapeTag::Parallelogram | ShapeTag::Rhombus | ShapeTag::Square)
}

/// `r23²/r14² ≥ r34/r12` on trapezoids of the ordering region, with
/// equality exactly for parallelograms (slack within `tol`, shape naming
/// with relative tolerance `classify_tol`).
pub fn verify_lemma_r3412(corpus: &[DistanceVector], tol: f64, classify_tol: f64) -> TheoremReport {
    let mut report = TheoremReport::new("r23^2/r14^2 >= r34/r12");
    for (k, r) in corpus.iter().enumerate() {
        let slack = (r.r23 * r.r23) / (r.r14 * r.r14) - r.r34 / r.r12;
        report.observe(slack);
        if slack < -tol {
            report.fail(format!("#{k}"), "inequality violated", slack, Some(Witness::Distances(*r)));
        }
        let equal = slack.abs() <= tol;
        let parallelogram = is_parallelogram(classify_shape(r, classify_tol).tag);
        if equal != parallelogram {
            let detail = if equal { "equality without a parallelogram" } else { "parallelogram without equality" };
            report.fail(format!("#{k}"), detail, slack, Some(Witness::Distances(*r)));
        }
    }
    report
}

/// `(φ(x2) - φ(x3)) / (φ(x1) - φ(x4))` for `φ(x) = x⁻³` and
/// `0 < x1 ≤ x2 ≤ x3 ≤ x4`.
pub fn decreasing_ratio(x: [f64; 4]) -> Result<f64, VerifyError> {
    if !(x[0] > 0.0 && x[0] <= x[1] && x[1] <= x[2] && x[2] <= x[3]) {
        return Err(VerifyError::Unordered(x));
    }
    if x[0] == x[3] {
        return Err(VerifyError::DegenerateDenominator);
    }
    let phi = |t: f64| t.powi(-3);
    Ok((phi(x[1]) - phi(x[2])) / (phi(x[0]) - phi(x[3])))
}

/// The ratio bound `≤ 1 + 1e-14` on `(r23, r14, r24, r13)` of each member,
/// which is the ordering of the four lengths inside the region.
pub fn verify_decreasing_ratio(corpus: &[DistanceVector]) -> TheoremReport {
    let mut report = TheoremReport::new("decreasing ratio (phi(x2)-phi(x3))/(phi(x1)-phi(x4)) <= 1");
    for (k, r) in corpus.iter().enumerate() {
        let x = [r.r23, r.r14, r.r24, r.r13];
        match decreasing_ratio(x) {
            Ok(ratio) => {
                let slack = 1.0 - ratio;
                report.observe(slack);
                if slack < -1e-14 {
                    report.fail(format!("#{k}"), format!("ratio {ratio}"), slack, Some(Witness::Lengths(x)));
                }
            }
            Err(err) => {
                report.observe(0.0);
                report.fail(format!("#{k}"), err.to_string(), 0.0, Some(Witness::Lengths(x)));
            }
        }
    }
    report
}

/// `r13² ≥ r24²`, with equality only for isosceles or parallelogram shapes.
pub fn verify_diagonal_gap(corpus: &[DistanceVector], tol: f64) -> TheoremReport {
    let mut report = TheoremReport::new("r13^2 - r24^2 >= 0");
    for (k, r) in corpus.iter().enumerate() {
        let slack = (r.r13 * r.r13 - r.r24 * r.r24) / (r.r13 * r.r13);
        report.observe(slack);
        if slack < -tol {
            report.fail(format!("#{k}"), "diagonal ordering violated", slack, Some(Witness::Distances(*r)));
        } else if slack <= tol {
            let tag = classify_shape(r, 1e-9).tag;
            if !(tag == ShapeTag::IsoscelesTrapezoid || is_parallelogram(tag)) {
                report.fail(
                    format!("#{k}"),
                    format!("equal diagonals on a {tag}"),
                    slack,
                    Some(Witness::Distances(*r)),
                );
            }
        }
    }
    report
}

/// `∇H ∥ ∇F` with factor `8h²`, within `tol` componentwise.
pub fn verify_gradient_identity(corpus: &[DistanceVector], tol: f64) -> TheoremReport {
    let mut report = TheoremReport::new("grad H = 8 h^2 grad F on trapezoids");
    let mut worst: f64 = 0.0;
    for (k, r) in corpus.iter().enumerate() {
        match grad_parallel_check(r) {
            Ok(check) => {
                worst = worst.max(check.max_dev);
                report.observe(tol - check.max_dev);
                if check.max_dev > tol {
                    report.fail(
                        format!("#{k}"),
                        format!("deviation {:e}", check.max_dev),
                        tol - check.max_dev,
                        Some(Witness::Distances(*r)),
                    );
                }
            }
            Err(err) => {
                report.observe(0.0);
                report.fail(format!("#{k}"), err.to_string(), 0.0, Some(Witness::Distances(*r)));
            }
        }
    }
    report.note(format!("largest deviation {worst:e}"));
    report
}

/// Tolerances for [`verify_symmetry_propositions`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymmetryTolerances {
    /// Interior solutions: length gaps relative to `a`, mass gaps absolute.
    pub interior: f64,
    /// Boundary witnesses, which the continuation only approaches.
    pub boundary: f64,
}

impl Default for SymmetryTolerances {
    fn default() -> Self {
        Self { interior: 1e-8, boundary: 1e-6 }
    }
}

const EQUAL_MASS_STARTS: [(f64, f64); 3] = [(4.4, 7.6), (6.0, 7.9), (3.0, 7.9)];

/// Runs the equal-mass solver and the rhombus branch and checks the
/// geometric conclusions:
///
/// * `m3 = m4` forces an isosceles trapezoid with `m1 = m2`;
/// * `m1 = m3` or `m2 = m4` has no interior solution and runs onto a rhombus
///   with the other pair equal;
/// * rhombus configurations carry `m1 = m3`, `m2 = m4`;
/// * isosceles central configurations carry `m1 = m2`, `m3 = m4`;
/// * `m1 = m2` alone does not force symmetry (asymmetric witness at height 7).
pub fn verify_symmetry_propositions(tol: &SymmetryTolerances) -> TheoremReport {
    let mut report = TheoremReport::new("symmetry propositions");
    let a = 8.0;
    let cc_tol = Tolerances::default();

    for init in EQUAL_MASS_STARTS {
        let case = format!("m3 = m4 from {init:?}");
        match solve_equal_mass(&EqualMassProblem::new(MassPair::new(3, 4).expect("valid pair"), init)) {
            Ok(sol) => {
                let r = sol.solution.distances;
                let m = sol.solution.masses;
                let gaps = [
                    ("|r14 - r23|/a", (r.r14 - r.r23).abs() / a),
                    ("|r13 - r24|/a", (r.r13 - r.r24).abs() / a),
                    ("|m1 - m2|", (m.m1 - m.m2).abs()),
                ];
                check_gaps(&mut report, &case, &gaps, tol.interior, &sol.solution);
                // Converse: the isosceles solution has both pairs balanced.
                let (m1m2, m3m4) = ((m.m1 - m.m2).abs(), (m.m3 - m.m4).abs());
                report.observe(tol.interior - m1m2.max(m3m4));
                if m1m2.max(m3m4) > tol.interior {
                    report.fail(
                        format!("{case} (converse)"),
                        "isosceles c.c. with unequal masses",
                        -m1m2.max(m3m4),
                        Some((&sol.solution).into()),
                    );
                }
            }
            Err(err) => report.solver_failures.push(format!("{case}: {err}")),
        }
    }

    for (i, j, other) in [(1, 3, (2, 4)), (2, 4, (1, 3))] {
        let pair = MassPair::new(i, j).expect("valid pair");
        let case = format!("m{i} = m{j}");
        match solve_equal_mass(&EqualMassProblem::new(pair, EQUAL_MASS_STARTS[0])) {
            Err(SolveError::ConvergedOutsideOmega { witness }) => {
                let m = witness.masses;
                let gaps = [
                    ("side spread/a", witness.side_spread),
                    ("mass gap", witness.mass_gap),
                    ("other pair gap", (m.get(other.0) - m.get(other.1)).abs() / (m.get(other.0) + m.get(other.1))),
                ];
                for (name, gap) in gaps {
                    report.observe(tol.boundary - gap);
                    if gap > tol.boundary {
                        report.fail(
                            &case,
                            format!("{name} = {gap:e} at the boundary witness"),
                            tol.boundary - gap,
                            Some(Witness::Distances(witness.distances)),
                        );
                    }
                }
                report.note(format!(
                    "{case}: no interior solution; iterates reach the rhombus boundary (side spread {:.1e}, base gap {:.1e})",
                    witness.side_spread, witness.base_gap
                ));
            }
            Ok(sol) => {
                report.observe(-1.0);
                report.fail(&case, "interior solution found", -1.0, Some((&sol.solution).into()));
            }
            Err(err) => report.solver_failures.push(format!("{case}: {err}")),
        }
    }

    for rho in [1.0, 1.2, 1.5, 1.7] {
        let case = format!("rhombus ratio {rho}");
        match rhombus_branch(rho, a, &cc_tol) {
            Ok((sol, _)) => match CCSolution::evaluate(&sol.distances, &cc_tol) {
                // Masses from the generic ratio formulas, not the closed form.
                Ok(generic) => {
                    let m = generic.masses;
                    let gaps = [("|m1 - m3|", (m.m1 - m.m3).abs()), ("|m2 - m4|", (m.m2 - m.m4).abs() / m.m2)];
                    check_gaps(&mut report, &case, &gaps, tol.interior, &generic);
                }
                Err(err) => report.solver_failures.push(format!("{case}: {err}")),
            },
            Err(err) => report.solver_failures.push(format!("{case}: {err}")),
        }
    }

    let case = "m1 = m2 at height 7";
    let problem = EqualMassProblem::new(MassPair::new(1, 2).expect("valid pair"), (4.4, 7.6)).with_height(7.0);
    match solve_equal_mass(&problem) {
        Ok(sol) => {
            let r = sol.solution.distances;
            let asym = (r.r14 - r.r23).abs();
            report.observe(asym - 0.5);
            if asym <= 0.5 {
                report.fail(
                    case,
                    format!("expected an asymmetric witness, |r14 - r23| = {asym}"),
                    asym - 0.5,
                    Some((&sol.solution).into()),
                );
            } else {
                report.note(format!(
                    "{case}: asymmetric witness with |r14 - r23| = {asym:.6}, shape {}",
                    sol.solution.shape.tag
                ));
            }
        }
        Err(err) => report.solver_failures.push(format!("{case}: {err}")),
    }
    report
}

fn check_gaps(report: &mut TheoremReport, case: &str, gaps: &[(&str, f64)], tol: f64, sol: &CCSolution) {
    for &(name, gap) in gaps {
        report.observe(tol - gap);
        if gap > tol {
            report.fail(case, format!("{name} = {gap:e}"), tol - gap, Some(sol.into()));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden;
    use crate::solver::rhombus_distances;

    fn solutions() -> Vec<CCSolution> {
        [golden::e1(), golden::e2(), golden::e3()]
            .iter()
            .map(|r| CCSolution::evaluate(r, &Tolerances::default()).unwrap())
            .collect()
    }

    #[test]
    fn golden_mass_ordering() {
        let report = verify_mass_ordering(&solutions(), 1e-10);
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.cases_checked, 3);
        let report = verify_mass_ordering(&solutions()[..2], 1e-10);
        assert_eq!(report.notes[0], "m1 > m2 in 1 cases, m1 < m2 in 1");
    }

    #[test]
    fn ordering_violation_is_reported_with_witness() {
        let mut sols = solutions();
        sols[0].masses.m3 = 10.0;
        let report = verify_mass_ordering(&sols, 1e-10);
        assert!(!report.passed());
        assert!(matches!(report.failures[0].witness, Some(Witness::Solution(_))));
        assert!(report.max_slack_violation < -1.0);
    }

    #[test]
    fn lemma_on_golden_and_rhombus() {
        let report = verify_lemma_r3412(&[golden::e1(), golden::e2()], 1e-12, 1e-9);
        assert!(report.passed(), "{report:?}");
        assert!(report.max_slack_violation == 0.0);
        let rhombus = rhombus_distances(1.3, 2.0).unwrap();
        let report = verify_lemma_r3412(&[rhombus], 1e-12, 1e-9);
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn ratio_examples() {
        let r = decreasing_ratio([1.0, 2.0, 3.0, 4.0]).unwrap();
        let want = (1.0 / 8.0 - 1.0 / 27.0) / (1.0 - 1.0 / 64.0);
        assert!((r - want).abs() < 1e-16);
        assert!((r - 0.089_359_200_470_311_6).abs() < 1e-15);
        assert_eq!(decreasing_ratio([1.0, 1.0, 1.0, 2.0]).unwrap(), 0.0);
        assert_eq!(decreasing_ratio([2.0, 2.0, 2.0, 2.0]), Err(VerifyError::DegenerateDenominator));
        assert!(matches!(decreasing_ratio([3.0, 2.0, 1.0, 4.0]), Err(VerifyError::Unordered(_))));
    }

    #[test]
    fn ratio_on_golden_is_mass_ratio() {
        for sol in solutions() {
            let r = sol.distances;
            let ratio = decreasing_ratio([r.r23, r.r14, r.r24, r.r13]).unwrap();
            let m34 = sol.masses.m3 / sol.masses.m4;
            assert!((ratio - m34).abs() / m34 < 1e-9);
            assert!(ratio <= 1.0);
        }
    }

    #[test]
    fn diagonal_gap_on_golden() {
        let iso = crate::solver::trapezoid_distances(8.0, 7.0, 5.0, 7.0).unwrap();
        let report = verify_diagonal_gap(&[golden::e1(), golden::e2(), golden::e3(), iso], 1e-12);
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn gradient_identity_on_golden() {
        let report = verify_gradient_identity(&[golden::e1(), golden::square()], 1e-6);
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn symmetry_propositions_hold() {
        let report = verify_symmetry_propositions(&SymmetryTolerances::default());
        assert!(report.passed(), "{report:#?}");
        assert!(report.notes.iter().any(|n| n.contains("asymmetric witness")));
        assert!(report.notes.iter().filter(|n| n.contains("rhombus boundary")).count() == 2);
    }
}
