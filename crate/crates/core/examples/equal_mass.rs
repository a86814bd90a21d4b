//! Balancing two masses by moving the short base and the right leg.
//!
//! Equal masses 3 and 4 force an isosceles trapezoid, equal opposite masses
//! only occur at the square, and equal masses 1 and 2 admit asymmetric
//! solutions: pinning the height to 7 picks out one of them.

use trapcc::golden;
use trapcc::solver::{solve_equal_mass, EqualMassProblem, MassPair, SolveError};

fn report(label: &str, problem: EqualMassProblem) {
    match solve_equal_mass(&problem) {
        Ok(s) => {
            let r = s.solution.distances;
            let m = s.solution.masses;
            println!("{label}: converged in {} steps, shape {}", s.iterations, s.solution.shape.tag);
            println!("  {r}");
            println!("  masses {:.12} {:.12} {:.12} {:.12}", m.m1, m.m2, m.m3, m.m4);
            println!("  |r14 - r23| = {:.2e}, |r13 - r24| = {:.2e}", (r.r14 - r.r23).abs(), (r.r13 - r.r24).abs());
        }
        Err(SolveError::ConvergedOutsideOmega { witness }) => {
            println!("{label}: no interior solution, stopped after {} steps at", witness.iterations);
            println!("  {}", witness.distances);
            println!("  side spread {:.1e}, mass gap {:.1e}", witness.side_spread, witness.mass_gap);
        }
        Err(e) => println!("{label}: {e}"),
    }
}

fn main() {
    let pair = |i, j| MassPair::new(i, j).unwrap();
    report("m3 = m4", EqualMassProblem::new(pair(3, 4), (4.4, 7.6)));
    report("m1 = m3", EqualMassProblem::new(pair(1, 3), (4.4, 7.6)));
    report("m2 = m4", EqualMassProblem::new(pair(2, 4), (4.4, 7.6)));
    report("m1 = m2, h = 7", EqualMassProblem::new(pair(1, 2), (4.4, 7.6)).with_height(7.0));
    println!("reference E3: {}", golden::e3());
}
