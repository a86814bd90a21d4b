//! Rhombus central configurations with masses (1, q, 1, q) as the diagonal
//! ratio grows, and the ratio at which q stops being positive.

use trapcc::ccsystem::Tolerances;
use trapcc::solver::{rhombus_branch, rhombus_positivity_limit, SolveError};

fn main() {
    let tol = Tolerances::default();
    println!("{:>6} {:>14} {:>14} {:>14}", "e/f", "q", "lambda", "sigma");
    for k in 0..=9 {
        let ratio = 1.0 + 0.1 * k as f64;
        match rhombus_branch(ratio, 1.0, &tol) {
            Ok((_, m)) => println!("{ratio:>6.2} {:>14.10} {:>14.10} {:>14.6e}", m.q, m.lambda, m.sigma),
            Err(SolveError::NoPositiveMasses { mass_ratio, .. }) => {
                println!("{ratio:>6.2} {mass_ratio:>14.10}  (not a mass vector)")
            }
            Err(e) => println!("{ratio:>6.2} {e}"),
        }
    }
    let limit = rhombus_positivity_limit(1e-12);
    println!("positive masses up to e/f = {limit:.12} (sqrt 3 = {:.12})", 3f64.sqrt());
}
