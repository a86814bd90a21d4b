//! Residuals, realizability and ordering checks for every named configuration.

use trapcc::ccsystem::{dziobek_residual, relation_residual};
use trapcc::geometry::{cayley_menger, classify_shape, diagonals_from_sides, trapezoid_residual, TrapezoidShape};
use trapcc::golden::REGISTRY;
use trapcc::verify::check_omega;

fn main() {
    println!(
        "{:<4} {:>11} {:>11} {:>11} {:>11}  {:<6} shape",
        "name", "relation", "trapezoid", "H/r13^8", "dziobek", "in Ω"
    );
    for entry in REGISTRY {
        let r = entry.distances();
        let (d1, d2) = dziobek_residual(&r);
        let dz = d1.abs().max(d2.abs());
        println!(
            "{:<4} {:>11.3e} {:>11.3e} {:>11.3e} {:>11.3e}  {:<6} {}",
            entry.name,
            relation_residual(&r).normalized,
            trapezoid_residual(&r).normalized,
            cayley_menger(&r) / r.r13.powi(8),
            dz,
            check_omega(&r, 1e-10).in_omega,
            classify_shape(&r, 1e-7).tag,
        );
    }

    // The diagonals follow from the four sides alone.
    println!();
    for entry in REGISTRY {
        let r = entry.distances();
        match diagonals_from_sides(&TrapezoidShape::from(&r)) {
            Ok((e, f)) => {
                println!(
                    "{:<4} r13 {:.16} (printed {:.16})  r24 {:.16} (printed {:.16})",
                    entry.name, e, r.r13, f, r.r24
                )
            }
            Err(err) => println!("{:<4} {err}", entry.name),
        }
    }
}
