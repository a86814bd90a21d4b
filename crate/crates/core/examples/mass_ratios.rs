//! Masses and multipliers of the two reference solutions, compared with the
//! printed ratios.

use trapcc::ccsystem::{ratio_formulas, CCSolution, Tolerances};
use trapcc::golden;

fn main() {
    let tol = Tolerances::default();
    for (entry, (m12, m14)) in [(golden::E1, golden::E1_RATIOS), (golden::E2, golden::E2_RATIOS)] {
        let r = entry.distances();
        let sol = CCSolution::evaluate(&r, &tol).expect("reference solutions evaluate");
        let m = sol.masses;
        let want12: f64 = m12.parse().unwrap();
        let want14: f64 = m14.parse().unwrap();
        println!("{}: {}", entry.name, entry.description);
        println!("  masses       {:.12} {:.12} {:.12} {:.12}", m.m1, m.m2, m.m3, m.m4);
        println!("  m1/m2        {:.17}  rel err {:.1e}", m.m1 / m.m2, (m.m1 / m.m2 - want12).abs() / want12);
        println!("  m1/m4        {:.17}  rel err {:.1e}", m.m1 / m.m4, (m.m1 / m.m4 - want14).abs() / want14);
        println!("  lambda       {:.15e}  sigma {:.15e}", sol.multipliers.lambda, sol.multipliers.sigma);
        println!("  consistency  {:.1e}", m.consistency);
        for f in ratio_formulas(&r) {
            println!("    m{}/m{} = {:.15}", f.i, f.j, f.value());
        }
        println!("  gates failed: {:?}", sol.gate_failures(&tol));
    }
}
