//! On a trapezoid the gradient of the Cayley–Menger determinant is 8h² times
//! the gradient of the trapezoid constraint. Checked here against central
//! differences on the named configurations and on random trapezoids.

use trapcc::ccsystem::grad_parallel_check;
use trapcc::geometry::DISTANCE_NAMES;
use trapcc::golden::REGISTRY;
use trapcc::verify::sample_omega_trapezoids;

fn main() {
    for entry in REGISTRY {
        let check = grad_parallel_check(&entry.distances()).expect("named configurations have a height");
        println!("{:<4} 8h^2 = {:<12.6} max deviation {:.2e}", entry.name, check.factor, check.max_dev);
        for (name, (gh, gf)) in DISTANCE_NAMES.iter().zip(check.grad_h.iter().zip(check.grad_f)) {
            println!("     dH/d{name} {gh:>16.6e}   8h^2 dF/d{name} {:>16.6e}", check.factor * gf);
        }
    }

    let samples = sample_omega_trapezoids(100, 8.0, 7);
    let worst =
        samples.iter().map(|r| grad_parallel_check(r).map(|c| c.max_dev).unwrap_or(f64::INFINITY)).fold(0.0, f64::max);
    println!("worst deviation over {} random trapezoids: {worst:.2e}", samples.len());
}
