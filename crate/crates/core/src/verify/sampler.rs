use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::check_omega;
use crate::geometry::DistanceVector;
use crate::solver::{omega_bracket, trapezoid_distances};

/// `n` trapezoids with base `a` drawn uniformly in `(c, d, b)` and kept
/// only if they satisfy the ordering region strictly.
///
/// Deterministic for a given seed. None of them need be a central
/// configuration.
pub fn sample_omega_trapezoids(n: usize, a: f64, seed: u64) -> Vec<DistanceVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let c = rng.random_range(0.02..0.98) * a;
        let d = rng.random_range(0.5..1.0) * a;
        let (lo, hi) = omega_bracket(a, c, d);
        if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) {
            continue;
        }
        let b = rng.random_range(lo..hi);
        let Some(r) = trapezoid_distances(a, b, c, d) else { continue };
        if check_omega(&r, 0.0).in_omega {
            out.push(r);
        }
    }
    out
}
