use serde::Serialize;

use super::SolveError;
use crate::ccsystem::{CCSolution, MassVector, Tolerances};
use crate::geometry::DistanceVector;

/// Closed-form masses and multipliers on a rhombus, masses `(1, q, 1, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RhombusMasses {
    pub q: f64,
    pub lambda: f64,
    pub sigma: f64,
}

/// Rhombus with side `side` and diagonal ratio `ρ = r13 / r24 ≥ 1`.
pub fn rhombus_distances(diag_ratio: f64, side: f64) -> Result<DistanceVector, SolveError> {
    if !(diag_ratio.is_finite() && diag_ratio >= 1.0) {
        return Err(SolveError::InvalidInput(format!("diagonal ratio {diag_ratio} must be at least 1")));
    }
    if !(side.is_finite() && side > 0.0) {
        return Err(SolveError::InvalidInput(format!("side {side} must be positive")));
    }
    let f = 2.0 * side / (1.0 + diag_ratio * diag_ratio).sqrt();
    let e = diag_ratio * f;
    Ok(DistanceVector::from_sides(side, side, side, side, e, f)?)
}

fn closed_form(r: &DistanceVector) -> Option<RhombusMasses> {
    let s = r.r12;
    let (big_e, big_f, big_s) = (r.r13.powi(-3), r.r24.powi(-3), s.powi(-3));
    let den = big_e + big_f - 2.0 * big_s;
    if den == 0.0 {
        return None;
    }
    let lambda = (big_e * big_f - big_s * big_s) / den;
    let q = (lambda - big_e) / (big_s - lambda);
    Some(RhombusMasses { q, lambda, sigma: (lambda - big_e) / (s * s) })
}

/// Central configuration on the rhombus branch.
///
/// The ratio formulas through `s12 - s14` and `s12 - s23` are singular here,
/// so the masses come from the three distinct equations directly.
pub fn rhombus_branch(diag_ratio: f64, side: f64, tol: &Tolerances) -> Result<(CCSolution, RhombusMasses), SolveError> {
    let r = rhombus_distances(diag_ratio, side)?;
    let closed = closed_form(&r).filter(|m| m.q.is_finite() && m.q > 0.0).ok_or_else(|| {
        SolveError::NoPositiveMasses { diag_ratio, mass_ratio: closed_form(&r).map_or(f64::NAN, |m| m.q) }
    })?;
    let masses = MassVector { m1: 1.0, m2: closed.q, m3: 1.0, m4: closed.q, consistency: 0.0 };
    Ok((CCSolution::with_masses(&r, masses, tol)?, closed))
}

/// Upper end of the diagonal ratios with positive masses, by bisection on
/// `[1, 3]` to relative width `rel_tol`.
pub fn rhombus_positivity_limit(rel_tol: f64) -> f64 {
    let positive = |rho: f64| {
        rhombus_distances(rho, 1.0).ok().and_then(|r| closed_form(&r)).is_some_and(|m| m.q.is_finite() && m.q > 0.0)
    };
    let (mut lo, mut hi) = (1.0, 3.0);
    while hi - lo > rel_tol * hi {
        let mid = 0.5 * (lo + hi);
        if positive(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
