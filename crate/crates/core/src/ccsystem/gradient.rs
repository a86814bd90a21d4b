use serde::Serialize;

use crate::geometry::{cayley_menger, height, DistanceVector, GeometryError};

/// Relative step for the central differences of the Cayley–Menger determinant.
pub const FD_REL_STEP: f64 = 1e-6;

/// Gradient of `F = 4Δ²` at a trapezoid, in `(r12, r13, r14, r23, r24, r34)`
/// order: `2 r12 r34 (r34, -r13, r14, r23, -r24, r12)`.
pub fn grad_f_trapezoid(r: &DistanceVector) -> [f64; 6] {
    let k = 2.0 * r.r12 * r.r34;
    [k * r.r34, -k * r.r13, k * r.r14, k * r.r23, -k * r.r24, k * r.r12]
}

/// Central-difference gradient of the Cayley–Menger determinant with a
/// step of `FD_REL_STEP · r_ij` on each coordinate.
pub fn grad_h_numeric(r: &DistanceVector) -> [f64; 6] {
    let base = r.to_array();
    std::array::from_fn(|k| {
        let step = FD_REL_STEP * base[k];
        let mut plus = base;
        let mut minus = base;
        plus[k] += step;
        minus[k] -= step;
        // Both stay positive since the step is a tiny fraction of the entry.
        let hp = cayley_menger(&DistanceVector::from_array(plus).expect("positive"));
        let hm = cayley_menger(&DistanceVector::from_array(minus).expect("positive"));
        (hp - hm) / (plus[k] - minus[k])
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GradientCheck {
    /// `8h²`
    pub factor: f64,
    /// `max_k |∇H_k - 8h² ∇F_k| / |8h² ∇F_k|`
    pub max_dev: f64,
    pub grad_h: [f64; 6],
    pub grad_f: [f64; 6],
}

/// Compares the numerical gradient of `H` with `8h² ∇F`. On trapezoids the
/// two are parallel with exactly that factor.
pub fn grad_parallel_check(r: &DistanceVector) -> Result<GradientCheck, GeometryError> {
    let h = height(r)?;
    let factor = 8.0 * h * h;
    let grad_f = grad_f_trapezoid(r);
    let grad_h = grad_h_numeric(r);
    let max_dev =
        grad_h.iter().zip(&grad_f).map(|(gh, gf)| (gh - factor * gf).abs() / (factor * gf).abs()).fold(0.0, f64::max);
    Ok(GradientCheck { factor, max_dev, grad_h, grad_f })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{delta_squared, TrapezoidShape};
    use crate::golden;

    #[test]
    fn f_gradient_on_square() {
        let s = 2f64.sqrt();
        let g = grad_f_trapezoid(&golden::square());
        for (got, want) in g.iter().zip([2.0, -2.0 * s, 2.0, 2.0, -2.0 * s, 2.0]) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn f_gradient_matches_differences_of_delta() {
        // Independent route: central differences of 4Δ² itself.
        let r = golden::e1();
        let base = r.to_array();
        let g = grad_f_trapezoid(&r);
        for k in 0..6 {
            let step = 1e-6 * base[k];
            let (mut p, mut m) = (base, base);
            p[k] += step;
            m[k] -= step;
            let fd = (delta_squared(&DistanceVector::from_array(p).unwrap())
                - delta_squared(&DistanceVector::from_array(m).unwrap()))
                / (2.0 * step);
            assert!((fd - g[k]).abs() / g[k].abs() < 1e-6, "component {k}: {fd} vs {}", g[k]);
        }
    }

    #[test]
    fn parallel_on_reference_trapezoids() {
        let iso = TrapezoidShape::new(2.0, 1.0, 1.0, 1.0).unwrap().distances().unwrap();
        for r in [golden::e1(), golden::e2(), golden::e3(), golden::square(), iso] {
            let check = grad_parallel_check(&r).unwrap();
            assert!(check.max_dev < 1e-6, "{r}: {}", check.max_dev);
        }
    }

    #[test]
    fn not_parallel_off_the_trapezoid_set() {
        // Generic convex quadrilateral: planar, no parallel sides.
        let p = [(0.0f64, 0.0f64), (3.0, 0.0), (2.2, 1.5), (0.5, 1.1)];
        let d = |i: usize, j: usize| (p[i].0 - p[j].0).hypot(p[i].1 - p[j].1);
        let r = DistanceVector::new(d(0, 1), d(0, 2), d(0, 3), d(1, 2), d(1, 3), d(2, 3)).unwrap();
        assert!(grad_parallel_check(&r).unwrap().max_dev > 1e-3);
    }
}
