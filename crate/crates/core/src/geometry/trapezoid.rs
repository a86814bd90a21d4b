use serde::Serialize;

use super::{DistanceVector, GeometryError, TrapezoidShape};

/// Relative base gap `|a - c| / a` at or below which a trapezoid is
/// treated as a parallelogram.
pub const PARALLELOGRAM_REL_GAP: f64 = 1e-9;

/// `4Δ² = a²c² - ¼(b² + d² - e² - f²)²`, where `Δ` is half the norm of
/// the cross product of the two base vectors.
///
/// Negative values indicate a non-realizable input.
pub fn delta_squared(r: &DistanceVector) -> f64 {
    let (a, b, c, d, e, f) = (r.a(), r.b(), r.c(), r.d(), r.e(), r.f());
    let s = b * b + d * d - e * e - f * f;
    a * a * c * c - 0.25 * s * s
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrapezoidResidual {
    /// `2ac - e² - f² + b² + d²`
    pub raw: f64,
    /// `raw / (2ac + b² + d²)`
    pub normalized: f64,
}

/// Residual of the parallel-bases condition for a sequentially labeled
/// convex quadrilateral with bases `r12` and `r34`.
pub fn trapezoid_residual(r: &DistanceVector) -> TrapezoidResidual {
    let (a, b, c, d, e, f) = (r.a(), r.b(), r.c(), r.d(), r.e(), r.f());
    let positive = 2.0 * a * c + b * b + d * d;
    let raw = positive - e * e - f * f;
    TrapezoidResidual { raw, normalized: raw / positive }
}

/// Diagonals `(e, f) = (r13, r24)` of the trapezoid with consecutive sides
/// `a, b, c, d` and parallel sides `a`, `c`.
pub fn diagonals_from_sides(s: &TrapezoidShape) -> Result<(f64, f64), GeometryError> {
    let TrapezoidShape { a, b, c, d } = *s;
    let gap = a - c;
    if gap.abs() <= PARALLELOGRAM_REL_GAP * a.max(c) {
        return Err(GeometryError::ParallelogramDegenerate { gap: gap.abs() / a.max(c) });
    }
    // The legs together with |a - c| must form a proper triangle.
    if !((b - d).abs() < gap.abs() && gap.abs() < b + d) {
        return Err(GeometryError::NotATrapezoid { a, b, c, d });
    }
    let e2 = a * c - (c * b * b - a * d * d) / gap;
    let f2 = a * c - (c * d * d - a * b * b) / gap;
    if e2 <= 0.0 || f2 <= 0.0 {
        return Err(GeometryError::NotATrapezoid { a, b, c, d });
    }
    Ok((e2.sqrt(), f2.sqrt()))
}

/// Distance between the two parallel sides.
///
/// Uses the triangle formed by `|a - c|` and the two legs when the bases
/// differ, and Bretschneider's area divided by the base for
/// parallelograms.
pub fn height(r: &DistanceVector) -> Result<f64, GeometryError> {
    let (a, b, c, d) = (r.a(), r.b(), r.c(), r.d());
    let gap = a - c;
    if gap.abs() <= PARALLELOGRAM_REL_GAP * a.max(c) {
        let area = bretschneider_area(r)?;
        return Ok(area / a);
    }
    let radicand = ((b + d).powi(2) - gap * gap) * (gap * gap - (b - d).powi(2));
    if radicand < 0.0 {
        return Err(GeometryError::DegenerateConfiguration { quantity: "height", radicand });
    }
    Ok(radicand.sqrt() / (2.0 * gap.abs()))
}

fn bretschneider_area(r: &DistanceVector) -> Result<f64, GeometryError> {
    let (a, b, c, d, e, f) = (r.a(), r.b(), r.c(), r.d(), r.e(), r.f());
    let s = b * b + d * d - a * a - c * c;
    let radicand = e * e * f * f - 0.25 * s * s;
    if radicand < 0.0 {
        return Err(GeometryError::DegenerateConfiguration { quantity: "area", radicand });
    }
    Ok(0.5 * radicand.sqrt())
}

/// Signed areas `(Δ1, Δ2, Δ3, Δ4)`, `Δi` being the triangle without body
/// `i`. Sequential labeling gives `Δ1, Δ3 > 0` and `Δ2, Δ4 < 0`.
pub fn oriented_areas(r: &DistanceVector) -> Result<[f64; 4], GeometryError> {
    let h = height(r)?;
    let top = 0.5 * r.c() * h;
    let bottom = 0.5 * r.a() * h;
    Ok([top, -top, bottom, -bottom])
}

/// `r12 r34 + r14 r23 - r13 r24`; zero for co-circular configurations.
pub fn ptolemy_residual(r: &DistanceVector) -> f64 {
    r.r12 * r.r34 + r.r14 * r.r23 - r.r13 * r.r24
}
