use serde::Serialize;

use super::{DistanceVector, GeometryError, DISTANCE_NAMES};

/// Relative tolerance for the distance round-trip check.
const EMBED_REL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn dist(&self, other: &Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Four planar points realizing a trapezoidal distance vector.
///
/// Body 1 sits at the origin, body 2 on the positive x-axis, and bodies 3
/// and 4 on the line `y = h` above them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlanarEmbedding {
    pub p1: Point2,
    pub p2: Point2,
    pub p3: Point2,
    pub p4: Point2,
    pub h: f64,
}

impl PlanarEmbedding {
    pub fn points(&self) -> [Point2; 4] {
        [self.p1, self.p2, self.p3, self.p4]
    }

    /// The six pairwise distances of the placed points.
    pub fn distances(&self) -> DistanceVector {
        let [p1, p2, p3, p4] = self.points();
        DistanceVector {
            r12: p1.dist(&p2),
            r13: p1.dist(&p3),
            r14: p1.dist(&p4),
            r23: p2.dist(&p3),
            r24: p2.dist(&p4),
            r34: p3.dist(&p4),
        }
    }

    /// Signed area of the triangle `(p, q, s)`, positive when counterclockwise.
    pub fn signed_area(p: Point2, q: Point2, s: Point2) -> f64 {
        0.5 * ((q.x - p.x) * (s.y - p.y) - (s.x - p.x) * (q.y - p.y))
    }
}

/// Places the four bodies in the plane.
///
/// Each top vertex is located from the triangle it forms with the bottom
/// base: body 3 from `(r12, r13, r23)`, body 4 from `(r12, r14, r24)`. The
/// two resulting heights are averaged and every distance is re-checked.
pub fn embed(r: &DistanceVector) -> Result<PlanarEmbedding, GeometryError> {
    let a = r.r12;
    let x3 = (a * a + r.r13 * r.r13 - r.r23 * r.r23) / (2.0 * a);
    let x4 = (a * a + r.r14 * r.r14 - r.r24 * r.r24) / (2.0 * a);
    let h3_sq = r.r13 * r.r13 - x3 * x3;
    let h4_sq = r.r14 * r.r14 - x4 * x4;
    if h3_sq <= 0.0 {
        return Err(GeometryError::DegenerateConfiguration { quantity: "height of body 3", radicand: h3_sq });
    }
    if h4_sq <= 0.0 {
        return Err(GeometryError::DegenerateConfiguration { quantity: "height of body 4", radicand: h4_sq });
    }
    let h = 0.5 * (h3_sq.sqrt() + h4_sq.sqrt());
    let embedding = PlanarEmbedding {
        p1: Point2 { x: 0.0, y: 0.0 },
        p2: Point2 { x: a, y: 0.0 },
        p3: Point2 { x: x3, y: h },
        p4: Point2 { x: x4, y: h },
        h,
    };

    let placed = embedding.distances().to_array();
    let (worst, err) = placed
        .iter()
        .zip(r.to_array())
        .map(|(p, want)| (p - want).abs() / want)
        .enumerate()
        .fold((0, 0.0), |acc, (i, e)| if e > acc.1 { (i, e) } else { acc });
    // x3 > x4 keeps the boundary order 1-2-3-4 convex rather than crossed.
    if err > EMBED_REL_TOL || x3 <= x4 {
        return Err(GeometryError::EmbeddingInconsistent { pair: DISTANCE_NAMES[worst], max_rel_error: err });
    }
    Ok(embedding)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{height, oriented_areas, TrapezoidShape};
    use crate::golden;

    fn close(p: Point2, x: f64, y: f64) -> bool {
        (p.x - x).abs() < 1e-12 && (p.y - y).abs() < 1e-12
    }

    #[test]
    fn unit_square_layout() {
        let s = 2f64.sqrt();
        let e = embed(&DistanceVector::from_sides(1.0, 1.0, 1.0, 1.0, s, s).unwrap()).unwrap();
        assert!(close(e.p1, 0.0, 0.0) && close(e.p2, 1.0, 0.0));
        assert!(close(e.p3, 1.0, 1.0) && close(e.p4, 0.0, 1.0));
    }

    #[test]
    fn isosceles_layout() {
        let r = TrapezoidShape::new(2.0, 1.0, 1.0, 1.0).unwrap().distances().unwrap();
        let e = embed(&r).unwrap();
        let h = 3f64.sqrt() / 2.0;
        assert!(close(e.p2, 2.0, 0.0) && close(e.p3, 1.5, h) && close(e.p4, 0.5, h));
    }

    #[test]
    fn golden_round_trip_and_height() {
        for r in [golden::e1(), golden::e2(), golden::e3()] {
            let e = embed(&r).unwrap();
            for (got, want) in e.distances().to_array().iter().zip(r.to_array()) {
                assert!((got - want).abs() / want < 1e-9);
            }
            let h = height(&r).unwrap();
            assert!((e.h - h).abs() / h < 1e-10);
        }
    }

    #[test]
    fn areas_match_placed_triangles() {
        let r = golden::e1();
        let e = embed(&r).unwrap();
        let [p1, p2, p3, p4] = e.points();
        let placed = [
            PlanarEmbedding::signed_area(p2, p3, p4),
            -PlanarEmbedding::signed_area(p1, p3, p4),
            PlanarEmbedding::signed_area(p1, p2, p4),
            -PlanarEmbedding::signed_area(p1, p2, p3),
        ];
        let formula = oriented_areas(&r).unwrap();
        for (got, want) in formula.iter().zip(placed) {
            assert!((got - want).abs() / want.abs() < 1e-9, "{got} vs {want}");
        }
    }

    #[test]
    fn crossed_labels_are_rejected() {
        // Swapping bodies 3 and 4 of the unit square gives a crossed quadrilateral.
        let s = 2f64.sqrt();
        let crossed = DistanceVector::new(1.0, 1.0, s, s, 1.0, 1.0).unwrap();
        assert!(matches!(embed(&crossed), Err(GeometryError::EmbeddingInconsistent { .. })));
    }

    #[test]
    fn spatial_input_is_rejected() {
        let tet = DistanceVector::new(1.0, 1.0, 1.0, 1.0, 1.0, 1.0).unwrap();
        assert!(embed(&tet).is_err());
    }
}
