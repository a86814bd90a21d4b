use std::fmt;

use serde::Serialize;

use super::DistanceVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ShapeTag {
    GenericTrapezoid,
    IsoscelesTrapezoid,
    Parallelogram,
    Rhombus,
    Square,
    Degenerate,
}

impl fmt::Display for ShapeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Classification result together with the gaps that decided it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShapeClass {
    pub tag: ShapeTag,
    pub witnesses: Vec<(String, f64)>,
}

impl ShapeClass {
    pub fn witness(&self, name: &str) -> Option<f64> {
        self.witnesses.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }
}

/// Names the trapezoid type. All gaps are measured relative to the base
/// `a = r12`.
pub fn classify_shape(r: &DistanceVector, tol: f64) -> ShapeClass {
    let (a, b, c, d, e, f) = (r.a(), r.b(), r.c(), r.d(), r.e(), r.f());
    let min_ratio = r.min_distance() / r.max_distance();
    let bases = (a - c).abs() / a;
    let base_leg = (a - b).abs() / a;
    let legs = (b - d).abs() / a;
    let diagonals = (e - f).abs() / a;
    let witnesses = vec![
        ("min/max".to_string(), min_ratio),
        ("|a-c|/a".to_string(), bases),
        ("|a-b|/a".to_string(), base_leg),
        ("|b-d|/a".to_string(), legs),
        ("|e-f|/a".to_string(), diagonals),
    ];

    let tag = if min_ratio < tol {
        ShapeTag::Degenerate
    } else if bases < tol {
        if base_leg < tol {
            if diagonals < tol {
                ShapeTag::Square
            } else {
                ShapeTag::Rhombus
            }
        } else {
            ShapeTag::Parallelogram
        }
    } else if legs < tol && diagonals < tol {
        ShapeTag::IsoscelesTrapezoid
    } else {
        ShapeTag::GenericTrapezoid
    };
    ShapeClass { tag, witnesses }
}
