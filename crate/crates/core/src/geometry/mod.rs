//! Distance-geometry primitives for labeled four-point configurations.
//!
//! Vertices are labeled 1..4 in sequential (boundary) order. For a
//! trapezoid the bases are `r12` and `r34`, the legs `r23` and `r14`, and
//! the diagonals `r13` and `r24`. The short names follow the usual
//! quadrilateral convention:
//!
//! | alias | distance | role     |
//! |-------|----------|----------|
//! | `a`   | `r12`    | base     |
//! | `b`   | `r23`    | leg      |
//! | `c`   | `r34`    | base     |
//! | `d`   | `r14`    | leg      |
//! | `e`   | `r13`    | diagonal |
//! | `f`   | `r24`    | diagonal |

mod determinant;
mod embed;
mod shape;
mod trapezoid;

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize};

pub use determinant::{cayley_menger, realizability, triangle_cayley_menger, Realizability, SubconfigViolation};
pub use embed::{embed, PlanarEmbedding, Point2};
pub use shape::{classify_shape, ShapeClass, ShapeTag};
pub use trapezoid::{
    delta_squared, diagonals_from_sides, height, oriented_areas, ptolemy_residual, trapezoid_residual,
    TrapezoidResidual, PARALLELOGRAM_REL_GAP,
};

/// Errors raised by the geometric constructions.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("{name} = {value} is not a positive finite length")]
    InvalidLength { name: &'static str, value: f64 },
    #[error("bases differ by {gap:e} (relative), the trapezoid is a parallelogram")]
    ParallelogramDegenerate { gap: f64 },
    #[error("sides ({a}, {b}, {c}, {d}) cannot close a trapezoid with parallel sides a and c")]
    NotATrapezoid { a: f64, b: f64, c: f64, d: f64 },
    #[error("degenerate configuration: {quantity} radicand is {radicand:e}")]
    DegenerateConfiguration { quantity: &'static str, radicand: f64 },
    #[error("no planar placement reproduces the distances (worst relative error {max_rel_error:e} on {pair})")]
    EmbeddingInconsistent { pair: &'static str, max_rel_error: f64 },
}

/// Names of the six distances in storage order.
pub const DISTANCE_NAMES: [&str; 6] = ["r12", "r13", "r14", "r23", "r24", "r34"];

/// The six mutual distances of a labeled four-point configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistanceVector {
    #[serde(deserialize_with = "de_length")]
    pub r12: f64,
    #[serde(deserialize_with = "de_length")]
    pub r13: f64,
    #[serde(deserialize_with = "de_length")]
    pub r14: f64,
    #[serde(deserialize_with = "de_length")]
    pub r23: f64,
    #[serde(deserialize_with = "de_length")]
    pub r24: f64,
    #[serde(deserialize_with = "de_length")]
    pub r34: f64,
}

impl DistanceVector {
    /// Builds a vector from `(r12, r13, r14, r23, r24, r34)`, rejecting
    /// non-positive or non-finite entries.
    pub fn new(r12: f64, r13: f64, r14: f64, r23: f64, r24: f64, r34: f64) -> Result<Self, GeometryError> {
        Self::from_array([r12, r13, r14, r23, r24, r34])
    }

    pub fn from_array(r: [f64; 6]) -> Result<Self, GeometryError> {
        for (name, value) in DISTANCE_NAMES.iter().zip(r) {
            check_length(name, value)?;
        }
        Ok(Self { r12: r[0], r13: r[1], r14: r[2], r23: r[3], r24: r[4], r34: r[5] })
    }

    /// Builds a vector from consecutive sides `a, b, c, d` and diagonals `e, f`.
    pub fn from_sides(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> Result<Self, GeometryError> {
        Self::new(a, e, d, b, f, c)
    }

    /// Re-checks the positivity invariant (fields are public).
    pub fn validate(&self) -> Result<(), GeometryError> {
        Self::from_array(self.to_array()).map(|_| ())
    }

    pub fn to_array(&self) -> [f64; 6] {
        [self.r12, self.r13, self.r14, self.r23, self.r24, self.r34]
    }

    pub fn a(&self) -> f64 {
        self.r12
    }
    pub fn b(&self) -> f64 {
        self.r23
    }
    pub fn c(&self) -> f64 {
        self.r34
    }
    pub fn d(&self) -> f64 {
        self.r14
    }
    pub fn e(&self) -> f64 {
        self.r13
    }
    pub fn f(&self) -> f64 {
        self.r24
    }

    /// Largest of the six distances.
    pub fn max_distance(&self) -> f64 {
        self.to_array().into_iter().fold(0.0, f64::max)
    }

    pub fn min_distance(&self) -> f64 {
        self.to_array().into_iter().fold(f64::INFINITY, f64::min)
    }

    /// Multiplies every distance by `k`.
    pub fn scaled(&self, k: f64) -> Self {
        let r = self.to_array().map(|x| x * k);
        Self { r12: r[0], r13: r[1], r14: r[2], r23: r[3], r24: r[4], r34: r[5] }
    }

    /// Applies the relabeling 1↔2, 3↔4. The bases stay bases and the
    /// legs and diagonals trade places.
    pub fn swap_12_34(&self) -> Self {
        Self { r12: self.r12, r13: self.r24, r14: self.r23, r23: self.r14, r24: self.r13, r34: self.r34 }
    }

    /// Distance between bodies `i` and `j` (1-based, `i != j`).
    pub fn get(&self, i: usize, j: usize) -> f64 {
        match (i.min(j), i.max(j)) {
            (1, 2) => self.r12,
            (1, 3) => self.r13,
            (1, 4) => self.r14,
            (2, 3) => self.r23,
            (2, 4) => self.r24,
            (3, 4) => self.r34,
            _ => panic!("invalid body pair ({i}, {j})"),
        }
    }
}

impl fmt::Display for DistanceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "r12={} r13={} r14={} r23={} r24={} r34={}",
            self.r12, self.r13, self.r14, self.r23, self.r24, self.r34
        )
    }
}

/// Four consecutive side lengths of a trapezoid; `a` and `c` are parallel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrapezoidShape {
    #[serde(deserialize_with = "de_length")]
    pub a: f64,
    #[serde(deserialize_with = "de_length")]
    pub b: f64,
    #[serde(deserialize_with = "de_length")]
    pub c: f64,
    #[serde(deserialize_with = "de_length")]
    pub d: f64,
}

impl TrapezoidShape {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, GeometryError> {
        check_length("a", a)?;
        check_length("b", b)?;
        check_length("c", c)?;
        check_length("d", d)?;
        Ok(Self { a, b, c, d })
    }

    /// Assembles the full distance vector, deriving both diagonals.
    pub fn distances(&self) -> Result<DistanceVector, GeometryError> {
        let (e, f) = diagonals_from_sides(self)?;
        DistanceVector::from_sides(self.a, self.b, self.c, self.d, e, f)
    }
}

impl From<&DistanceVector> for TrapezoidShape {
    fn from(r: &DistanceVector) -> Self {
        Self { a: r.a(), b: r.b(), c: r.c(), d: r.d() }
    }
}

fn check_length(name: &'static str, value: f64) -> Result<(), GeometryError> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(GeometryError::InvalidLength { name, value })
    }
}

/// Accepts either a JSON number or a decimal string. Strings are parsed
/// with correct rounding to the nearest `f64`.
pub(crate) fn de_length<'de, D: Deserializer<'de>>(de: D) -> Result<f64, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum NumOrStr {
        Num(f64),
        Str(String),
    }
    let value = match NumOrStr::deserialize(de)? {
        NumOrStr::Num(v) => v,
        NumOrStr::Str(s) => {
            s.trim().parse::<f64>().map_err(|e| serde::de::Error::custom(format!("invalid decimal {s:?}: {e}")))?
        }
    };
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(serde::de::Error::custom(format!("length {value} must be positive and finite")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_positive() {
        assert!(matches!(
            DistanceVector::new(1.0, 1.0, 0.0, 1.0, 1.0, 1.0),
            Err(GeometryError::InvalidLength { name: "r14", .. })
        ));
        assert!(DistanceVector::new(1.0, f64::NAN, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(TrapezoidShape::new(1.0, -2.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn aliases_follow_sequential_labels() {
        let r = DistanceVector::new(1.0, 2.0, 3.0, 4.0, 5.0, 6.0).unwrap();
        assert_eq!((r.a(), r.b(), r.c(), r.d(), r.e(), r.f()), (1.0, 4.0, 6.0, 3.0, 2.0, 5.0));
        assert_eq!(r.get(4, 2), 5.0);
        let s = r.swap_12_34();
        assert_eq!(s.swap_12_34(), r);
        assert_eq!((s.r13, s.r24, s.r14, s.r23), (5.0, 2.0, 4.0, 3.0));
    }

    #[test]
    fn json_accepts_decimal_strings() {
        let r: DistanceVector = serde_json::from_str(
            r#"{"r12": 8, "r13": "9.7414781617108145730", "r14": "7.52080447824566090",
                "r23": "7.1064329749865061893", "r24": 8.75, "r34": "4.0246879466945716437"}"#,
        )
        .unwrap();
        assert_eq!(r.r13, "9.7414781617108145730".parse::<f64>().unwrap());
        assert_eq!(r.r24, 8.75);
        assert!(serde_json::from_str::<DistanceVector>(r#"{"r12": 1, "r13": 1}"#).is_err());
        assert!(serde_json::from_str::<TrapezoidShape>(r#"{"a": 1, "b": 1, "c": "x", "d": 1}"#).is_err());
        assert!(serde_json::from_str::<TrapezoidShape>(r#"{"a": 1, "b": 1, "c": -1, "d": 1}"#).is_err());
    }
}
