use serde::Serialize;

use super::DistanceVector;

/// Bordered 5×5 Cayley–Menger determinant of the four points.
///
/// Equals `288 V²` for a tetrahedron of volume `V`; zero exactly when the
/// points are coplanar.
pub fn cayley_menger(r: &DistanceVector) -> f64 {
    let [r12, r13, r14, r23, r24, r34] = r.to_array().map(|x| x * x);
    let m = [
        [0.0, 1.0, 1.0, 1.0, 1.0],
        [1.0, 0.0, r12, r13, r14],
        [1.0, r12, 0.0, r23, r24],
        [1.0, r13, r23, 0.0, r34],
        [1.0, r14, r24, r34, 0.0],
    ];
    det5(m)
}

/// 4×4 bordered determinant of a triangle with sides `x, y, z`.
/// Equals `-16 A²`, so it is non-positive for every real triangle.
pub fn triangle_cayley_menger(x: f64, y: f64, z: f64) -> f64 {
    -(x + y + z) * (-x + y + z) * (x - y + z) * (x + y - z)
}

fn det5(mut m: [[f64; 5]; 5]) -> f64 {
    let mut det = 1.0;
    for col in 0..5 {
        let pivot = (col..5).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs())).unwrap_or(col);
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col];
        det *= p;
        for row in col + 1..5 {
            let factor = m[row][col] / p;
            if factor != 0.0 {
                let pivot_row = m[col];
                for (x, p) in m[row][col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= factor * p;
                }
            }
        }
    }
    det
}

/// A three-point subconfiguration whose determinant has the wrong sign.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubconfigViolation {
    /// Body labels, e.g. `[1, 2, 3]`.
    pub bodies: Vec<usize>,
    pub determinant: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict")]
pub enum Realizability {
    Realizable3D,
    Planar,
    NotRealizable { violations: Vec<SubconfigViolation> },
}

impl Realizability {
    pub fn is_realizable(&self) -> bool {
        !matches!(self, Realizability::NotRealizable { .. })
    }
}

/// Applies the Cayley–Menger sign criterion to every subconfiguration.
///
/// Triangles must have non-positive determinants and the full set a
/// non-negative one. `rel_tol` is measured against the largest distance
/// raised to the determinant's degree (4 for triangles, 8 for the quad).
pub fn realizability(r: &DistanceVector, rel_tol: f64) -> Realizability {
    let scale = r.max_distance();
    let mut violations = Vec::new();
    for bodies in [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]] {
        let [i, j, k] = bodies;
        let det = triangle_cayley_menger(r.get(i, j), r.get(i, k), r.get(j, k));
        if det > rel_tol * scale.powi(4) {
            violations.push(SubconfigViolation { bodies: bodies.to_vec(), determinant: det });
        }
    }
    let h = cayley_menger(r);
    let band = rel_tol * scale.powi(8);
    if h < -band {
        violations.push(SubconfigViolation { bodies: vec![1, 2, 3, 4], determinant: h });
    }
    if !violations.is_empty() {
        Realizability::NotRealizable { violations }
    } else if h.abs() <= band {
        Realizability::Planar
    } else {
        Realizability::Realizable3D
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Leibniz expansion over all 120 permutations; independent of the
    /// elimination used in `det5`.
    fn leibniz5(m: &[[f64; 5]; 5]) -> f64 {
        fn permute(prefix: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if left.is_empty() {
                out.push(prefix.clone());
                return;
            }
            for idx in 0..left.len() {
                let v = left.remove(idx);
                prefix.push(v);
                permute(prefix, left, out);
                prefix.pop();
                left.insert(idx, v);
            }
        }
        let mut perms = Vec::new();
        permute(&mut Vec::new(), &mut (0..5).collect(), &mut perms);
        perms
            .iter()
            .map(|p| {
                let inversions =
                    (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
                sign * (0..5).map(|i| m[i][p[i]]).product::<f64>()
            })
            .sum()
    }

    fn bordered(r: &DistanceVector) -> [[f64; 5]; 5] {
        let [r12, r13, r14, r23, r24, r34] = r.to_array().map(|x| x * x);
        [
            [0.0, 1.0, 1.0, 1.0, 1.0],
            [1.0, 0.0, r12, r13, r14],
            [1.0, r12, 0.0, r23, r24],
            [1.0, r13, r23, 0.0, r34],
            [1.0, r14, r24, r34, 0.0],
        ]
    }

    fn square() -> DistanceVector {
        let s = 2f64.sqrt();
        DistanceVector::from_sides(1.0, 1.0, 1.0, 1.0, s, s).unwrap()
    }

    fn tetrahedron() -> DistanceVector {
        DistanceVector::new(1.0, 1.0, 1.0, 1.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn regular_tetrahedron_matches_volume() {
        let r = tetrahedron();
        let oracle = leibniz5(&bordered(&r));
        assert!((oracle - 4.0).abs() < 1e-12);
        assert!((cayley_menger(&r) - oracle).abs() < 1e-12);
    }

    #[test]
    fn agrees_with_leibniz_on_irregular_input() {
        let r = DistanceVector::new(3.0, 4.1, 2.7, 3.3, 3.9, 2.2).unwrap();
        let oracle = leibniz5(&bordered(&r));
        assert!((cayley_menger(&r) - oracle).abs() < 1e-9 * oracle.abs().max(1.0));
    }

    #[test]
    fn unit_square_is_planar() {
        assert!(cayley_menger(&square()).abs() < 1e-12);
        assert_eq!(realizability(&square(), 1e-10), Realizability::Planar);
    }

    #[test]
    fn tetrahedron_is_spatial() {
        assert_eq!(realizability(&tetrahedron(), 1e-10), Realizability::Realizable3D);
    }

    #[test]
    fn broken_triangle_is_reported() {
        let r = DistanceVector::new(10.0, 1.0, 1.0, 1.0, 1.0, 1.0).unwrap();
        match realizability(&r, 1e-10) {
            Realizability::NotRealizable { violations } => {
                assert!(violations.iter().any(|v| v.bodies == vec![1, 2, 3]));
                assert!(violations.iter().any(|v| v.bodies == vec![1, 2, 4]));
            }
            other => panic!("expected NotRealizable, got {other:?}"),
        }
    }

    #[test]
    fn triangle_determinant_is_heron() {
        // 3-4-5 triangle has area 6.
        assert!((triangle_cayley_menger(3.0, 4.0, 5.0) + 16.0 * 36.0).abs() < 1e-9);
    }
}
