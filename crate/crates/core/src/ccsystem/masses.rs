use serde::Serialize;

use super::relation::inverse_cubes;
use super::CcError;
use crate::geometry::DistanceVector;

/// Denominators with relative cancellation below this are unusable.
const SINGULAR_REL: f64 = 1e-12;
/// Formulas this close to singular are left out of the consistency score.
const CONSISTENCY_REL: f64 = 1e-9;

/// Masses in the gauge `m1 = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MassVector {
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
    pub m4: f64,
    /// Largest relative disagreement among the six ratio formulas.
    pub consistency: f64,
}

impl MassVector {
    pub fn to_array(&self) -> [f64; 4] {
        [self.m1, self.m2, self.m3, self.m4]
    }

    /// Mass of body `i` (1-based).
    pub fn get(&self, i: usize) -> f64 {
        self.to_array()[i - 1]
    }

    pub fn all_positive(&self) -> bool {
        self.to_array().iter().all(|&m| m > 0.0)
    }

    pub fn total(&self) -> f64 {
        self.to_array().iter().sum()
    }
}

/// One of the six closed forms for `m_i / m_j`, kept as `num / den`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioFormula {
    pub i: usize,
    pub j: usize,
    pub num: f64,
    pub den: f64,
    /// Relative size of the inverse-cube difference in `den`.
    pub den_rel: f64,
}

impl RatioFormula {
    pub fn value(&self) -> f64 {
        self.num / self.den
    }
}

fn rel_diff(x: f64, y: f64) -> f64 {
    (x - y).abs() / x.abs().max(y.abs())
}

/// The six ratios obtained by dividing pairs of the critical-point
/// equations, in the order m1/m2, m1/m3, m1/m4, m2/m3, m2/m4, m3/m4.
pub fn ratio_formulas(r: &DistanceVector) -> [RatioFormula; 6] {
    let [s12, s13, s14, s23, s24, s34] = inverse_cubes(r);
    let (r12, r34) = (r.r12, r.r34);
    let formula = |i, j, num, den, p: f64, q: f64| RatioFormula { i, j, num, den, den_rel: rel_diff(p, q) };
    [
        formula(1, 2, -(s23 - s24), s13 - s14, s13, s14),
        formula(1, 3, r34 * (s23 - s34), r12 * (s12 - s14), s12, s14),
        formula(1, 4, -r34 * (s24 - s34), r12 * (s12 - s13), s12, s13),
        formula(2, 3, -r34 * (s13 - s34), r12 * (s12 - s24), s12, s24),
        formula(2, 4, r34 * (s14 - s34), r12 * (s12 - s23), s12, s23),
        formula(3, 4, -(s14 - s24), s13 - s23, s13, s23),
    ]
}

/// Masses from the ratio formulas with `m1 = 1`.
///
/// Three formulas forming a spanning tree on the four bodies fix the
/// masses; they are picked greedily by least cancellation in the
/// denominator (formula order breaks ties). The other three, plus the
/// triangle products `(m_i/m_j)(m_j/m_k)(m_k/m_i)`, measure consistency.
pub fn mass_ratios(r: &DistanceVector) -> Result<MassVector, CcError> {
    let formulas = ratio_formulas(r);
    let mut order: Vec<usize> = (0..6).collect();
    order.sort_by(|&x, &y| formulas[y].den_rel.total_cmp(&formulas[x].den_rel));

    let mut component = [0usize, 1, 2, 3];
    let mut tree = Vec::with_capacity(3);
    for &k in &order {
        let f = &formulas[k];
        if f.den_rel < SINGULAR_REL {
            break;
        }
        let (ci, cj) = (component[f.i - 1], component[f.j - 1]);
        if ci != cj {
            for c in component.iter_mut() {
                if *c == cj {
                    *c = ci;
                }
            }
            tree.push(k);
        }
    }

    let mut masses = [None; 4];
    masses[0] = Some(1.0);
    for _ in 0..3 {
        for &k in &tree {
            let f = &formulas[k];
            match (masses[f.i - 1], masses[f.j - 1]) {
                (Some(mi), None) => masses[f.j - 1] = Some(mi / f.value()),
                (None, Some(mj)) => masses[f.i - 1] = Some(f.value() * mj),
                _ => {}
            }
        }
    }
    let mut m = [0.0; 4];
    for (idx, slot) in masses.iter().enumerate() {
        m[idx] = slot.ok_or(CcError::SingularRatio { mass: idx + 1 })?;
    }

    let consistency = mass_consistency(r, &m);
    Ok(MassVector { m1: m[0], m2: m[1], m3: m[2], m4: m[3], consistency })
}

/// Worst disagreement between `m` and the well-conditioned ratio formulas,
/// including the triangle products `(m_i/m_j)(m_j/m_k)(m_k/m_i)`.
pub fn mass_consistency(r: &DistanceVector, m: &[f64; 4]) -> f64 {
    let formulas = ratio_formulas(r);
    let mut consistency: f64 = 0.0;
    for f in formulas.iter().filter(|f| f.den_rel >= CONSISTENCY_REL) {
        let implied = m[f.i - 1] / m[f.j - 1] * f.den;
        let scale = f.num.abs().max(implied.abs()).max(f64::MIN_POSITIVE);
        consistency = consistency.max((f.num - implied).abs() / scale);
    }
    let lookup = |i: usize, j: usize| -> Option<f64> {
        formulas.iter().find(|f| f.den_rel >= CONSISTENCY_REL && f.i == i.min(j) && f.j == i.max(j)).map(|f| {
            if i < j {
                f.value()
            } else {
                1.0 / f.value()
            }
        })
    };
    for [i, j, k] in [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]] {
        if let (Some(x), Some(y), Some(z)) = (lookup(i, j), lookup(j, k), lookup(k, i)) {
            consistency = consistency.max((x * y * z - 1.0).abs());
        }
    }
    consistency
}

/// `σ` and the fit quality of all six critical-point equations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SigmaEstimate {
    pub sigma: f64,
    pub spread: f64,
}

/// Residuals `lhs - rhs` of the six equations
/// `m_i m_j (s_ij - λ) = σ · {r34², r12², -r12 r34, -r12 r34, r12 r34, r12 r34}`
/// for pairs 12, 34, 13, 24, 14, 23, returned as `(lhs, rhs)`.
pub fn critical_point_equations(r: &DistanceVector, m: &MassVector, lambda: f64, sigma: f64) -> [(f64, f64); 6] {
    let [s12, s13, s14, s23, s24, s34] = inverse_cubes(r);
    let (a, c) = (r.r12, r.r34);
    let [m1, m2, m3, m4] = m.to_array();
    [
        (m1 * m2 * (s12 - lambda), sigma * c * c),
        (m3 * m4 * (s34 - lambda), sigma * a * a),
        (m1 * m3 * (s13 - lambda), -sigma * a * c),
        (m2 * m4 * (s24 - lambda), -sigma * a * c),
        (m1 * m4 * (s14 - lambda), sigma * a * c),
        (m2 * m3 * (s23 - lambda), sigma * a * c),
    ]
}

/// Recovers `σ` from the base equation `m1 m2 (s12 - λ) = σ r34²` and
/// reports the worst relative residual over all six equations.
pub fn sigma_recover(r: &DistanceVector, m: &MassVector, lambda: f64) -> SigmaEstimate {
    let [s12, ..] = inverse_cubes(r);
    let sigma = m.m1 * m.m2 * (s12 - lambda) / (r.r34 * r.r34);
    let spread = critical_point_equations(r, m, lambda, sigma)
        .iter()
        .map(|(lhs, rhs)| (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max);
    SigmaEstimate { sigma, spread }
}

/// Newtonian potential and moment of inertia about the center of mass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Energetics {
    pub potential: f64,
    pub inertia: f64,
}

/// `U = Σ m_i m_j / r_ij`, `I = (1/2M) Σ m_i m_j r_ij²`.
pub fn potential_inertia(r: &DistanceVector, m: &MassVector) -> Energetics {
    let mut potential = 0.0;
    let mut weighted = 0.0;
    for i in 1..=4 {
        for j in i + 1..=4 {
            let mm = m.get(i) * m.get(j);
            let rij = r.get(i, j);
            potential += mm / rij;
            weighted += mm * rij * rij;
        }
    }
    Energetics { potential, inertia: weighted / (2.0 * m.total()) }
}
