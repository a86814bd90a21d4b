use serde::Serialize;

use super::CcError;
use crate::geometry::DistanceVector;

/// Both sides of the sextic relation and their difference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RelationResidual {
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs - rhs`
    pub raw: f64,
    /// `raw / max(|lhs|, |rhs|)`
    pub normalized: f64,
}

/// `(r13³ - r12³)(r23³ - r34³)(r24³ - r14³) - (r12³ - r14³)(r24³ - r34³)(r13³ - r23³)`.
///
/// The relation is what remains of Dziobek's equations after eliminating
/// `λ`; its vanishing is necessary and sufficient for a planar central
/// configuration with some (not necessarily positive) masses.
pub fn relation_residual(r: &DistanceVector) -> RelationResidual {
    let [c12, c13, c14, c23, c24, c34] = r.to_array().map(|x| x * x * x);
    let lhs = (c13 - c12) * (c23 - c34) * (c24 - c14);
    let rhs = (c12 - c14) * (c24 - c34) * (c13 - c23);
    let raw = lhs - rhs;
    let scale = lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE);
    RelationResidual { lhs, rhs, raw, normalized: raw / scale }
}

/// Inverse cubes `(s12, s13, s14, s23, s24, s34)`.
pub(crate) fn inverse_cubes(r: &DistanceVector) -> [f64; 6] {
    r.to_array().map(|x| x.powi(-3))
}

/// Opposite-pair products `(s12 - λ)(s34 - λ)`, `(s13 - λ)(s24 - λ)`,
/// `(s14 - λ)(s23 - λ)`.
pub fn dziobek_products(r: &DistanceVector, lambda: f64) -> [f64; 3] {
    let [s12, s13, s14, s23, s24, s34] = inverse_cubes(r);
    [(s12 - lambda) * (s34 - lambda), (s13 - lambda) * (s24 - lambda), (s14 - lambda) * (s23 - lambda)]
}

/// `λ` from the three pairwise equalities of Dziobek's products.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LambdaEstimate {
    pub lambda: f64,
    /// Largest disagreement of one pairwise equation with `lambda`,
    /// relative to `|lambda|` and weighted by that pair's slope.
    pub spread: f64,
    /// `λ` solved from pairs (12·34 = 13·24), (12·34 = 14·23),
    /// (13·24 = 14·23); `None` where the pair does not determine `λ`.
    pub pairwise: [Option<f64>; 3],
}

/// Each pairwise equality is linear in `λ`:
/// `s_ij s_kl - λ(s_ij + s_kl) = s_pq s_uv - λ(s_pq + s_uv)`.
///
/// The returned `lambda` is the slope-weighted mean (the least-squares
/// solution of the three linear equations), which reduces to the plain
/// mean when the slopes agree and ignores pairs whose slope vanishes.
pub fn lambda_dziobek(r: &DistanceVector) -> Result<LambdaEstimate, CcError> {
    let [s12, s13, s14, s23, s24, s34] = inverse_cubes(r);
    let groups = [(s12 * s34, s12 + s34), (s13 * s24, s13 + s24), (s14 * s23, s14 + s23)];
    let pairs = [(0, 1), (0, 2), (1, 2)];
    let scale = [s12, s13, s14, s23, s24, s34].into_iter().fold(0.0, f64::max);

    let mut num = [0.0; 3];
    let mut den = [0.0; 3];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        num[k] = groups[i].0 - groups[j].0;
        den[k] = groups[i].1 - groups[j].1;
    }
    let max_den = den.iter().fold(0.0f64, |m, d| m.max(d.abs()));
    if max_den <= 1e-12 * scale {
        return Err(CcError::DegenerateDenominator);
    }
    let lambda = num.iter().zip(&den).map(|(n, d)| n * d).sum::<f64>() / den.iter().map(|d| d * d).sum::<f64>();
    let pairwise = std::array::from_fn(|k| (den[k].abs() > 1e-12 * scale).then(|| num[k] / den[k]));
    let denom = lambda.abs().max(f64::MIN_POSITIVE) * max_den;
    let spread = num.iter().zip(&den).map(|(n, d)| (n - lambda * d).abs() / denom).fold(0.0, f64::max);
    Ok(LambdaEstimate { lambda, spread, pairwise })
}

/// Normalized differences `(P12·34 - P13·24, P12·34 - P14·23) / max|P|`
/// of Dziobek's products at the fitted `λ`.
///
/// When no `λ` can be fitted the products do not depend on it and `λ = 0`
/// is used.
pub fn dziobek_residual(r: &DistanceVector) -> (f64, f64) {
    let lambda = lambda_dziobek(r).map(|l| l.lambda).unwrap_or(0.0);
    let [p_a, p_b, p_c] = dziobek_products(r, lambda);
    let scale = p_a.abs().max(p_b.abs()).max(p_c.abs()).max(f64::MIN_POSITIVE);
    ((p_a - p_b) / scale, (p_a - p_c) / scale)
}
