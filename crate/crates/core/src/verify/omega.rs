use serde::Serialize;

use crate::geometry::DistanceVector;

/// Slack below which a strict inequality draws a warning.
const STRICT_WARN_REL: f64 = 1e-6;

/// One named inequality `lhs ≥ rhs` (or `>`), with `slack = lhs - rhs`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Slack {
    pub name: String,
    pub slack: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OmegaVerdict {
    pub in_omega: bool,
    pub violations: Vec<Slack>,
    /// Strict inequalities that hold but only barely.
    pub warnings: Vec<Slack>,
}

/// Checks the canonical ordering `r13 ≥ r24 > r12 ≥ r14 ≥ r23 ≥ r34`, the
/// base ordering `r12 ≥ r34`, and that every exterior side is shorter than
/// both diagonals.
///
/// Each inequality may be violated by at most `band · r12`; strict ones
/// warn when their slack is below `1e-6 · r12`.
pub fn check_omega(r: &DistanceVector, band: f64) -> OmegaVerdict {
    let scale = r.r12;
    let chain: [(&str, f64, f64, bool); 6] = [
        ("r13 >= r24", r.r13, r.r24, false),
        ("r24 > r12", r.r24, r.r12, true),
        ("r12 >= r14", r.r12, r.r14, false),
        ("r14 >= r23", r.r14, r.r23, false),
        ("r23 >= r34", r.r23, r.r34, false),
        ("r12 >= r34", r.r12, r.r34, false),
    ];
    let mut violations = Vec::new();
    let mut warnings = Vec::new();
    let mut record = |name: String, slack: f64, strict: bool| {
        if slack < -band * scale {
            violations.push(Slack { name, slack });
        } else if strict && slack < STRICT_WARN_REL * scale {
            warnings.push(Slack { name, slack });
        }
    };
    for (name, lhs, rhs, strict) in chain {
        record(name.to_string(), lhs - rhs, strict);
    }
    for (side, len) in [("r12", r.r12), ("r23", r.r23), ("r34", r.r34), ("r14", r.r14)] {
        for (diag, dlen) in [("r13", r.r13), ("r24", r.r24)] {
            record(format!("{diag} > {side}"), dlen - len, true);
        }
    }
    OmegaVerdict { in_omega: violations.is_empty(), violations, warnings }
}
