//! Central-configuration algebra on mutual distances.
//!
//! A trapezoidal central configuration is a critical point of
//! `U + λM(I - I0) + σF` restricted to `F = 4Δ² = 0`. Differentiating with
//! respect to the squared distances gives six equations
//!
//! ```text
//! m1 m2 (s12 - λ) =  σ r34²      m3 m4 (s34 - λ) =  σ r12²
//! m1 m3 (s13 - λ) = -σ r12 r34   m2 m4 (s24 - λ) = -σ r12 r34
//! m1 m4 (s14 - λ) =  σ r12 r34   m2 m3 (s23 - λ) =  σ r12 r34
//! ```
//!
//! with `s_ij = r_ij⁻³`. Pairing them eliminates the masses (Dziobek's
//! products), eliminating `λ` as well leaves a single sextic relation in
//! the distances, and dividing them pairwise yields the mass ratios.

mod gradient;
mod masses;
mod relation;

use serde::{Serialize, Serializer};

use crate::geometry::{
    cayley_menger, classify_shape, realizability, trapezoid_residual, DistanceVector, GeometryError, ShapeClass,
    ShapeTag,
};
use crate::verify::check_omega;

pub use gradient::{grad_f_trapezoid, grad_h_numeric, grad_parallel_check, GradientCheck, FD_REL_STEP};
pub use masses::{
    critical_point_equations, mass_consistency, mass_ratios, potential_inertia, ratio_formulas, sigma_recover,
    Energetics, MassVector, RatioFormula, SigmaEstimate,
};
pub use relation::{
    dziobek_products, dziobek_residual, lambda_dziobek, relation_residual, LambdaEstimate, RelationResidual,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CcError {
    #[error("Dziobek multiplier is indeterminate: every pairwise equation has a vanishing slope")]
    DegenerateDenominator,
    #[error("every ratio formula reaching m{mass} has a vanishing denominator")]
    SingularRatio { mass: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Acceptance thresholds shared by the solvers and checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Normalized sextic relation residual.
    pub relation: f64,
    /// Normalized trapezoid residual.
    pub trapezoid: f64,
    /// `|H| / r13⁸`.
    pub cayley_menger: f64,
    /// Normalized Dziobek product differences.
    pub dziobek: f64,
    pub lambda_spread: f64,
    pub sigma_spread: f64,
    pub mass_consistency: f64,
    /// Relative tolerance for naming shapes.
    pub classify: f64,
    /// Slack allowed on each ordering inequality, relative to `r12`.
    pub omega_band: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            relation: 1e-10,
            trapezoid: 1e-12,
            cayley_menger: 1e-10,
            dziobek: 1e-8,
            lambda_spread: 1e-8,
            sigma_spread: 1e-8,
            mass_consistency: 1e-8,
            classify: 1e-7,
            omega_band: 1e-10,
        }
    }
}

/// Multipliers of the constrained critical-point problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Multipliers {
    pub lambda: f64,
    pub sigma: f64,
    pub lambda_spread: f64,
    pub sigma_spread: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residuals {
    pub relation: f64,
    pub trapezoid: f64,
    pub cayley_menger: f64,
    pub dziobek: f64,
}

/// Every acceptance test a candidate solution must pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Gate {
    Realizable,
    Relation,
    Trapezoid,
    CayleyMenger,
    Dziobek,
    LambdaSpread,
    SigmaSpread,
    MassConsistency,
    PositiveMasses,
}

/// A fully evaluated candidate central configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct CCSolution {
    pub distances: DistanceVector,
    pub masses: MassVector,
    pub multipliers: Multipliers,
    pub residuals: Residuals,
    pub shape: ShapeClass,
    pub in_omega: bool,
    pub energetics: Energetics,
    pub realizable: bool,
}

impl CCSolution {
    /// Evaluates masses, multipliers, residuals and shape for `r`.
    ///
    /// Succeeds whenever the masses and `λ` can be computed; use
    /// [`CCSolution::gate_failures`] to decide whether `r` is actually a
    /// central configuration.
    pub fn evaluate(r: &DistanceVector, tol: &Tolerances) -> Result<Self, CcError> {
        r.validate()?;
        let masses = mass_ratios(r)?;
        Self::with_masses(r, masses, tol)
    }

    /// Like [`CCSolution::evaluate`] but with masses supplied by the caller,
    /// e.g. from a closed form on a branch where some ratio formulas are
    /// singular. Consistency is rescored against the ratio formulas.
    pub fn with_masses(r: &DistanceVector, masses: MassVector, tol: &Tolerances) -> Result<Self, CcError> {
        r.validate()?;
        let m = masses.to_array();
        let masses = MassVector { consistency: mass_consistency(r, &m), ..masses };
        let lambda = lambda_dziobek(r)?;
        let sigma = sigma_recover(r, &masses, lambda.lambda);
        let (dz1, dz2) = dziobek_residual(r);
        let residuals = Residuals {
            relation: relation_residual(r).normalized,
            trapezoid: trapezoid_residual(r).normalized,
            cayley_menger: cayley_menger(r) / r.r13.powi(8),
            dziobek: dz1.abs().max(dz2.abs()),
        };
        Ok(Self {
            distances: *r,
            masses,
            multipliers: Multipliers {
                lambda: lambda.lambda,
                sigma: sigma.sigma,
                lambda_spread: lambda.spread,
                sigma_spread: sigma.spread,
            },
            residuals,
            shape: classify_shape(r, tol.classify),
            in_omega: check_omega(r, tol.omega_band).in_omega,
            energetics: potential_inertia(r, &masses),
            realizable: realizability(r, tol.cayley_menger).is_realizable(),
        })
    }

    /// Gates this solution fails under `tol`; empty means accepted.
    pub fn gate_failures(&self, tol: &Tolerances) -> Vec<Gate> {
        let checks = [
            (Gate::Realizable, self.realizable),
            (Gate::Relation, self.residuals.relation.abs() < tol.relation),
            (Gate::Trapezoid, self.residuals.trapezoid.abs() < tol.trapezoid),
            (Gate::CayleyMenger, self.residuals.cayley_menger.abs() < tol.cayley_menger),
            (Gate::Dziobek, self.residuals.dziobek < tol.dziobek),
            (Gate::LambdaSpread, self.multipliers.lambda_spread < tol.lambda_spread),
            (Gate::SigmaSpread, self.multipliers.sigma_spread < tol.sigma_spread),
            (Gate::MassConsistency, self.masses.consistency < tol.mass_consistency),
            (Gate::PositiveMasses, self.masses.all_positive()),
        ];
        checks.into_iter().filter(|(_, ok)| !ok).map(|(gate, _)| gate).collect()
    }

    pub fn is_accepted(&self, tol: &Tolerances) -> bool {
        self.gate_failures(tol).is_empty()
    }

    pub fn flat(&self) -> FlatSolution {
        let r = &self.distances;
        FlatSolution {
            r12: r.r12,
            r13: r.r13,
            r14: r.r14,
            r23: r.r23,
            r24: r.r24,
            r34: r.r34,
            m1: self.masses.m1,
            m2: self.masses.m2,
            m3: self.masses.m3,
            m4: self.masses.m4,
            lambda: self.multipliers.lambda,
            sigma: self.multipliers.sigma,
            lambda_spread: self.multipliers.lambda_spread,
            sigma_spread: self.multipliers.sigma_spread,
            mass_consistency: self.masses.consistency,
            relation_residual: self.residuals.relation,
            trapezoid_residual: self.residuals.trapezoid,
            cayley_menger_residual: self.residuals.cayley_menger,
            dziobek_residual: self.residuals.dziobek,
            potential: self.energetics.potential,
            inertia: self.energetics.inertia,
            shape: self.shape.tag,
            in_omega: self.in_omega,
        }
    }
}

/// Flat JSON form of a [`CCSolution`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlatSolution {
    pub r12: f64,
    pub r13: f64,
    pub r14: f64,
    pub r23: f64,
    pub r24: f64,
    pub r34: f64,
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
    pub m4: f64,
    pub lambda: f64,
    pub sigma: f64,
    pub lambda_spread: f64,
    pub sigma_spread: f64,
    pub mass_consistency: f64,
    pub relation_residual: f64,
    pub trapezoid_residual: f64,
    pub cayley_menger_residual: f64,
    pub dziobek_residual: f64,
    pub potential: f64,
    pub inertia: f64,
    pub shape: ShapeTag,
    pub in_omega: bool,
}

impl Serialize for CCSolution {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.flat().serialize(s)
    }
}
