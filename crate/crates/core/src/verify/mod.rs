//! Executable checks of the structural results on trapezoidal central
//! configurations, run over solution corpora and random samples.

mod omega;
mod report;
mod sampler;
mod theorems;

use serde::Serialize;

use crate::ccsystem::CCSolution;
use crate::golden;
use crate::solver::{scan_family, ScanConfig, SolveError};

pub use omega::{check_omega, OmegaVerdict, Slack};
pub use report::{render_table, CaseFailure, TheoremReport, Witness};
pub use sampler::sample_omega_trapezoids;
pub use theorems::{
    decreasing_ratio, verify_decreasing_ratio, verify_diagonal_gap, verify_gradient_identity, verify_lemma_r3412,
    verify_mass_ordering, verify_symmetry_propositions, SymmetryTolerances, VerifyError,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    MassOrdering,
    LemmaR3412,
    DecreasingRatio,
    DiagonalGap,
    Symmetry,
    Gradcheck,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::MassOrdering,
        Suite::LemmaR3412,
        Suite::DecreasingRatio,
        Suite::DiagonalGap,
        Suite::Symmetry,
        Suite::Gradcheck,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::MassOrdering => "mass-ordering",
            Suite::LemmaR3412 => "lemma-r3412",
            Suite::DecreasingRatio => "decreasing-ratio",
            Suite::DiagonalGap => "diagonal-gap",
            Suite::Symmetry => "symmetry",
            Suite::Gradcheck => "gradcheck",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|suite| suite.name() == s)
    }
}

/// Inputs shared by the suites.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyConfig {
    /// Scan whose accepted solutions form the mass-ordering corpus.
    pub scan: ScanConfig,
    /// Random trapezoids for the lemma suites.
    pub samples: usize,
    /// Random trapezoids added to the golden set for the gradient check.
    pub gradient_samples: usize,
    pub seed: u64,
    pub mass_tol: f64,
    pub lemma_tol: f64,
    pub gradient_tol: f64,
    pub symmetry: SymmetryTolerances,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            scan: ScanConfig::default(),
            samples: 1000,
            gradient_samples: 100,
            seed: 20_240_917,
            mass_tol: 1e-10,
            lemma_tol: 1e-12,
            gradient_tol: 1e-6,
            symmetry: SymmetryTolerances::default(),
        }
    }
}

/// Runs the requested suites in order. Random corpora are drawn once from
/// `cfg.seed`, so reports are reproducible.
pub fn run_suites(suites: &[Suite], cfg: &VerifyConfig) -> Result<Vec<TheoremReport>, SolveError> {
    let a = cfg.scan.a_fixed;
    let mut corpus: Option<Vec<CCSolution>> = None;
    let samples = sample_omega_trapezoids(cfg.samples, a, cfg.seed);
    let mut reports = Vec::with_capacity(suites.len());
    for suite in suites {
        let report = match suite {
            Suite::MassOrdering => {
                if corpus.is_none() {
                    corpus = Some(scan_family(&cfg.scan)?.solutions);
                }
                let mut report = verify_mass_ordering(corpus.as_deref().unwrap_or_default(), cfg.mass_tol);
                if report.cases_checked == 0 {
                    report.note("scan produced no accepted solutions");
                }
                report
            }
            Suite::LemmaR3412 => verify_lemma_r3412(&samples, cfg.lemma_tol, 1e-9),
            Suite::DecreasingRatio => verify_decreasing_ratio(&samples),
            Suite::DiagonalGap => verify_diagonal_gap(&samples, cfg.lemma_tol),
            Suite::Symmetry => verify_symmetry_propositions(&cfg.symmetry),
            Suite::Gradcheck => {
                let mut set: Vec<_> = [golden::E1, golden::E2, golden::E3, golden::SQ, golden::ISO]
                    .iter()
                    .map(|g| g.distances())
                    .collect();
                set.extend(sample_omega_trapezoids(cfg.gradient_samples, a, cfg.seed ^ 0x9e37_79b9));
                verify_gradient_identity(&set, cfg.gradient_tol)
            }
        };
        reports.push(report);
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(Suite::parse(suite.name()), Some(suite));
        }
        assert_eq!(Suite::parse("nope"), None);
    }

    #[test]
    fn lemma_suites_pass_on_samples() {
        let cfg = VerifyConfig { samples: 300, ..VerifyConfig::default() };
        let reports = run_suites(&[Suite::LemmaR3412, Suite::DecreasingRatio, Suite::DiagonalGap], &cfg).unwrap();
        for r in &reports {
            assert!(r.passed(), "{}", render_table(&reports));
            assert_eq!(r.cases_checked, 300);
        }
    }
}
