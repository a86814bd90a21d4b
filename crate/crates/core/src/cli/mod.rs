//! Command-line front end.
//!
//! [`run`] parses arguments, dispatches to a subcommand and returns the
//! process exit code: 0 on success, 1 when a check fails, 2 on usage, parse
//! or I/O errors.

mod commands;
mod config;
mod input;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use crate::golden;
pub use config::{ConfigError, Format, RunConfig};
pub use input::{InputArgs, Loaded, ROUNDING_NOTE};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("config {path}: {source}")]
    Config { path: String, source: ConfigError },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Parser)]
#[command(name = "trapcc", version, about = "Trapezoidal central configurations of the four-body problem")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by all subcommands.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Flat `key = value` settings file.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Normalized relation residual threshold.
    #[arg(long, global = true, value_name = "TOL")]
    pub tol_relation: Option<f64>,
    #[arg(long, global = true, value_name = "TOL")]
    pub tol_trapezoid: Option<f64>,
    /// Threshold on |H| / r13⁸.
    #[arg(long, global = true, value_name = "TOL")]
    pub tol_cayley_menger: Option<f64>,
    #[arg(long, global = true, value_name = "TOL")]
    pub tol_dziobek: Option<f64>,
    /// Threshold on the λ and σ spreads.
    #[arg(long, global = true, value_name = "TOL")]
    pub tol_spread: Option<f64>,
    /// Mass-ratio consistency threshold.
    #[arg(long, global = true, value_name = "TOL")]
    pub tol_mass: Option<f64>,
    #[arg(long, global = true, value_name = "TOL")]
    pub tol_root: Option<f64>,
    /// Gradient identity threshold.
    #[arg(long, global = true, value_name = "TOL")]
    pub tol_grad: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print every constraint residual and the ordering verdict.
    Validate {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Masses (m1 = 1), multipliers and consistency of a configuration.
    Masses {
        #[command(flatten)]
        input: InputArgs,
        /// Report even when the configuration fails the acceptance gates.
        #[arg(long)]
        force: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Sweep the (c, d) grid at fixed base and solve for the remaining leg.
    Scan {
        /// Worker threads (default: all cores).
        #[arg(long)]
        threads: Option<usize>,
        /// CSV destination (default stdout).
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
        /// JSON summary destination.
        #[arg(long, value_name = "FILE")]
        summary: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Move (c, d) until two chosen masses are equal.
    SolveEqualMass {
        /// Bodies to balance, e.g. `3,4`.
        #[arg(long, default_value = "1,2", value_name = "I,J")]
        pair: String,
        /// Starting (c, d).
        #[arg(long, default_value = "4.4,7.6", value_name = "C,D")]
        init: String,
        /// Fixed base length.
        #[arg(long, default_value_t = 8.0)]
        a: f64,
        /// Pin the trapezoid height to select one point of the solution curve.
        #[arg(long)]
        height: Option<f64>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the theorem suites; nonzero exit on any violation.
    Verify {
        /// Suites to run (default all): mass-ordering, lemma-r3412,
        /// decreasing-ratio, diagonal-gap, symmetry, gradcheck.
        #[arg(long = "suite", value_name = "NAME")]
        suites: Vec<String>,
        /// Random trapezoids for the lemma suites.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Compare the numerical gradient of H with 8h² ∇F.
    Gradcheck {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Planar coordinates of the four bodies as `label,x,y`.
    Embed {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
        /// Recompute the distances from the coordinates and compare.
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match commands::dispatch(cli.command, out, err) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_CHECK_FAILED,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("trapcc").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_str(&["validate", "--golden", "E1"]).0, EXIT_OK);
        assert_eq!(run_str(&["validate", "--golden", "ISO"]).0, EXIT_CHECK_FAILED);
        assert_eq!(run_str(&["validate", "--json", "{not json"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["validate", "--golden", "E1", "--json", "{}"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn masses_json() {
        let (code, out, _) = run_str(&["masses", "--golden", "E2", "--format", "json"]);
        assert_eq!(code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let m1_m2 = v["ratios"]["m1/m2"].as_f64().unwrap();
        assert!((m1_m2 - 0.690_744_803_374_469_8).abs() < 1e-9);
        assert_eq!(v["meta"]["rounding"], ROUNDING_NOTE);
    }
}
