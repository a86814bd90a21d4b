use std::collections::BTreeSet;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use crate::solver::ScanConfig;
use crate::verify::VerifyConfig;

/// Output selector shared by every subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

/// Settings read from a flat `key = value` file. Blank lines and `#`
/// comments are ignored; unknown or repeated keys are errors.
///
/// | key | default |
/// |---|---|
/// | `a_fixed` | 8 |
/// | `c_min`, `c_max`, `c_steps` | 0.5, 7.9, 50 |
/// | `d_min`, `d_max`, `d_steps` | 7.0, 8.0, 50 |
/// | `panels` | 64 |
/// | `tol_root` | 1e-13 |
/// | `tol_relation` | 1e-10 |
/// | `tol_trapezoid` | 1e-12 |
/// | `tol_cayley_menger` | 1e-10 |
/// | `tol_dziobek` | 1e-8 |
/// | `tol_spread` | 1e-8 (λ and σ spreads) |
/// | `tol_mass` | 1e-8 (ratio consistency) |
/// | `omega_band` | 1e-10 |
/// | `samples`, `gradient_samples`, `seed` | 1000, 100, fixed |
/// | `threads` | all cores |
/// | `format` | table |
/// | `csv_output`, `summary_output` | stdout |
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct RunConfig {
    pub scan: ScanConfig,
    pub verify: VerifyConfig,
    pub threads: Option<usize>,
    pub format: Option<Format>,
    pub csv_output: Option<PathBuf>,
    pub summary_output: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

fn parse_value<T: FromStr>(line: usize, key: &str, value: &str) -> Result<T, ConfigError> {
    value.parse().map_err(|_| ConfigError { line, message: format!("`{key}`: cannot parse `{value}`") })
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = RunConfig::default();
        let mut seen = BTreeSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(ConfigError { line, message: format!("expected `key = value`, found `{content}`") });
            };
            let (key, value) = (key.trim(), value.trim());
            if !seen.insert(key.to_string()) {
                return Err(ConfigError { line, message: format!("`{key}` given twice") });
            }
            cfg.set(line, key, value)?;
        }
        cfg.scan.validate().map_err(|e| ConfigError { line: 0, message: e.to_string() })?;
        Ok(cfg)
    }

    fn set(&mut self, line: usize, key: &str, value: &str) -> Result<(), ConfigError> {
        let f = || parse_value::<f64>(line, key, value);
        let n = || parse_value::<usize>(line, key, value);
        let s = &mut self.scan;
        let t = &mut s.tolerances;
        match key {
            "a_fixed" => s.a_fixed = f()?,
            "c_min" => s.c_range.min = f()?,
            "c_max" => s.c_range.max = f()?,
            "c_steps" => s.c_range.steps = n()?,
            "d_min" => s.d_range.min = f()?,
            "d_max" => s.d_range.max = f()?,
            "d_steps" => s.d_range.steps = n()?,
            "panels" => s.panels = n()?,
            "tol_root" => s.tol_root = f()?,
            "tol_relation" => t.relation = f()?,
            "tol_trapezoid" => t.trapezoid = f()?,
            "tol_cayley_menger" => t.cayley_menger = f()?,
            "tol_dziobek" => t.dziobek = f()?,
            "tol_spread" => {
                t.lambda_spread = f()?;
                t.sigma_spread = t.lambda_spread;
            }
            "tol_mass" => t.mass_consistency = f()?,
            "omega_band" => t.omega_band = f()?,
            "samples" => self.verify.samples = n()?,
            "gradient_samples" => self.verify.gradient_samples = n()?,
            "seed" => self.verify.seed = parse_value(line, key, value)?,
            "threads" => self.threads = Some(n()?),
            "format" => {
                let format = <Format as clap::ValueEnum>::from_str(value, true).map_err(|_| ConfigError {
                    line,
                    message: format!("`format`: expected table, json or csv, found `{value}`"),
                })?;
                self.format = Some(format);
            }
            "csv_output" => self.csv_output = Some(PathBuf::from(value)),
            "summary_output" => self.summary_output = Some(PathBuf::from(value)),
            _ => return Err(ConfigError { line, message: format!("unknown key `{key}`") }),
        }
        Ok(())
    }

    /// Keeps the verify suites on the same grid and tolerances as the scan.
    pub fn sync(&mut self) {
        self.verify.scan = self.scan;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_known_keys() {
        let text = "# grid\na_fixed = 8\nc_min = 1.0\nc_max = 7.0  # upper\nc_steps = 10\n\ntol_relation = 1e-9\nformat = csv\nthreads = 2\n";
        let cfg = RunConfig::parse(text).unwrap();
        assert_eq!(cfg.scan.c_range.steps, 10);
        assert_eq!(cfg.scan.c_range.max, 7.0);
        assert_eq!(cfg.scan.tolerances.relation, 1e-9);
        assert_eq!(cfg.format, Some(Format::Csv));
        assert_eq!(cfg.threads, Some(2));
    }

    #[test]
    fn rejects_unknown_and_malformed() {
        let err = RunConfig::parse("a_fixed = 8\nbogus = 1\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("bogus"));
        assert_eq!(RunConfig::parse("c_steps = many").unwrap_err().line, 1);
        assert_eq!(RunConfig::parse("a_fixed 8").unwrap_err().line, 1);
        assert_eq!(RunConfig::parse("panels = 3\npanels = 4").unwrap_err().line, 2);
    }

    #[test]
    fn validates_ranges() {
        let err = RunConfig::parse("c_max = 9").unwrap_err();
        assert!(err.message.contains("c_max"));
    }
}
