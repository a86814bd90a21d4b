use std::path::PathBuf;

use clap::Args;

use super::CliError;
use crate::geometry::DistanceVector;
use crate::golden;

/// Where a distance vector comes from. Exactly one source may be given.
#[derive(Debug, Clone, Default, Args)]
#[group(multiple = false)]
pub struct InputArgs {
    /// Named reference configuration: E1, E2, E3, SQ or ISO.
    #[arg(long, value_name = "NAME")]
    pub golden: Option<String>,
    /// JSON file with fields r12, r13, r14, r23, r24, r34.
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// The same JSON object given inline.
    #[arg(long, value_name = "JSON")]
    pub json: Option<String>,
}

/// A resolved input with a label for reports.
#[derive(Debug, Clone, PartialEq)]
pub struct Loaded {
    pub distances: DistanceVector,
    pub source: String,
}

pub const ROUNDING_NOTE: &str = "decimal inputs are rounded to the nearest binary64 value";

fn parse_json(text: &str, origin: &str) -> Result<DistanceVector, CliError> {
    let r: DistanceVector = serde_json::from_str(text).map_err(|e| CliError::Parse(format!("{origin}: {e}")))?;
    r.validate().map_err(|e| CliError::Parse(format!("{origin}: {e}")))?;
    Ok(r)
}

impl InputArgs {
    pub fn is_empty(&self) -> bool {
        self.golden.is_none() && self.input.is_none() && self.json.is_none()
    }

    pub fn load(&self) -> Result<Loaded, CliError> {
        if let Some(name) = &self.golden {
            let entry = golden::lookup(name).ok_or_else(|| {
                let known: Vec<_> = golden::REGISTRY.iter().map(|g| g.name).collect();
                CliError::Usage(format!("unknown golden configuration `{name}` (known: {})", known.join(", ")))
            })?;
            return Ok(Loaded { distances: entry.distances(), source: format!("golden {}", entry.name) });
        }
        if let Some(path) = &self.input {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            let origin = path.display().to_string();
            return Ok(Loaded { distances: parse_json(&text, &origin)?, source: origin });
        }
        if let Some(text) = &self.json {
            return Ok(Loaded { distances: parse_json(text, "--json")?, source: "inline".into() });
        }
        Err(CliError::Usage("no input: pass --golden, --input or --json".into()))
    }
}
