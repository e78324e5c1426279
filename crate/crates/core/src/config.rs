//! Run configuration shared by the library entry points and the CLI.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_CAP: u64 = 1_000_000;

/// Environment variable that replaces [`DEFAULT_CAP`] for every cap.
pub const CAP_ENV: &str = "TENSOR_ATOMS_CAP";

/// Enumeration limits. Exceeding one is always an error, never a silent
/// truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Caps {
    /// Tableau pairs for the brute-force product histogram (`d_λ · d_μ`).
    pub oracle_pairs: u64,
    /// Candidate next rows per level for the pattern sampler.
    pub sampler_rows: u64,
    /// Candidate rows per level when building first-row distributions.
    pub support: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps::uniform(DEFAULT_CAP)
    }
}

impl Caps {
    pub fn uniform(cap: u64) -> Self {
        Caps { oracle_pairs: cap, sampler_rows: cap, support: cap }
    }

    /// Defaults, overridden by `TENSOR_ATOMS_CAP` when it is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(CAP_ENV) {
            Ok(v) => Ok(Caps::uniform(parse_cap(&v)?)),
            Err(_) => Ok(Caps::default()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.oracle_pairs == 0 || self.sampler_rows == 0 || self.support == 0 {
            return Err(Error::Parse("caps must be positive".into()));
        }
        Ok(())
    }
}

pub fn parse_cap(s: &str) -> Result<u64> {
    let cap: u64 = s
        .trim()
        .replace('_', "")
        .parse()
        .map_err(|_| Error::Parse(format!("cap `{s}` is not a positive integer")))?;
    if cap == 0 {
        return Err(Error::Parse("cap must be positive".into()));
    }
    Ok(cap)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Parse(format!("unknown format `{other}` (json|csv)"))),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OutputConfig {
    pub path: Option<PathBuf>,
    pub format: Format,
}

/// Settings that can come from a TOML file; command-line flags override them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub n: Option<usize>,
    pub weights: Vec<String>,
    pub caps: Caps,
    pub seed: u64,
    pub output: OutputConfig,
    pub significance: f64,
    pub workers: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n: None,
            weights: Vec::new(),
            caps: Caps::default(),
            seed: 0,
            output: OutputConfig::default(),
            significance: 0.001,
            workers: None,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let cfg: RunConfig =
            toml::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.caps.validate()?;
        if !(self.significance > 0.0 && self.significance < 1.0) {
            return Err(Error::Parse(format!(
                "significance {} must lie in (0, 1)",
                self.significance
            )));
        }
        if self.n == Some(0) {
            return Err(Error::Parse("n must be at least 1".into()));
        }
        if self.workers == Some(0) {
            return Err(Error::Parse("workers must be at least 1".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_round_trip() {
        let text = r#"
            n = 3
            weights = ["2,1,0", "1,1,0"]
            seed = 7
            significance = 0.01
            [caps]
            oracle_pairs = 500
            [output]
            format = "csv"
            path = "out.csv"
        "#;
        let cfg: RunConfig = toml::from_str(text).unwrap();
        cfg.validate().unwrap();
        assert_eq!(cfg.n, Some(3));
        assert_eq!(cfg.caps.oracle_pairs, 500);
        assert_eq!(cfg.caps.sampler_rows, DEFAULT_CAP);
        assert_eq!(cfg.output.format, Format::Csv);
        let back: RunConfig = toml::from_str(&toml::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn invalid_configs() {
        let cfg = RunConfig { caps: Caps { support: 0, ..Caps::default() }, ..Default::default() };
        assert!(cfg.validate().is_err());
        let cfg = RunConfig { significance: 1.5, ..Default::default() };
        assert!(cfg.validate().is_err());
        assert!(toml::from_str::<RunConfig>("[output]\nformat = \"xml\"").is_err());
        assert!(parse_cap("0").is_err());
        assert_eq!(parse_cap("1_000").unwrap(), 1000);
        assert!("yaml".parse::<Format>().is_err());
    }
}
