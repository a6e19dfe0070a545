//! Run configuration: flags merged over an optional flat JSON file.

use std::path::{Path, PathBuf};

use bilayer_core::{CaseKind, RawParams};
use clap::{Args, ValueEnum};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    #[default]
    Natural,
    Physical,
}

/// Flags shared by every case-driven verb.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Field profile: constant, hyperbolic-well, trig-singular, exp-decay,
    /// hyperbolic-singular or singular (roman numerals I-VI also accepted).
    #[arg(long)]
    pub case: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long = "D", allow_hyphen_values = true)]
    pub d: Option<f64>,
    /// Wave number along y.
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<f64>,
    /// Field amplitude, used when omega or D is not given.
    #[arg(long = "B0", allow_hyphen_values = true)]
    pub b0: Option<f64>,
    #[arg(long)]
    pub nmax: Option<usize>,
    /// Fixed box `lo,hi` replacing the automatic window.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub window: Option<(f64, f64)>,
    #[arg(long = "grid-n")]
    pub grid_n: Option<usize>,
    /// Offset from singular walls.
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, value_enum)]
    pub units: Option<Units>,
    /// Length unit in nanometres for physical output.
    #[arg(long = "length-scale")]
    pub length_scale: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Flat JSON file with any of the keys above; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Parses `lo,hi`.
pub fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `lo,hi`, got `{s}`"))?;
    let parse = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("`{v}`: {e}"));
    Ok((parse(lo)?, parse(hi)?))
}

/// Keys accepted in a config file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub case: Option<String>,
    pub omega: Option<f64>,
    pub alpha: Option<f64>,
    #[serde(rename = "D")]
    pub d: Option<f64>,
    pub k: Option<f64>,
    #[serde(rename = "B0")]
    pub b0: Option<f64>,
    pub nmax: Option<usize>,
    pub window: Option<[f64; 2]>,
    pub grid_n: Option<usize>,
    pub delta: Option<f64>,
    pub format: Option<Format>,
    pub units: Option<Units>,
    pub length_scale: Option<f64>,
    pub out: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|e| CliError::Config {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub kind: CaseKind,
    pub raw: RawParams,
    pub nmax: Option<usize>,
    pub window: Option<(f64, f64)>,
    pub grid_n: Option<usize>,
    pub delta: Option<f64>,
    pub format: Format,
    pub units: Units,
    /// Nanometres.
    pub length_scale: f64,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn resolve(args: &CommonArgs) -> Result<Self, CliError> {
        let file = match &args.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        let case = args
            .case
            .clone()
            .or(file.case)
            .ok_or_else(|| CliError::Usage("missing --case".into()))?;
        let kind: CaseKind = case.parse()?;
        let window = match (&args.window, file.window) {
            (Some(w), _) => Some(*w),
            (None, Some([lo, hi])) => Some((lo, hi)),
            (None, None) => None,
        };
        if let Some((lo, hi)) = window {
            if lo >= hi || lo.is_nan() || hi.is_nan() {
                return Err(CliError::Usage(format!(
                    "window needs lo < hi, got {lo},{hi}"
                )));
            }
        }
        let length_scale = args.length_scale.or(file.length_scale).unwrap_or(1.0);
        if !(length_scale > 0.0 && length_scale.is_finite()) {
            return Err(CliError::Usage(format!(
                "length scale must be positive, got {length_scale}"
            )));
        }
        Ok(Self {
            kind,
            raw: RawParams {
                omega: args.omega.or(file.omega),
                alpha: args.alpha.or(file.alpha),
                d: args.d.or(file.d),
                k: args.k.or(file.k).unwrap_or(0.0),
                b0: args.b0.or(file.b0),
            },
            nmax: args.nmax.or(file.nmax),
            window,
            grid_n: args.grid_n.or(file.grid_n),
            delta: args.delta.or(file.delta),
            format: args.format.or(file.format).unwrap_or_default(),
            units: args.units.or(file.units).unwrap_or_default(),
            length_scale,
            out: args.out.clone().or(file.out),
        })
    }

    pub fn length_scale_m(&self) -> f64 {
        self.length_scale * 1e-9
    }
}
