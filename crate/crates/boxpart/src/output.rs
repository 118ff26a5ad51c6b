//! Serializable document shapes. Big integers and exact rationals are always
//! decimal strings.

use boxpart_core::EnsembleSpec;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const FORMAT_VERSION: &str = "boxpart/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Rendered output of one command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputDocument {
    pub format: Format,
    pub body: String,
}

impl OutputDocument {
    pub fn json<T: Serialize>(value: &T) -> Result<Self> {
        let mut body = serde_json::to_string_pretty(value)
            .map_err(|e| CliError::Usage(format!("serialization failed: {e}")))?;
        body.push('\n');
        Ok(OutputDocument {
            format: Format::Json,
            body,
        })
    }

    pub fn csv(body: String) -> Self {
        OutputDocument {
            format: Format::Csv,
            body,
        }
    }
}

/// Echo of an ensemble spec, e.g. `{"kind":"pp","r":2,"s":3,"t":4}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SpecEcho {
    Pp { r: usize, s: usize, t: usize },
    Spp { r: usize, t: usize },
    Cspp { r: usize },
    FerrersHw { h: usize, w: usize },
    FerrersPerimeter { m: usize },
}

impl From<EnsembleSpec> for SpecEcho {
    fn from(spec: EnsembleSpec) -> Self {
        match spec {
            EnsembleSpec::Pp { r, s, t } => SpecEcho::Pp { r, s, t },
            EnsembleSpec::Spp { r, t } => SpecEcho::Spp { r, t },
            EnsembleSpec::Cspp { r } => SpecEcho::Cspp { r },
            EnsembleSpec::FerrersHw { h, w } => SpecEcho::FerrersHw { h, w },
            EnsembleSpec::FerrersPerimeter { m } => SpecEcho::FerrersPerimeter { m },
        }
    }
}

impl From<SpecEcho> for EnsembleSpec {
    fn from(echo: SpecEcho) -> Self {
        match echo {
            SpecEcho::Pp { r, s, t } => EnsembleSpec::Pp { r, s, t },
            SpecEcho::Spp { r, t } => EnsembleSpec::Spp { r, t },
            SpecEcho::Cspp { r } => EnsembleSpec::Cspp { r },
            SpecEcho::FerrersHw { h, w } => EnsembleSpec::FerrersHw { h, w },
            SpecEcho::FerrersPerimeter { m } => EnsembleSpec::FerrersPerimeter { m },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistDocument {
    pub format_version: String,
    pub source: String,
    pub spec: SpecEcho,
    pub bounding_volume: usize,
    pub total: String,
    /// Counts indexed by volume, starting at 0.
    pub counts: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentsDocument {
    pub format_version: String,
    pub spec: SpecEcho,
    pub mean: String,
    pub variance: String,
    pub mean_empirical: String,
    pub variance_empirical: String,
    pub variance_cumulant: String,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergeRow {
    pub size: usize,
    pub spec: SpecEcho,
    pub ks_distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergeDocument {
    pub format_version: String,
    pub family: String,
    pub law: String,
    pub normalization: String,
    pub rows: Vec<ConvergeRow>,
    pub nonincreasing: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triplet {
    pub height: usize,
    pub area: usize,
    pub count: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JointDocument {
    pub format_version: String,
    pub m: usize,
    pub total: String,
    pub triplets: Vec<Triplet>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionalKs {
    pub height: usize,
    pub ks_distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsDocument {
    pub format_version: String,
    pub m: usize,
    pub area_mean_exact: String,
    pub area_variance_exact: String,
    pub height_mean_exact: String,
    pub height_variance_exact: String,
    pub covariance_exact: String,
    pub standardized_area_mean: f64,
    pub standardized_area_variance: String,
    pub standardized_height_mean: f64,
    pub standardized_height_variance: String,
    pub correlation: f64,
    pub conditional_ks: Vec<ConditionalKs>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleDocument {
    pub format_version: String,
    pub spec: SpecEcho,
    pub n: usize,
    pub seed: u64,
    pub volumes: Vec<usize>,
}

pub fn decimal(n: &BigInt) -> String {
    n.to_string()
}

/// `"p/q"`, or `"p"` for integers.
pub fn rational(x: &BigRational) -> String {
    x.to_string()
}
