use std::fmt::Write as _;

use boxpart_core::ensembles::{distribution, EnsembleSpec, VolumeDistribution};
use boxpart_core::ferrers::{self, PerimeterCap};
use boxpart_core::limits::{convergence_table, Normalization, ReferenceLaw};
use boxpart_core::moments;
use boxpart_core::oracle::{self, OracleCaps};
use boxpart_core::qpoly::DegreeCap;
use boxpart_core::Error;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{CliError, Result};
use crate::output::{
    decimal, rational, ConditionalKs, ConvergeDocument, ConvergeRow, DiagnosticsDocument, DistDocument,
    Format, JointDocument, MomentsDocument, OutputDocument, SampleDocument, SpecEcho, Triplet,
    FORMAT_VERSION,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Settings {
    pub degree_cap: DegreeCap,
    pub perimeter_cap: PerimeterCap,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            degree_cap: DegreeCap::DEFAULT,
            perimeter_cap: PerimeterCap::DEFAULT,
        }
    }
}

fn dist_document(dist: &VolumeDistribution, source: &str) -> DistDocument {
    DistDocument {
        format_version: FORMAT_VERSION.to_string(),
        source: source.to_string(),
        spec: (*dist.spec()).into(),
        bounding_volume: dist.bounding_volume(),
        total: decimal(dist.total()),
        counts: (0..=dist.bounding_volume()).map(|k| decimal(&dist.count(k))).collect(),
    }
}

fn render_dist(dist: &VolumeDistribution, source: &str, format: Format) -> Result<OutputDocument> {
    match format {
        Format::Json => OutputDocument::json(&dist_document(dist, source)),
        Format::Csv => {
            let mut body = String::from("volume,count\n");
            for k in 0..=dist.bounding_volume() {
                writeln!(body, "{k},{}", dist.count(k)).unwrap();
            }
            Ok(OutputDocument::csv(body))
        }
    }
}

/// Parses a [`DistDocument`] back into an in-process distribution.
pub fn parse_dist_document(doc: &DistDocument) -> Result<VolumeDistribution> {
    let counts = doc
        .counts
        .iter()
        .map(|c| c.parse().map_err(|e| CliError::Usage(format!("bad count {c:?}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(VolumeDistribution::new(
        doc.spec.into(),
        boxpart_core::ExactPolynomial::from_coeffs(counts),
    ))
}

pub fn cmd_dist(spec: &EnsembleSpec, format: Format, settings: &Settings) -> Result<OutputDocument> {
    let dist = distribution(spec, settings.degree_cap)?;
    render_dist(&dist, "generating-function", format)
}

pub fn cmd_oracle(spec: &EnsembleSpec, format: Format) -> Result<OutputDocument> {
    let caps = OracleCaps::default();
    let result = match *spec {
        EnsembleSpec::Pp { r, s, t } => oracle::enumerate_pp(r, s, t, &caps)?,
        EnsembleSpec::Spp { r, t } => oracle::enumerate_spp(r, t, &caps)?,
        EnsembleSpec::Cspp { r } => oracle::enumerate_cspp(r, &caps)?,
        EnsembleSpec::FerrersHw { h, w } => oracle::enumerate_ferrers(h, w, &caps)?,
        EnsembleSpec::FerrersPerimeter { .. } => return Err(Error::UnsupportedSpec(spec.kind()).into()),
    };
    render_dist(result.distribution(), "enumeration", format)
}

pub fn cmd_moments(spec: &EnsembleSpec, format: Format, settings: &Settings) -> Result<OutputDocument> {
    let (mean, variance) = match *spec {
        EnsembleSpec::FerrersHw { h, w } => {
            spec.validate()?;
            (ferrers::hw_mean_closed(h, w), ferrers::hw_variance_closed(h, w))
        }
        _ => (moments::mean_closed(spec)?, moments::variance_closed(spec)?),
    };
    let product = boxpart_core::ensembles::factor_product(spec)?;
    let variance_cumulant = moments::cumulant_variance(&product);
    let dist = distribution(spec, settings.degree_cap)?;
    let mean_empirical = moments::empirical_moment(&dist, 1);
    let variance_empirical = moments::empirical_central_moment(&dist, 2);
    let equal = mean == mean_empirical && variance == variance_empirical && variance == variance_cumulant;
    let doc = MomentsDocument {
        format_version: FORMAT_VERSION.to_string(),
        spec: (*spec).into(),
        mean: rational(&mean),
        variance: rational(&variance),
        mean_empirical: rational(&mean_empirical),
        variance_empirical: rational(&variance_empirical),
        variance_cumulant: rational(&variance_cumulant),
        equal,
    };
    match format {
        Format::Json => OutputDocument::json(&doc),
        Format::Csv => Ok(OutputDocument::csv(format!(
            "quantity,value\nmean,{}\nvariance,{}\nmean_empirical,{}\nvariance_empirical,{}\nvariance_cumulant,{}\nequal,{}\n",
            doc.mean, doc.variance, doc.mean_empirical, doc.variance_empirical, doc.variance_cumulant, doc.equal
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Family {
    /// PP(n, n, n)
    PpCube,
    /// PP(r, s, t) with r, s fixed
    PpFixedRs,
    /// SPP(r, t) with r fixed
    SppFixedR,
    /// CSPP(r)
    Cspp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum LawChoice {
    Gaussian,
    UniformConv,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::PpCube => "pp-cube",
            Family::PpFixedRs => "pp-fixed-rs",
            Family::SppFixedR => "spp-fixed-r",
            Family::Cspp => "cspp",
        }
    }

    fn spec(self, size: usize, r: Option<usize>, s: Option<usize>) -> Result<EnsembleSpec> {
        let need = |v: Option<usize>, flag: &str| {
            v.ok_or_else(|| CliError::Usage(format!("family {} needs --{flag}", self.name())))
        };
        Ok(match self {
            Family::PpCube => EnsembleSpec::pp(size, size, size)?,
            Family::PpFixedRs => EnsembleSpec::pp(need(r, "r")?, need(s, "s")?, size)?,
            Family::SppFixedR => EnsembleSpec::spp(need(r, "r")?, size)?,
            Family::Cspp => EnsembleSpec::cspp(size)?,
        })
    }
}

pub fn cmd_converge(
    family: Family,
    sizes: &[usize],
    law: LawChoice,
    r: Option<usize>,
    s: Option<usize>,
    format: Format,
    settings: &Settings,
) -> Result<OutputDocument> {
    if sizes.is_empty() {
        return Err(CliError::Usage("empty size range".into()));
    }
    let specs = sizes
        .iter()
        .map(|&n| family.spec(n, r, s))
        .collect::<Result<Vec<_>>>()?;
    let (norm, reference) = match (law, family) {
        (LawChoice::Gaussian, _) => (Normalization::Standardize, ReferenceLaw::StandardGaussian),
        (LawChoice::UniformConv, Family::PpFixedRs | Family::SppFixedR) => {
            (Normalization::ScaleByT, ReferenceLaw::scaling_limit(&specs[0])?)
        }
        (LawChoice::UniformConv, _) => {
            return Err(CliError::Usage(format!(
                "family {} has no uniform-convolution limit",
                family.name()
            )))
        }
    };
    let report = convergence_table(&specs, norm, &reference, settings.degree_cap)?;
    let law_name = match reference {
        ReferenceLaw::StandardGaussian => "gaussian".to_string(),
        ReferenceLaw::UniformConvolution { unit, double } => format!("uniform-conv({unit},{double})"),
    };
    let doc = ConvergeDocument {
        format_version: FORMAT_VERSION.to_string(),
        family: family.name().to_string(),
        law: law_name,
        normalization: norm.name().to_string(),
        rows: sizes
            .iter()
            .zip(&report.rows)
            .map(|(&size, row)| ConvergeRow {
                size,
                spec: row.spec.into(),
                ks_distance: row.ks,
            })
            .collect(),
        nonincreasing: report.nonincreasing,
    };
    match format {
        Format::Json => OutputDocument::json(&doc),
        Format::Csv => {
            let mut body = String::from("size,ks_distance\n");
            for row in &doc.rows {
                writeln!(body, "{},{}", row.size, row.ks_distance).unwrap();
            }
            writeln!(body, "# nonincreasing={}", doc.nonincreasing).unwrap();
            Ok(OutputDocument::csv(body))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FerrersView {
    Joint,
    Diagnostics,
}

pub fn cmd_ferrers(m: usize, what: FerrersView, format: Format, settings: &Settings) -> Result<OutputDocument> {
    let joint = ferrers::perimeter_joint(m, settings.perimeter_cap, settings.degree_cap)?;
    match what {
        FerrersView::Joint => {
            let doc = JointDocument {
                format_version: FORMAT_VERSION.to_string(),
                m,
                total: decimal(joint.total()),
                triplets: joint
                    .triplets()
                    .map(|(height, area, c)| Triplet {
                        height,
                        area,
                        count: decimal(c),
                    })
                    .collect(),
            };
            match format {
                Format::Json => OutputDocument::json(&doc),
                Format::Csv => {
                    let mut body = String::from("height,area,count\n");
                    for t in &doc.triplets {
                        writeln!(body, "{},{},{}", t.height, t.area, t.count).unwrap();
                    }
                    Ok(OutputDocument::csv(body))
                }
            }
        }
        FerrersView::Diagnostics => {
            let d = ferrers::joint_diagnostics(&joint)?;
            let doc = DiagnosticsDocument {
                format_version: FORMAT_VERSION.to_string(),
                m,
                area_mean_exact: rational(&d.moments.area_mean),
                area_variance_exact: rational(&d.moments.area_variance),
                height_mean_exact: rational(&d.moments.height_mean),
                height_variance_exact: rational(&d.moments.height_variance),
                covariance_exact: rational(&d.moments.covariance),
                standardized_area_mean: d.area_mean,
                standardized_area_variance: rational(&d.area_variance),
                standardized_height_mean: d.height_mean,
                standardized_height_variance: rational(&d.height_variance),
                correlation: d.correlation,
                conditional_ks: d
                    .conditional_ks
                    .iter()
                    .map(|&(height, ks_distance)| ConditionalKs { height, ks_distance })
                    .collect(),
            };
            match format {
                Format::Json => OutputDocument::json(&doc),
                Format::Csv => {
                    let mut body = String::from("quantity,value\n");
                    for (k, v) in [
                        ("area_mean_exact", doc.area_mean_exact.clone()),
                        ("area_variance_exact", doc.area_variance_exact.clone()),
                        ("height_mean_exact", doc.height_mean_exact.clone()),
                        ("height_variance_exact", doc.height_variance_exact.clone()),
                        ("covariance_exact", doc.covariance_exact.clone()),
                        ("standardized_area_mean", doc.standardized_area_mean.to_string()),
                        ("standardized_area_variance", doc.standardized_area_variance.clone()),
                        ("standardized_height_mean", doc.standardized_height_mean.to_string()),
                        ("standardized_height_variance", doc.standardized_height_variance.clone()),
                        ("correlation", doc.correlation.to_string()),
                    ] {
                        writeln!(body, "{k},{v}").unwrap();
                    }
                    for c in &doc.conditional_ks {
                        writeln!(body, "conditional_ks_h{},{}", c.height, c.ks_distance).unwrap();
                    }
                    Ok(OutputDocument::csv(body))
                }
            }
        }
    }
}

/// `n` volumes by inverse-CDF lookup of 128-bit ChaCha20 draws.
pub fn sample_volumes(dist: &VolumeDistribution, n: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let cumulative = dist.cumulative_counts();
    (0..n)
        .map(|_| {
            let draw = (u128::from(rng.next_u64()) << 64) | u128::from(rng.next_u64());
            dist.volume_for_draw(&cumulative, draw)
        })
        .collect()
}

pub fn cmd_sample(spec: &EnsembleSpec, n: usize, seed: u64, format: Format, settings: &Settings) -> Result<OutputDocument> {
    if n == 0 {
        return Err(CliError::Usage("sample size must be at least 1".into()));
    }
    let dist = distribution(spec, settings.degree_cap)?;
    let volumes = sample_volumes(&dist, n, seed);
    match format {
        Format::Json => OutputDocument::json(&SampleDocument {
            format_version: FORMAT_VERSION.to_string(),
            spec: SpecEcho::from(*spec),
            n,
            seed,
            volumes,
        }),
        Format::Csv => {
            let mut body = String::from("volume\n");
            for v in volumes {
                writeln!(body, "{v}").unwrap();
            }
            Ok(OutputDocument::csv(body))
        }
    }
}
