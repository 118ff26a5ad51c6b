//! Generating-function builders for the boxed plane-partition classes and
//! the exact volume distributions they induce under the uniform ensemble.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ferrers;
use crate::qpoly::{self, DegreeCap, ExactPolynomial, ExactRational, FactorRatioProduct};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnsembleKind {
    Pp,
    Spp,
    Cspp,
    FerrersHw,
    FerrersPerimeter,
}

impl EnsembleKind {
    pub fn name(self) -> &'static str {
        match self {
            EnsembleKind::Pp => "pp",
            EnsembleKind::Spp => "spp",
            EnsembleKind::Cspp => "cspp",
            EnsembleKind::FerrersHw => "ferrers-hw",
            EnsembleKind::FerrersPerimeter => "ferrers-perimeter",
        }
    }
}

/// Which ensemble, and its side lengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnsembleSpec {
    /// Plane partitions in an `r x s x t` box.
    Pp { r: usize, s: usize, t: usize },
    /// Symmetric plane partitions in an `r x r x t` box.
    Spp { r: usize, t: usize },
    /// Cyclically symmetric plane partitions in an `r x r x r` box.
    Cspp { r: usize },
    /// Ferrers diagrams with exactly `h` rows and `w` columns.
    FerrersHw { h: usize, w: usize },
    /// Ferrers diagrams of half-perimeter `m + 2`.
    FerrersPerimeter { m: usize },
}

impl EnsembleSpec {
    pub fn pp(r: usize, s: usize, t: usize) -> Result<Self> {
        EnsembleSpec::Pp { r, s, t }.validated()
    }

    pub fn spp(r: usize, t: usize) -> Result<Self> {
        EnsembleSpec::Spp { r, t }.validated()
    }

    pub fn cspp(r: usize) -> Result<Self> {
        EnsembleSpec::Cspp { r }.validated()
    }

    pub fn ferrers_hw(h: usize, w: usize) -> Result<Self> {
        EnsembleSpec::FerrersHw { h, w }.validated()
    }

    pub fn ferrers_perimeter(m: usize) -> Self {
        EnsembleSpec::FerrersPerimeter { m }
    }

    pub fn kind(&self) -> EnsembleKind {
        match self {
            EnsembleSpec::Pp { .. } => EnsembleKind::Pp,
            EnsembleSpec::Spp { .. } => EnsembleKind::Spp,
            EnsembleSpec::Cspp { .. } => EnsembleKind::Cspp,
            EnsembleSpec::FerrersHw { .. } => EnsembleKind::FerrersHw,
            EnsembleSpec::FerrersPerimeter { .. } => EnsembleKind::FerrersPerimeter,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            EnsembleSpec::Pp { r, s, t } => r >= 1 && s >= 1 && t >= 1,
            EnsembleSpec::Spp { r, t } => r >= 1 && t >= 1,
            EnsembleSpec::Cspp { r } => r >= 1,
            EnsembleSpec::FerrersHw { h, w } => h >= 1 && w >= 1,
            EnsembleSpec::FerrersPerimeter { .. } => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidSpec(format!("{self}: side lengths must be positive")))
        }
    }

    fn validated(self) -> Result<Self> {
        self.validate().map(|()| self)
    }

    /// Largest possible volume (or area) in the ensemble.
    pub fn bounding_volume(&self) -> usize {
        match *self {
            EnsembleSpec::Pp { r, s, t } => r * s * t,
            EnsembleSpec::Spp { r, t } => r * r * t,
            EnsembleSpec::Cspp { r } => r * r * r,
            EnsembleSpec::FerrersHw { h, w } => h * w,
            EnsembleSpec::FerrersPerimeter { m } => (m + 1) + (m / 2) * m.div_ceil(2),
        }
    }

    /// True for the three plane-partition classes.
    pub fn is_plane_partition(&self) -> bool {
        matches!(
            self,
            EnsembleSpec::Pp { .. } | EnsembleSpec::Spp { .. } | EnsembleSpec::Cspp { .. }
        )
    }
}

impl fmt::Display for EnsembleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            EnsembleSpec::Pp { r, s, t } => write!(f, "PP({r},{s},{t})"),
            EnsembleSpec::Spp { r, t } => write!(f, "SPP({r},{t})"),
            EnsembleSpec::Cspp { r } => write!(f, "CSPP({r})"),
            EnsembleSpec::FerrersHw { h, w } => write!(f, "FerrersHW({h},{w})"),
            EnsembleSpec::FerrersPerimeter { m } => write!(f, "FerrersPerimeter({m})"),
        }
    }
}

/// `prod_{i,j,k} (1 - q^{i+j+k-1}) / (1 - q^{i+j+k-2})` over the `r x s x t` box.
pub fn build_pp(r: usize, s: usize, t: usize) -> Result<FactorRatioProduct> {
    EnsembleSpec::pp(r, s, t)?;
    let mut out = FactorRatioProduct::new();
    for i in 1..=r {
        for j in 1..=s {
            for k in 1..=t {
                out.push_pair(i + j + k - 1, i + j + k - 2)?;
            }
        }
    }
    Ok(out)
}

/// Orbits of the `r x r x t` box under swapping the first two coordinates:
/// singletons `(i, i, k)` and doubletons `{(i, j, k), (j, i, k)}`.
pub fn build_spp(r: usize, t: usize) -> Result<FactorRatioProduct> {
    EnsembleSpec::spp(r, t)?;
    let mut out = FactorRatioProduct::new();
    for i in 1..=r {
        for k in 1..=t {
            out.push_pair(2 * i + k - 1, 2 * i + k - 2)?;
        }
    }
    for i in 1..=r {
        for j in i + 1..=r {
            for k in 1..=t {
                let height = i + j + k - 2;
                out.push_pair(2 + 2 * height, 2 * height)?;
            }
        }
    }
    Ok(out)
}

/// Orbits of the `r x r x r` box under the coordinate 3-cycle. Each set of
/// three distinct coordinates carries two orbits, so its pair is pushed twice.
pub fn build_cspp(r: usize) -> Result<FactorRatioProduct> {
    EnsembleSpec::cspp(r)?;
    let mut out = FactorRatioProduct::new();
    for i in 1..=r {
        for j in i + 1..=r {
            for k in j + 1..=r {
                let height = i + j + k - 2;
                out.push_pair(3 * (height + 1), 3 * height)?;
                out.push_pair(3 * (height + 1), 3 * height)?;
            }
        }
    }
    for i in 1..=r {
        for k in i + 1..=r {
            out.push_pair(3 * (2 * i + k - 1), 3 * (2 * i + k - 2))?;
            out.push_pair(3 * (i + 2 * k - 1), 3 * (i + 2 * k - 2))?;
        }
    }
    for i in 1..=r {
        out.push_pair(3 * i - 1, 3 * i - 2)?;
    }
    Ok(out)
}

/// Factor-ratio form of the generating function, for the ensembles that have one.
pub fn factor_product(spec: &EnsembleSpec) -> Result<FactorRatioProduct> {
    match *spec {
        EnsembleSpec::Pp { r, s, t } => build_pp(r, s, t),
        EnsembleSpec::Spp { r, t } => build_spp(r, t),
        EnsembleSpec::Cspp { r } => build_cspp(r),
        EnsembleSpec::FerrersHw { h, w } => {
            EnsembleSpec::ferrers_hw(h, w)?;
            ferrers::q_binomial_product(h + w - 2, h - 1)
        }
        EnsembleSpec::FerrersPerimeter { .. } => Err(Error::UnsupportedSpec(spec.kind())),
    }
}

/// Exact counts of objects by volume (or area) for one ensemble.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VolumeDistribution {
    spec: EnsembleSpec,
    counts: ExactPolynomial,
    total: BigInt,
    bounding_volume: usize,
}

impl VolumeDistribution {
    /// Packages a counts polynomial; the total is its coefficient sum.
    pub fn new(spec: EnsembleSpec, counts: ExactPolynomial) -> Self {
        let total = counts.coefficient_sum();
        VolumeDistribution {
            bounding_volume: spec.bounding_volume(),
            spec,
            counts,
            total,
        }
    }

    pub fn spec(&self) -> &EnsembleSpec {
        &self.spec
    }

    pub fn counts(&self) -> &ExactPolynomial {
        &self.counts
    }

    pub fn total(&self) -> &BigInt {
        &self.total
    }

    pub fn bounding_volume(&self) -> usize {
        self.bounding_volume
    }

    pub fn count(&self, k: usize) -> BigInt {
        self.counts.coeff(k)
    }

    /// `P(X = k)` in lowest terms; zero outside the support.
    pub fn probability(&self, k: i64) -> ExactRational {
        let Ok(k) = usize::try_from(k) else {
            return BigRational::zero();
        };
        BigRational::new(self.counts.coeff(k), self.total.clone())
    }

    /// Volumes with nonzero count, with their counts.
    pub fn atoms(&self) -> impl Iterator<Item = (usize, &BigInt)> + '_ {
        self.counts
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
    }

    /// Running sums `#{X <= k}` for `k = 0..=degree`.
    pub fn cumulative_counts(&self) -> Vec<BigInt> {
        let mut acc = BigInt::zero();
        self.counts
            .coeffs()
            .iter()
            .map(|c| {
                acc += c;
                acc.clone()
            })
            .collect()
    }

    /// `counts[k] == counts[v - k]` for every `k`, `v` the bounding volume.
    pub fn is_symmetric_about_half_volume(&self) -> bool {
        let v = self.bounding_volume;
        if self.counts.degree().is_some_and(|d| d > v) {
            return false;
        }
        (0..=v).all(|k| self.counts.coeff(k) == self.counts.coeff(v - k))
    }

    /// Inverse-CDF lookup: the volume `k` with `cum[k-1] <= target < cum[k]`.
    pub fn volume_for_rank(cumulative: &[BigInt], target: &BigInt) -> usize {
        cumulative.partition_point(|c| c <= target)
    }

    /// Maps a uniform 128-bit draw to a volume; draws are spread over the
    /// total count as `floor(draw * total / 2^128)`.
    pub fn volume_for_draw(&self, cumulative: &[BigInt], draw: u128) -> usize {
        let target: BigInt = (BigInt::from(draw) * &self.total) >> 128u32;
        Self::volume_for_rank(cumulative, &target)
    }
}

/// Probability `counts[k] / total` as a float, via `counts * 2^64 / total` in
/// integer arithmetic so that huge totals never overflow.
pub fn ratio_to_f64(numerator: &BigInt, total: &BigInt) -> f64 {
    let scaled: BigInt = (numerator << 64u32).div_floor(total);
    scaled.to_f64().unwrap_or(f64::NAN) / 18_446_744_073_709_551_616.0
}

/// Exact volume distribution of an ensemble.
pub fn distribution(spec: &EnsembleSpec, cap: DegreeCap) -> Result<VolumeDistribution> {
    spec.validate()?;
    let counts = match *spec {
        EnsembleSpec::FerrersHw { h, w } => ferrers::ferrers_hw_polynomial(h, w, cap)?,
        EnsembleSpec::FerrersPerimeter { m } => {
            let joint = ferrers::perimeter_joint(m, ferrers::PerimeterCap::DEFAULT, cap)?;
            joint.area_marginal()
        }
        _ => qpoly::expand(&factor_product(spec)?, cap)?,
    };
    Ok(VolumeDistribution::new(*spec, counts))
}

/// `P(X = k)` for a distribution; see [`VolumeDistribution::probability`].
pub fn probability(dist: &VolumeDistribution, k: i64) -> ExactRational {
    dist.probability(k)
}
