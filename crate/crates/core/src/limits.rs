//! Reference limit laws and convergence diagnostics.
//!
//! Distances are Kolmogorov-Smirnov distances between the exact law of a
//! normalized volume and a continuous reference CDF. Cumulative counts stay
//! exact big integers until the final comparison.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ensembles::{distribution, ratio_to_f64, EnsembleSpec, VolumeDistribution};
use crate::error::{Error, Result};
use crate::ferrers;
use crate::moments;
use crate::qpoly::{DegreeCap, ExactRational};

/// Standard normal CDF, `erfc(-x / sqrt 2) / 2`.
pub fn gaussian_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / core::f64::consts::SQRT_2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReferenceLaw {
    StandardGaussian,
    /// Sum of `unit` independent U[0,1] and `double` independent U[0,2] variables.
    UniformConvolution { unit: usize, double: usize },
}

impl ReferenceLaw {
    pub fn uniform(unit: usize, double: usize) -> Result<Self> {
        if unit + double == 0 {
            return Err(Error::InvalidSpec(
                "uniform convolution needs at least one factor".into(),
            ));
        }
        Ok(ReferenceLaw::UniformConvolution { unit, double })
    }

    /// The law `Z_t = X / t` approaches as `t` grows, for the non-concentrated
    /// families: `rs` unit factors for PP, `r` unit and `r(r-1)/2` double
    /// factors for SPP.
    pub fn scaling_limit(spec: &EnsembleSpec) -> Result<Self> {
        match *spec {
            EnsembleSpec::Pp { r, s, .. } => ReferenceLaw::uniform(r * s, 0),
            EnsembleSpec::Spp { r, .. } => ReferenceLaw::uniform(r, r * (r - 1) / 2),
            _ => Err(Error::UnsupportedSpec(spec.kind())),
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match *self {
            ReferenceLaw::StandardGaussian => gaussian_cdf(x),
            ReferenceLaw::UniformConvolution { unit, double } => {
                uniform_convolution_cdf_f64(unit, double, x)
            }
        }
    }
}

/// CDF of `unit` U[0,1] plus `double` U[0,2] variables at `x`.
///
/// Inclusion-exclusion over the corner shifts:
/// `F(x) = sum_{j,l} (-1)^{j+l} C(unit,j) C(double,l) (x - j - 2l)_+^n / (n! 2^double)`
/// with `n = unit + double`, evaluated in exact rationals.
pub fn uniform_convolution_cdf_exact(unit: usize, double: usize, x: &ExactRational) -> ExactRational {
    let n = unit + double;
    let top = BigRational::from_integer(BigInt::from(unit + 2 * double));
    if n == 0 || !x.is_positive() {
        return if n == 0 && !x.is_negative() {
            BigRational::one()
        } else {
            BigRational::zero()
        };
    }
    if x >= &top {
        return BigRational::one();
    }
    let unit_binoms = binomials(unit);
    let double_binoms = binomials(double);
    let mut sum = BigRational::zero();
    for (j, cj) in unit_binoms.iter().enumerate() {
        for (l, cl) in double_binoms.iter().enumerate() {
            let shifted = x - BigRational::from_integer(BigInt::from(j + 2 * l));
            if !shifted.is_positive() {
                continue;
            }
            let term = num_traits::pow(shifted, n) * BigRational::from_integer(cj * cl);
            if (j + l) % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
    }
    let mut norm = BigInt::one() << double;
    for k in 2..=n {
        norm *= BigInt::from(k);
    }
    sum / BigRational::from_integer(norm)
}

fn binomials(n: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigInt::one();
    for k in 0..=n {
        row.push(c.clone());
        c = c * BigInt::from(n - k) / BigInt::from(k + 1);
    }
    row
}

fn uniform_convolution_cdf_f64(unit: usize, double: usize, x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x <= 0.0 {
        return 0.0;
    }
    if x >= (unit + 2 * double) as f64 {
        return 1.0;
    }
    let exact = BigRational::from_float(x).unwrap_or_default();
    uniform_convolution_cdf_exact(unit, double, &exact)
        .to_f64()
        .unwrap_or(f64::NAN)
}

/// CDF of a [`ReferenceLaw::UniformConvolution`]; other laws are rejected.
pub fn uniform_convolution_cdf(law: &ReferenceLaw, x: f64) -> Result<f64> {
    match *law {
        ReferenceLaw::UniformConvolution { unit, double } => {
            Ok(uniform_convolution_cdf_f64(unit, double, x))
        }
        ReferenceLaw::StandardGaussian => Err(Error::IncompatibleNormalization(
            "uniform_convolution_cdf needs a uniform-convolution law".into(),
        )),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Normalization {
    /// `(X - mean) / sd`.
    Standardize,
    /// `X / t`.
    ScaleByT,
}

impl Normalization {
    pub fn name(self) -> &'static str {
        match self {
            Normalization::Standardize => "standardize",
            Normalization::ScaleByT => "scale-by-t",
        }
    }
}

/// Mean and variance used by [`Normalization::Standardize`]: closed forms
/// where available, exact moments of the distribution otherwise.
pub fn standardization(dist: &VolumeDistribution) -> Result<(ExactRational, ExactRational)> {
    let spec = dist.spec();
    let (mean, var) = match *spec {
        EnsembleSpec::Pp { .. } | EnsembleSpec::Spp { .. } | EnsembleSpec::Cspp { .. } => {
            (moments::mean_closed(spec)?, moments::variance_closed(spec)?)
        }
        EnsembleSpec::FerrersHw { h, w } => {
            (ferrers::hw_mean_closed(h, w), ferrers::hw_variance_closed(h, w))
        }
        EnsembleSpec::FerrersPerimeter { .. } => (
            moments::empirical_moment(dist, 1),
            moments::empirical_central_moment(dist, 2),
        ),
    };
    if !var.is_positive() {
        return Err(Error::IncompatibleNormalization(format!(
            "{spec} has zero variance and cannot be standardized"
        )));
    }
    Ok((mean, var))
}

/// Sup over atoms of `max(|F(x-) - L(x-)|, |F(x) - L(x)|)` where `law(k)`
/// returns `(L(x-), L(x))` at the image `x` of volume `k`. This is the exact
/// KS distance whenever `L` is continuous.
fn ks_over_atoms<L: FnMut(usize) -> (f64, f64)>(dist: &VolumeDistribution, mut law: L) -> f64 {
    let total = dist.total();
    let mut below = BigInt::zero();
    let mut sup = 0.0f64;
    for (k, c) in dist.atoms() {
        let at = &below + c;
        let f_before = ratio_to_f64(&below, total);
        let f_at = ratio_to_f64(&at, total);
        let (l_before, l_at) = law(k);
        sup = sup.max((f_before - l_before).abs()).max((f_at - l_at).abs());
        below = at;
    }
    sup
}

/// KS distance of `(X - shift) / scale` to `law`.
pub fn ks_affine(dist: &VolumeDistribution, shift: f64, scale: f64, law: &ReferenceLaw) -> f64 {
    ks_over_atoms(dist, |k| {
        let v = law.cdf((k as f64 - shift) / scale);
        (v, v)
    })
}

pub fn ks_distance(dist: &VolumeDistribution, norm: Normalization, law: &ReferenceLaw) -> Result<f64> {
    match (norm, *law) {
        (Normalization::Standardize, ReferenceLaw::StandardGaussian) => {
            let (mean, var) = standardization(dist)?;
            let mean = mean.to_f64().unwrap_or(f64::NAN);
            let sd = libm::sqrt(var.to_f64().unwrap_or(f64::NAN));
            Ok(ks_affine(dist, mean, sd, law))
        }
        (Normalization::ScaleByT, ReferenceLaw::UniformConvolution { unit, double }) => {
            let t = match *dist.spec() {
                EnsembleSpec::Pp { t, .. } | EnsembleSpec::Spp { t, .. } => t,
                other => {
                    return Err(Error::IncompatibleNormalization(format!(
                        "{other} has no free side length t"
                    )))
                }
            };
            let t = BigInt::from(t);
            Ok(ks_over_atoms(dist, |k| {
                let x = BigRational::new(BigInt::from(k), t.clone());
                let v = uniform_convolution_cdf_exact(unit, double, &x)
                    .to_f64()
                    .unwrap_or(f64::NAN);
                (v, v)
            }))
        }
        _ => Err(Error::IncompatibleNormalization(format!(
            "{} cannot be compared with {law:?}",
            norm.name()
        ))),
    }
}

/// KS distance between two integer-supported laws, `sup_k |F_a(k) - F_b(k)|`.
pub fn ks_between(a: &VolumeDistribution, b: &VolumeDistribution) -> f64 {
    let ca = a.cumulative_counts();
    let cb = b.cumulative_counts();
    let len = ca.len().max(cb.len());
    let mut sup = 0.0f64;
    for k in 0..len {
        let fa = ca.get(k).map_or(1.0, |c| ratio_to_f64(c, a.total()));
        let fb = cb.get(k).map_or(1.0, |c| ratio_to_f64(c, b.total()));
        sup = sup.max((fa - fb).abs());
    }
    sup
}

/// `(sd / mean)^2 = (1/(st) + 1/(rt) + 1/(rs)) / 3` for plane partitions.
pub fn concentration_ratio(spec: &EnsembleSpec) -> Result<ExactRational> {
    match *spec {
        EnsembleSpec::Pp { r, s, t } => {
            spec.validate()?;
            let inv = |a: usize, b: usize| BigRational::new(BigInt::one(), BigInt::from(a * b));
            Ok((inv(s, t) + inv(r, t) + inv(r, s)) / BigRational::from_integer(BigInt::from(3)))
        }
        _ => Err(Error::UnsupportedSpec(spec.kind())),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub spec: EnsembleSpec,
    pub normalization: Normalization,
    pub ks: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub law: ReferenceLaw,
    pub rows: Vec<ConvergenceRow>,
    /// KS distances never increase along the rows.
    pub nonincreasing: bool,
}

impl ConvergenceReport {
    pub fn distances(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.ks).collect()
    }

    pub fn strictly_decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].ks < w[0].ks)
    }
}

pub fn convergence_table(
    specs: &[EnsembleSpec],
    norm: Normalization,
    law: &ReferenceLaw,
    cap: DegreeCap,
) -> Result<ConvergenceReport> {
    let mut rows = Vec::with_capacity(specs.len());
    for spec in specs {
        let dist = distribution(spec, cap)?;
        rows.push(ConvergenceRow {
            spec: *spec,
            normalization: norm,
            ks: ks_distance(&dist, norm, law)?,
        });
    }
    let nonincreasing = rows.windows(2).all(|w| w[1].ks <= w[0].ks);
    Ok(ConvergenceReport {
        law: *law,
        rows,
        nonincreasing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::ExactPolynomial;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn gaussian_symmetry() {
        assert_eq!(gaussian_cdf(0.0), 0.5);
        for x in [0.1, 0.7, 1.0, 2.5, 6.0] {
            assert!((gaussian_cdf(x) + gaussian_cdf(-x) - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn uniform_examples() {
        assert_eq!(uniform_convolution_cdf_exact(1, 0, &q(1, 2)), q(1, 2));
        assert_eq!(uniform_convolution_cdf_exact(2, 0, &q(1, 1)), q(1, 2));
        assert_eq!(uniform_convolution_cdf_exact(4, 0, &q(2, 1)), q(1, 2));
        let law = ReferenceLaw::uniform(4, 0).unwrap();
        assert_eq!(uniform_convolution_cdf(&law, 2.0).unwrap(), 0.5);
        assert!(uniform_convolution_cdf(&ReferenceLaw::StandardGaussian, 0.0).is_err());
    }

    #[test]
    fn uniform_elementary_forms() {
        for i in 0..=20 {
            let x = q(i, 10);
            // U[0,1]
            let u = if x > q(1, 1) { q(1, 1) } else { x.clone() };
            assert_eq!(uniform_convolution_cdf_exact(1, 0, &x), u);
            // triangular on [0,2]
            let tri = if x <= q(1, 1) {
                &x * &x / q(2, 1)
            } else {
                q(1, 1) - (q(2, 1) - &x) * (q(2, 1) - &x) / q(2, 1)
            };
            assert_eq!(uniform_convolution_cdf_exact(2, 0, &x), tri);
            // U[0,2]
            assert_eq!(uniform_convolution_cdf_exact(0, 1, &x), &x / q(2, 1));
        }
        assert!(uniform_convolution_cdf_exact(3, 1, &q(-1, 2)).is_zero());
        assert!(uniform_convolution_cdf_exact(3, 1, &q(5, 1)).is_one());
    }

    #[test]
    fn ks_two_atoms() {
        let dist = distribution(&EnsembleSpec::Pp { r: 1, s: 1, t: 1 }, DegreeCap::DEFAULT).unwrap();
        let ks = ks_distance(&dist, Normalization::Standardize, &ReferenceLaw::StandardGaussian).unwrap();
        // atoms at -1 and +1, each of mass 1/2
        let phi = gaussian_cdf(1.0);
        let expected = (1.0 - phi).max(phi - 0.5);
        assert!((ks - expected).abs() < 1e-15);
        assert!(ks > 0.0 && ks < 1.0);
    }

    #[test]
    fn ks_self_is_zero() {
        let dist = distribution(&EnsembleSpec::Spp { r: 2, t: 3 }, DegreeCap::DEFAULT).unwrap();
        assert_eq!(ks_between(&dist, &dist), 0.0);
        let other = VolumeDistribution::new(*dist.spec(), ExactPolynomial::from_i64s(&[1]));
        assert!(ks_between(&dist, &other) > 0.0);
    }

    #[test]
    fn ks_rejects_mismatched_pairs() {
        let dist = distribution(&EnsembleSpec::Cspp { r: 2 }, DegreeCap::DEFAULT).unwrap();
        let unif = ReferenceLaw::uniform(1, 0).unwrap();
        assert!(ks_distance(&dist, Normalization::Standardize, &unif).is_err());
        assert!(ks_distance(&dist, Normalization::ScaleByT, &unif).is_err());
        assert!(ks_distance(&dist, Normalization::ScaleByT, &ReferenceLaw::StandardGaussian).is_err());
    }

    #[test]
    fn concentration_examples() {
        assert_eq!(concentration_ratio(&EnsembleSpec::Pp { r: 1, s: 1, t: 1 }).unwrap(), q(1, 1));
        assert_eq!(concentration_ratio(&EnsembleSpec::Pp { r: 2, s: 3, t: 4 }).unwrap(), q(1, 8));
        for t in 1..50 {
            assert!(concentration_ratio(&EnsembleSpec::Pp { r: 1, s: 1, t }).unwrap() >= q(1, 3));
        }
        assert!(concentration_ratio(&EnsembleSpec::Cspp { r: 2 }).is_err());
    }

    #[test]
    fn single_row_table() {
        let law = ReferenceLaw::StandardGaussian;
        let report = convergence_table(
            &[EnsembleSpec::Pp { r: 2, s: 2, t: 2 }],
            Normalization::Standardize,
            &law,
            DegreeCap::DEFAULT,
        )
        .unwrap();
        assert_eq!(report.rows.len(), 1);
        assert!(report.nonincreasing);
    }

    #[test]
    fn scaling_limits() {
        assert_eq!(
            ReferenceLaw::scaling_limit(&EnsembleSpec::Spp { r: 2, t: 9 }).unwrap(),
            ReferenceLaw::UniformConvolution { unit: 2, double: 1 }
        );
        assert_eq!(
            ReferenceLaw::scaling_limit(&EnsembleSpec::Pp { r: 2, s: 3, t: 9 }).unwrap(),
            ReferenceLaw::UniformConvolution { unit: 6, double: 0 }
        );
        assert!(ReferenceLaw::uniform(0, 0).is_err());
    }
}
