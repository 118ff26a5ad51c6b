//! Means, variances and the cumulant coefficients of the volume laws.
//!
//! Every factor `(1 - q^a) / (1 - q^{a-c})` of a generating function, divided
//! by its value `a / (a - c)` at `q = 1`, is the law of `U_a - U_{a-c}` in the
//! cumulant sense, where `U_n` is uniform on `{0, .., n-1}`. With
//! `g(t) = log((e^t - 1) / t) = sum_N b_N t^N` the `N`-th cumulant
//! contribution of that factor is `N! * b_N * (a^N - (a - c)^N)`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ensembles::{self, EnsembleSpec, VolumeDistribution};
use crate::error::{Error, Result};
use crate::qpoly::{ExactRational, FactorRatioProduct};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn int(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Half the bounding volume.
pub fn mean_closed(spec: &EnsembleSpec) -> Result<ExactRational> {
    spec.validate()?;
    if !spec.is_plane_partition() {
        return Err(Error::UnsupportedSpec(spec.kind()));
    }
    Ok(int(spec.bounding_volume()) / int(2))
}

pub fn variance_closed(spec: &EnsembleSpec) -> Result<ExactRational> {
    spec.validate()?;
    match *spec {
        EnsembleSpec::Pp { r, s, t } => Ok(int(r * s * t) * int(r + s + t) / int(12)),
        EnsembleSpec::Spp { r, t } => {
            let (r, t) = (int(r), int(t));
            let r2 = &r * &r;
            let t2 = &t * &t;
            // r^3 t/3 + r^2 t^2/6 - r^2 t/6 - r t^2/12, the sum of the
            // per-orbit second cumulants (checked against enumeration)
            Ok(rat(1, 3) * &t * &r2 * &r + rat(1, 6) * &t2 * &r2
                - rat(1, 6) * &t * &r2
                - rat(1, 12) * &t2 * &r)
        }
        EnsembleSpec::Cspp { r } => {
            let r2 = int(r * r);
            Ok(rat(3, 4) * &r2 * &r2 - rat(1, 2) * r2)
        }
        _ => Err(Error::UnsupportedSpec(spec.kind())),
    }
}

/// `E[X^n]` under the exact law.
pub fn empirical_moment(dist: &VolumeDistribution, n: u32) -> ExactRational {
    let sum: BigInt = dist
        .atoms()
        .map(|(k, c)| BigInt::from(k).pow(n) * c)
        .sum();
    BigRational::new(sum, dist.total().clone())
}

/// `E[(X - E X)^n]` under the exact law.
pub fn empirical_central_moment(dist: &VolumeDistribution, n: u32) -> ExactRational {
    let mean = empirical_moment(dist, 1);
    let mut sum = BigRational::zero();
    for (k, c) in dist.atoms() {
        let d = int(k) - &mean;
        sum += num_traits::pow(d, n as usize) * BigRational::from_integer(c.clone());
    }
    sum / BigRational::from_integer(dist.total().clone())
}

/// Taylor coefficients `b_1..b_N` of `g(t) = log((e^t - 1) / t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GSeries {
    coefficients: Vec<ExactRational>,
}

impl GSeries {
    pub fn max_order(&self) -> usize {
        self.coefficients.len()
    }

    /// `b_n` for `1 <= n <= max_order`.
    pub fn b(&self, n: usize) -> &ExactRational {
        &self.coefficients[n - 1]
    }

    pub fn coefficients(&self) -> &[ExactRational] {
        &self.coefficients
    }

    /// `b_n * (alpha^n - (alpha - c)^n)`.
    pub fn h_coefficient(&self, n: usize, c: &ExactRational, alpha: &ExactRational) -> ExactRational {
        let low = alpha - c;
        self.b(n) * (num_traits::pow(alpha.clone(), n) - num_traits::pow(low, n))
    }

    /// `H_{n,c}` as a polynomial in `alpha`.
    pub fn h_polynomial(&self, n: usize, c: &ExactRational) -> HCoefficient {
        // b_n * sum_{k=1}^{n} C(n,k) (-1)^{k+1} c^k alpha^{n-k}
        let mut coefficients = vec![BigRational::zero(); n];
        let mut binom = BigInt::one();
        for k in 1..=n {
            binom = binom * BigInt::from(n - k + 1) / BigInt::from(k);
            let mut term = BigRational::from_integer(binom.clone()) * num_traits::pow(c.clone(), k);
            if k % 2 == 0 {
                term = -term;
            }
            coefficients[n - k] = self.b(n) * term;
        }
        HCoefficient {
            order: n,
            offset: c.clone(),
            coefficients,
        }
    }
}

/// `H_{N,c}(alpha)` expanded in powers of `alpha`; `coefficients[j]` multiplies `alpha^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HCoefficient {
    pub order: usize,
    pub offset: ExactRational,
    pub coefficients: Vec<ExactRational>,
}

impl HCoefficient {
    pub fn evaluate(&self, alpha: &ExactRational) -> ExactRational {
        self.coefficients
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * alpha + c)
    }

    /// Index of the highest nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.iter().rposition(|c| !c.is_zero())
    }
}

/// Exact Taylor coefficients of `log(1 + u)`, `u = sum_{n>=1} t^n / (n+1)!`,
/// truncated after `t^max_order`.
pub fn g_series(max_order: usize) -> GSeries {
    assert!(max_order >= 1, "g_series needs at least one coefficient");
    let len = max_order + 1;
    let mut u = vec![BigRational::zero(); len];
    let mut factorial = BigInt::one();
    for (n, slot) in u.iter_mut().enumerate().skip(1) {
        factorial *= BigInt::from(n + 1);
        *slot = BigRational::new(BigInt::one(), factorial.clone());
    }
    // log(1 + u) = sum_k (-1)^{k+1} u^k / k; u has no constant term so
    // u^k only reaches t^{max_order} for k <= max_order.
    let mut result = vec![BigRational::zero(); len];
    let mut power = u.clone();
    for k in 1..=max_order {
        let scale = if k % 2 == 1 { int(1) } else { -int(1) } / int(k);
        for (acc, p) in result.iter_mut().zip(&power) {
            if !p.is_zero() {
                *acc += p * &scale;
            }
        }
        power = truncated_mul(&power, &u, len);
    }
    result.remove(0);
    GSeries {
        coefficients: result,
    }
}

fn truncated_mul(a: &[BigRational], b: &[BigRational], len: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); len];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// `H_{n,c}(alpha) = b_n * (alpha^n - (alpha - c)^n)`.
pub fn h_coefficient(n: usize, c: usize, alpha: &ExactRational) -> ExactRational {
    g_series(n).h_coefficient(n, &int(c), alpha)
}

/// `|H_{n,c}(alpha)| <= bound_constant * alpha^{n-1} * (2c)^n`.
pub fn h_bound_check(n: usize, c: usize, alpha: &ExactRational, bound_constant: &ExactRational) -> bool {
    h_bound_check_with(&g_series(n), n, c, alpha, bound_constant)
}

/// [`h_bound_check`] reusing a precomputed series.
pub fn h_bound_check_with(
    series: &GSeries,
    n: usize,
    c: usize,
    alpha: &ExactRational,
    bound_constant: &ExactRational,
) -> bool {
    let h = series.h_coefficient(n, &int(c), alpha);
    let bound = bound_constant
        * num_traits::pow(alpha.clone(), n - 1)
        * num_traits::pow(int(2 * c), n);
    h.abs() <= bound
}

/// Sum of `2! * b_2 * (a^2 - b^2) = (a^2 - b^2) / 12` over the factor pairs.
pub fn cumulant_variance(product: &FactorRatioProduct) -> ExactRational {
    let sum: BigInt = product
        .pairs()
        .iter()
        .map(|p| {
            let a = BigInt::from(p.numerator);
            let b = BigInt::from(p.denominator);
            &a * &a - &b * &b
        })
        .sum();
    BigRational::new(sum, BigInt::from(12))
}

/// Variance from the second cumulant of each factor of the generating function.
pub fn variance_from_cumulant(spec: &EnsembleSpec) -> Result<ExactRational> {
    if !spec.is_plane_partition() {
        return Err(Error::UnsupportedSpec(spec.kind()));
    }
    Ok(cumulant_variance(&ensembles::factor_product(spec)?))
}
