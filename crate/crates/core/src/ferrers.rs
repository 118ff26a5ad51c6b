//! Ferrers-diagram ensembles: fixed height and width, and fixed
//! half-perimeter counted jointly by height and area.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::ensembles::{EnsembleSpec, VolumeDistribution};
use crate::error::{Error, Result};
use crate::limits::{self, ReferenceLaw};
use crate::qpoly::{self, DegreeCap, ExactPolynomial, ExactRational, FactorRatioProduct};

/// Largest half-perimeter parameter `m` accepted by [`perimeter_joint`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PerimeterCap(pub usize);

impl PerimeterCap {
    pub const DEFAULT: PerimeterCap = PerimeterCap(400);
}

impl Default for PerimeterCap {
    fn default() -> Self {
        PerimeterCap::DEFAULT
    }
}

fn int(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `[n choose k]_q` as `prod_{i=1}^{k} (1 - q^{n-k+i}) / (1 - q^i)`.
pub fn q_binomial_product(n: usize, k: usize) -> Result<FactorRatioProduct> {
    let mut out = FactorRatioProduct::new();
    if k > n {
        return Err(Error::InvalidSpec(alloc::format!("q-binomial [{n} choose {k}]")));
    }
    for i in 1..=k {
        out.push_pair(n - k + i, i)?;
    }
    Ok(out)
}

pub fn q_binomial(n: usize, k: usize, cap: DegreeCap) -> Result<ExactPolynomial> {
    qpoly::expand(&q_binomial_product(n, k)?, cap)
}

/// Area polynomial `q^{h+w-1} [h+w-2 choose h-1]_q` of Ferrers diagrams with
/// `h` rows and `w` columns.
pub fn ferrers_hw_polynomial(h: usize, w: usize, cap: DegreeCap) -> Result<ExactPolynomial> {
    EnsembleSpec::ferrers_hw(h, w)?;
    cap.check(h * w)?;
    Ok(q_binomial(h + w - 2, h - 1, cap)?.shifted(h + w - 1))
}

/// Mean area with `h` rows and `w` columns: the top row and left column
/// plus half of the free `(h-1) x (w-1)` rectangle.
pub fn hw_mean_closed(h: usize, w: usize) -> ExactRational {
    int(h + w - 1) + int((h - 1) * (w - 1)) / int(2)
}

/// `(h-1)(w-1)(h+w-1) / 12`, the variance of `[h+w-2 choose h-1]_q`.
pub fn hw_variance_closed(h: usize, w: usize) -> ExactRational {
    int((h - 1) * (w - 1) * (h + w - 1)) / int(12)
}

/// Counts of Ferrers diagrams of half-perimeter `m + 2` by height and area.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointHeightAreaDistribution {
    m: usize,
    /// `rows[h - 1]` is the area polynomial of diagrams with height `h`.
    rows: Vec<ExactPolynomial>,
    total: BigInt,
}

impl JointHeightAreaDistribution {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn total(&self) -> &BigInt {
        &self.total
    }

    pub fn max_height(&self) -> usize {
        self.m + 1
    }

    /// Area polynomial of height `h`.
    pub fn row(&self, h: usize) -> Result<&ExactPolynomial> {
        if h == 0 || h > self.max_height() {
            return Err(Error::HeightOutOfRange {
                height: h,
                max: self.max_height(),
            });
        }
        Ok(&self.rows[h - 1])
    }

    pub fn count(&self, h: usize, area: usize) -> BigInt {
        self.row(h).map(|r| r.coeff(area)).unwrap_or_default()
    }

    /// Nonzero cells as `(height, area, count)`, by height then area.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> + '_ {
        self.rows.iter().enumerate().flat_map(|(idx, row)| {
            row.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(a, c)| (idx + 1, a, c))
        })
    }

    /// Number of diagrams of height `h` (row sum).
    pub fn height_count(&self, h: usize) -> BigInt {
        self.row(h).map(ExactPolynomial::coefficient_sum).unwrap_or_default()
    }

    /// Area distribution summed over heights.
    pub fn area_marginal(&self) -> ExactPolynomial {
        let len = self.rows.iter().map(|r| r.coeffs().len()).max().unwrap_or(0);
        let mut out = vec![BigInt::zero(); len];
        for row in &self.rows {
            for (slot, c) in out.iter_mut().zip(row.coeffs()) {
                *slot += c;
            }
        }
        ExactPolynomial::from_coeffs(out)
    }
}

/// Builds every row `q^{m+1} [m choose h-1]_q` from the previous one via
/// `[m, k] = [m, k-1] (1 - q^{m-k+1}) / (1 - q^k)`.
pub fn perimeter_joint(m: usize, perimeter_cap: PerimeterCap, cap: DegreeCap) -> Result<JointHeightAreaDistribution> {
    if m > perimeter_cap.0 {
        return Err(Error::PerimeterCapExceeded {
            m,
            cap: perimeter_cap.0,
        });
    }
    cap.check(EnsembleSpec::FerrersPerimeter { m }.bounding_volume())?;
    let mut rows = Vec::with_capacity(m + 1);
    let mut current = ExactPolynomial::one();
    rows.push(current.shifted(m + 1));
    for k in 1..=m {
        current.mul_one_minus_q_pow(m - k + 1, cap)?;
        current.div_one_minus_q_pow(k)?;
        rows.push(current.shifted(m + 1));
    }
    let total = rows.iter().map(ExactPolynomial::coefficient_sum).sum();
    Ok(JointHeightAreaDistribution { m, rows, total })
}

/// Area law given height `h`: uniform over diagrams with `h` rows and
/// `m + 2 - h` columns.
pub fn conditional_area(joint: &JointHeightAreaDistribution, h: usize) -> Result<VolumeDistribution> {
    let row = joint.row(h)?.clone();
    let spec = EnsembleSpec::FerrersHw {
        h,
        w: joint.m + 2 - h,
    };
    Ok(VolumeDistribution::new(spec, row))
}

/// Exact mean and variance of the height.
pub fn height_marginal_moments(joint: &JointHeightAreaDistribution) -> (ExactRational, ExactRational) {
    let mut s1 = BigInt::zero();
    let mut s2 = BigInt::zero();
    for h in 1..=joint.max_height() {
        let c = joint.height_count(h);
        let hb = BigInt::from(h);
        s1 += &hb * &c;
        s2 += &hb * &hb * &c;
    }
    let total = BigRational::from_integer(joint.total.clone());
    let mean = BigRational::from_integer(s1) / &total;
    let variance = BigRational::from_integer(s2) / &total - &mean * &mean;
    (mean, variance)
}

/// Exact first and second moments of area and height.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointMoments {
    pub area_mean: ExactRational,
    pub area_variance: ExactRational,
    pub height_mean: ExactRational,
    pub height_variance: ExactRational,
    pub covariance: ExactRational,
}

pub fn joint_moments(joint: &JointHeightAreaDistribution) -> JointMoments {
    let mut sa = BigInt::zero();
    let mut saa = BigInt::zero();
    let mut sah = BigInt::zero();
    for (idx, row) in joint.rows.iter().enumerate() {
        let mut ra = BigInt::zero();
        for (a, c) in row.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let ac = BigInt::from(a) * c;
            saa += BigInt::from(a) * &ac;
            ra += ac;
        }
        sah += BigInt::from(idx + 1) * &ra;
        sa += ra;
    }
    let (height_mean, height_variance) = height_marginal_moments(joint);
    let total = BigRational::from_integer(joint.total.clone());
    let area_mean = BigRational::from_integer(sa) / &total;
    let area_variance = BigRational::from_integer(saa) / &total - &area_mean * &area_mean;
    let covariance = BigRational::from_integer(sah) / &total - &area_mean * &height_mean;
    JointMoments {
        area_mean,
        area_variance,
        height_mean,
        height_variance,
        covariance,
    }
}

/// Diagnostics for the rescaled pair
/// `X = (A - m^2/8) / sqrt(m^3/48)`, `Y = (H - m/2) / (sqrt(m)/2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDiagnostics {
    pub m: usize,
    pub moments: JointMoments,
    pub area_mean: f64,
    /// `Var(X)`, exact.
    pub area_variance: ExactRational,
    pub height_mean: f64,
    /// `Var(Y)`, exact.
    pub height_variance: ExactRational,
    pub correlation: f64,
    /// `(height, KS distance of X given that height to the standard normal)`
    /// for the central heights.
    pub conditional_ks: Vec<(usize, f64)>,
}

impl JointDiagnostics {
    pub fn max_conditional_ks(&self) -> f64 {
        self.conditional_ks.iter().map(|&(_, ks)| ks).fold(0.0, f64::max)
    }
}

/// Central heights `h` with `h - 1` in `{m/2 - 1, m/2, m/2 + 1}` (floored).
pub fn central_heights(m: usize) -> Vec<usize> {
    let mid = m / 2;
    [mid.wrapping_sub(1), mid, mid + 1]
        .into_iter()
        .filter(|&k| k <= m)
        .map(|k| k + 1)
        .collect()
}

fn area_scale(m: usize) -> (f64, f64) {
    let mf = m as f64;
    (mf * mf / 8.0, libm::sqrt(mf * mf * mf / 48.0))
}

pub fn joint_diagnostics(joint: &JointHeightAreaDistribution) -> Result<JointDiagnostics> {
    let m = joint.m;
    if m < 1 {
        return Err(Error::InvalidSpec(alloc::format!(
            "joint diagnostics need m >= 1, got {m}"
        )));
    }
    let moments = joint_moments(joint);
    let mr = int(m);
    let (area_shift, area_sd) = area_scale(m);
    let height_sd = libm::sqrt(m as f64) / 2.0;

    let area_variance = &moments.area_variance * int(48) / (&mr * &mr * &mr);
    let height_variance = &moments.height_variance * int(4) / &mr;
    let area_mean = (to_f64(&moments.area_mean) - area_shift) / area_sd;
    let height_mean = to_f64(&(&moments.height_mean - &mr / int(2))) / height_sd;

    let var_product = to_f64(&(&moments.area_variance * &moments.height_variance));
    let correlation = if var_product > 0.0 {
        to_f64(&moments.covariance) / libm::sqrt(var_product)
    } else {
        0.0
    };

    let mut conditional_ks = Vec::new();
    for h in central_heights(m) {
        let cond = conditional_area(joint, h)?;
        let ks = limits::ks_affine(&cond, area_shift, area_sd, &ReferenceLaw::StandardGaussian);
        conditional_ks.push((h, ks));
    }

    Ok(JointDiagnostics {
        m,
        moments,
        area_mean,
        area_variance,
        height_mean,
        height_variance,
        correlation,
        conditional_ks,
    })
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: DegreeCap = DegreeCap::DEFAULT;

    fn small(c: &[i64]) -> ExactPolynomial {
        ExactPolynomial::from_i64s(c)
    }

    #[test]
    fn hw_examples() {
        assert_eq!(ferrers_hw_polynomial(1, 1, CAP).unwrap(), small(&[0, 1]));
        assert_eq!(ferrers_hw_polynomial(2, 2, CAP).unwrap(), small(&[0, 0, 0, 1, 1]));
        assert_eq!(
            ferrers_hw_polynomial(3, 2, CAP).unwrap().coefficient_sum(),
            BigInt::from(3)
        );
    }

    #[test]
    fn q_binomial_rows() {
        assert_eq!(q_binomial(4, 2, CAP).unwrap(), small(&[1, 1, 2, 1, 1]));
        assert_eq!(q_binomial(5, 0, CAP).unwrap(), ExactPolynomial::one());
        assert!(q_binomial(2, 3, CAP).is_err());
    }

    #[test]
    fn joint_small() {
        let j = perimeter_joint(0, PerimeterCap::DEFAULT, CAP).unwrap();
        assert_eq!(j.total(), &BigInt::from(1));
        assert_eq!(j.triplets().map(|(h, a, c)| (h, a, c.clone())).collect::<Vec<_>>(), vec![(1, 1, BigInt::from(1))]);

        let j = perimeter_joint(1, PerimeterCap::DEFAULT, CAP).unwrap();
        assert_eq!(j.total(), &BigInt::from(2));

        // half-perimeter 4: 1x3 row, 3x1 column, and the two 2x2 shapes
        let j = perimeter_joint(2, PerimeterCap::DEFAULT, CAP).unwrap();
        assert_eq!(j.total(), &BigInt::from(4));
        let cells: Vec<_> = j.triplets().map(|(h, a, c)| (h, a, c.clone())).collect();
        let one = BigInt::from(1);
        assert_eq!(
            cells,
            vec![(1, 3, one.clone()), (2, 3, one.clone()), (2, 4, one.clone()), (3, 3, one)]
        );
    }

    #[test]
    fn conditional_edges() {
        let j = perimeter_joint(7, PerimeterCap::DEFAULT, CAP).unwrap();
        for h in [1, 8] {
            let d = conditional_area(&j, h).unwrap();
            assert_eq!(d.total(), &BigInt::from(1));
            assert_eq!(d.count(8), BigInt::from(1));
        }
        assert!(matches!(
            conditional_area(&j, 9),
            Err(Error::HeightOutOfRange { height: 9, max: 8 })
        ));
        assert!(conditional_area(&j, 0).is_err());
    }

    #[test]
    fn height_moments() {
        let j = perimeter_joint(0, PerimeterCap::DEFAULT, CAP).unwrap();
        assert_eq!(height_marginal_moments(&j), (int(1), int(0)));
        let j = perimeter_joint(4, PerimeterCap::DEFAULT, CAP).unwrap();
        assert_eq!(height_marginal_moments(&j), (int(3), int(1)));
    }

    #[test]
    fn perimeter_cap() {
        assert!(matches!(
            perimeter_joint(11, PerimeterCap(10), CAP),
            Err(Error::PerimeterCapExceeded { m: 11, cap: 10 })
        ));
    }

    #[test]
    fn central_heights_small() {
        assert_eq!(central_heights(0), vec![1]);
        assert_eq!(central_heights(8), vec![4, 5, 6]);
        assert_eq!(central_heights(9), vec![4, 5, 6]);
    }

    #[test]
    fn rational_to_float() {
        assert_eq!(to_f64(&BigRational::new(BigInt::from(-7), BigInt::from(2))), -3.5);
        assert_eq!(to_f64(&int(5)), 5.0);
    }
}
