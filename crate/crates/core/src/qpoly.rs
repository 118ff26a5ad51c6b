//! Dense polynomials in `q` with big-integer coefficients, and expansion of
//! products of ratios `(1 - q^a) / (1 - q^b)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number in lowest terms with a positive denominator.
pub type ExactRational = BigRational;

/// Upper bound on the degree of any polynomial materialized by this module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegreeCap(pub usize);

impl DegreeCap {
    pub const DEFAULT: DegreeCap = DegreeCap(2_000_000);

    pub fn check(self, degree: usize) -> Result<()> {
        if degree > self.0 {
            Err(Error::DegreeCapExceeded {
                degree,
                cap: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for DegreeCap {
    fn default() -> Self {
        DegreeCap::DEFAULT
    }
}

/// Dense polynomial `sum_k coeffs[k] q^k`.
///
/// The highest stored coefficient is always nonzero; the zero polynomial has
/// no coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactPolynomial {
    coeffs: Vec<BigInt>,
}

impl ExactPolynomial {
    pub fn zero() -> Self {
        ExactPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ExactPolynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    /// The monomial `q^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        ExactPolynomial { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        trim(&mut coeffs);
        ExactPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `q^k`, zero outside the stored range.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Value at `q = 1`.
    pub fn coefficient_sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// `coeffs[k] == coeffs[center_sum - k]` for every `k`, where
    /// `center_sum` is valuation + degree.
    pub fn is_palindromic(&self) -> bool {
        let Some(low) = self.valuation() else {
            return true;
        };
        let body = &self.coeffs[low..];
        body.iter().eq(body.iter().rev())
    }

    /// Multiply by `q^k`.
    pub fn shifted(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        ExactPolynomial { coeffs }
    }

    /// Schoolbook product, refusing results whose degree exceeds `cap`.
    pub fn checked_mul(&self, rhs: &ExactPolynomial, cap: DegreeCap) -> Result<ExactPolynomial> {
        poly_mul(self, rhs, cap)
    }

    /// In-place multiplication by `1 - q^a`.
    pub fn mul_one_minus_q_pow(&mut self, a: usize, cap: DegreeCap) -> Result<()> {
        if a == 0 {
            return Err(Error::ZeroExponent);
        }
        if self.is_zero() {
            return Ok(());
        }
        cap.check(self.coeffs.len() - 1 + a)?;
        let old_len = self.coeffs.len();
        self.coeffs.resize(old_len + a, BigInt::zero());
        for k in (a..old_len + a).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(k);
            hi[0] -= &lo[k - a];
        }
        trim(&mut self.coeffs);
        Ok(())
    }

    /// In-place exact division by `1 - q^d`.
    pub fn div_one_minus_q_pow(&mut self, d: usize) -> Result<()> {
        if d == 0 {
            return Err(Error::ZeroExponent);
        }
        if self.is_zero() {
            return Ok(());
        }
        let len = self.coeffs.len();
        if len <= d {
            return Err(Error::NonzeroRemainder { divisor: d });
        }
        // Running sums with stride d give the quotient; the top d entries
        // must cancel for the division to be exact.
        for k in d..len {
            let (lo, hi) = self.coeffs.split_at_mut(k);
            hi[0] += &lo[k - d];
        }
        let quotient_len = len - d;
        if self.coeffs[quotient_len..].iter().any(|c| !c.is_zero()) {
            return Err(Error::NonzeroRemainder { divisor: d });
        }
        self.coeffs.truncate(quotient_len);
        trim(&mut self.coeffs);
        Ok(())
    }
}

impl fmt::Debug for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            match (k, magnitude.is_one()) {
                (0, _) => write!(f, "{magnitude}")?,
                (1, true) => f.write_str("q")?,
                (1, false) => write!(f, "{magnitude}q")?,
                (_, true) => write!(f, "q^{k}")?,
                (_, false) => write!(f, "{magnitude}q^{k}")?,
            }
        }
        Ok(())
    }
}

fn trim(coeffs: &mut Vec<BigInt>) {
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
}

/// Exact product of two polynomials.
pub fn poly_mul(a: &ExactPolynomial, b: &ExactPolynomial, cap: DegreeCap) -> Result<ExactPolynomial> {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return Ok(ExactPolynomial::zero());
    };
    cap.check(da + db)?;
    let mut out = vec![BigInt::zero(); da + db + 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    Ok(ExactPolynomial::from_coeffs(out))
}

/// `a / (1 - q^d)`, failing unless the division is exact.
pub fn divide_exact(a: &ExactPolynomial, d: usize) -> Result<ExactPolynomial> {
    let mut out = a.clone();
    out.div_one_minus_q_pow(d)?;
    Ok(out)
}

/// One factor `(1 - q^numerator) / (1 - q^denominator)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactorPair {
    pub numerator: usize,
    pub denominator: usize,
}

impl FactorPair {
    /// `numerator - denominator`; the `c` of a pair `(alpha, alpha - c)`.
    pub fn offset(&self) -> isize {
        self.numerator as isize - self.denominator as isize
    }
}

/// Unexpanded product of factor pairs `(1 - q^a) / (1 - q^b)`.
///
/// Pairs are kept in insertion order so that per-factor quantities (such as
/// cumulant contributions) can be summed without expanding.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FactorRatioProduct {
    pairs: Vec<FactorPair>,
}

impl FactorRatioProduct {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(pairs: I) -> Result<Self> {
        let mut out = Self::new();
        for (a, b) in pairs {
            out.push_pair(a, b)?;
        }
        Ok(out)
    }

    pub fn push_pair(&mut self, numerator: usize, denominator: usize) -> Result<()> {
        if numerator == 0 || denominator == 0 {
            return Err(Error::ZeroExponent);
        }
        self.pairs.push(FactorPair {
            numerator,
            denominator,
        });
        Ok(())
    }

    pub fn pairs(&self) -> &[FactorPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Numerator exponents, sorted.
    pub fn numerator_exponents(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.pairs.iter().map(|p| p.numerator).collect();
        v.sort_unstable();
        v
    }

    /// Denominator exponents, sorted.
    pub fn denominator_exponents(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.pairs.iter().map(|p| p.denominator).collect();
        v.sort_unstable();
        v
    }

    /// Multisets left after cancelling equal exponents, each sorted ascending.
    pub fn cancelled(&self) -> (Vec<usize>, Vec<usize>) {
        let mut net: BTreeMap<usize, i64> = BTreeMap::new();
        for p in &self.pairs {
            *net.entry(p.numerator).or_default() += 1;
            *net.entry(p.denominator).or_default() -= 1;
        }
        let mut num = Vec::new();
        let mut den = Vec::new();
        for (&e, &m) in &net {
            if m > 0 {
                num.extend(core::iter::repeat_n(e, m as usize));
            } else if m < 0 {
                den.extend(core::iter::repeat_n(e, (-m) as usize));
            }
        }
        (num, den)
    }

    /// Degree of the represented polynomial: `sum(numerators) - sum(denominators)`.
    pub fn degree(&self) -> isize {
        self.pairs.iter().map(FactorPair::offset).sum()
    }
}

/// Expand a factor-ratio product into a dense polynomial.
///
/// Equal exponents are cancelled first. Remaining denominators that divide
/// some remaining numerator are consumed together with it, which keeps the
/// intermediate degree close to the final one; whatever is left is multiplied
/// out and then divided exactly.
pub fn expand(product: &FactorRatioProduct, cap: DegreeCap) -> Result<ExactPolynomial> {
    let (mut num, den) = product.cancelled();
    let mut poly = ExactPolynomial::one();
    let mut unpaired = Vec::new();
    for &d in den.iter().rev() {
        // smallest multiple of d among the remaining numerators
        let hit = num.iter().position(|&a| a % d == 0);
        match hit {
            Some(idx) => {
                let a = num.remove(idx);
                poly.mul_one_minus_q_pow(a, cap)?;
                poly.div_one_minus_q_pow(d)?;
            }
            None => unpaired.push(d),
        }
    }
    for &a in &num {
        poly.mul_one_minus_q_pow(a, cap)?;
    }
    for &d in &unpaired {
        poly.div_one_minus_q_pow(d)?;
    }
    Ok(poly)
}

/// Value of the product at `q = 1` without expanding: each pair contributes
/// `numerator / denominator`.
pub fn eval_at_one(product: &FactorRatioProduct) -> Result<ExactRational> {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    let (n, d) = product.cancelled();
    for a in n {
        num *= BigInt::from(a);
    }
    for b in d {
        if b == 0 {
            return Err(Error::ZeroExponent);
        }
        den *= BigInt::from(b);
    }
    Ok(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> ExactPolynomial {
        ExactPolynomial::from_i64s(c)
    }

    const CAP: DegreeCap = DegreeCap::DEFAULT;

    #[test]
    fn mul_examples() {
        assert_eq!(poly_mul(&p(&[1, 1]), &p(&[1, 1]), CAP).unwrap(), p(&[1, 2, 1]));
        let x = p(&[3, -1, 4, 1, 5]);
        assert_eq!(poly_mul(&x, &ExactPolynomial::one(), CAP).unwrap(), x);
        assert_eq!(poly_mul(&p(&[1, 1, 1]), &p(&[1, -1]), CAP).unwrap(), p(&[1, 0, 0, -1]));
        assert!(poly_mul(&x, &ExactPolynomial::zero(), CAP).unwrap().is_zero());
    }

    #[test]
    fn mul_respects_cap() {
        let a = ExactPolynomial::monomial(6);
        let err = poly_mul(&a, &a, DegreeCap(10)).unwrap_err();
        assert_eq!(err, Error::DegreeCapExceeded { degree: 12, cap: 10 });
        assert!(poly_mul(&a, &a, DegreeCap(12)).is_ok());
    }

    #[test]
    fn divide_examples() {
        assert_eq!(divide_exact(&p(&[1, 0, 0, -1]), 1).unwrap(), p(&[1, 1, 1]));
        assert_eq!(divide_exact(&p(&[1, 0, 0, 0, -1]), 2).unwrap(), p(&[1, 0, 1]));
        let prod = poly_mul(&p(&[1, 1]), &p(&[1, 0, -1]), CAP).unwrap();
        assert_eq!(divide_exact(&prod, 2).unwrap(), p(&[1, 1]));
    }

    #[test]
    fn divide_rejects_remainder() {
        assert_eq!(
            divide_exact(&p(&[1, 1]), 1).unwrap_err(),
            Error::NonzeroRemainder { divisor: 1 }
        );
        assert_eq!(
            divide_exact(&p(&[1, 0, 1]), 3).unwrap_err(),
            Error::NonzeroRemainder { divisor: 3 }
        );
        assert_eq!(divide_exact(&p(&[1]), 0).unwrap_err(), Error::ZeroExponent);
        assert!(divide_exact(&ExactPolynomial::zero(), 4).unwrap().is_zero());
    }

    #[test]
    fn zero_exponent_is_malformed() {
        assert_eq!(FactorRatioProduct::from_pairs([(2, 0)]).unwrap_err(), Error::ZeroExponent);
        assert_eq!(FactorRatioProduct::from_pairs([(0, 1)]).unwrap_err(), Error::ZeroExponent);
    }

    #[test]
    fn expand_small_products() {
        let single = FactorRatioProduct::from_pairs([(2, 1)]).unwrap();
        assert_eq!(expand(&single, CAP).unwrap(), p(&[1, 1]));

        for t in 1..8 {
            let column = FactorRatioProduct::from_pairs((1..=t).map(|k| (k + 1, k))).unwrap();
            assert_eq!(expand(&column, CAP).unwrap(), p(&vec![1; t + 1]));
            assert_eq!(eval_at_one(&column).unwrap(), BigRational::from_integer((t + 1).into()));
        }
    }

    #[test]
    fn expand_reports_non_polynomial_products() {
        let bad = FactorRatioProduct::from_pairs([(2, 3)]).unwrap();
        assert!(matches!(expand(&bad, CAP), Err(Error::NonzeroRemainder { .. })));
    }

    #[test]
    fn expand_respects_cap() {
        let big = FactorRatioProduct::from_pairs([(50, 1)]).unwrap();
        assert!(matches!(
            expand(&big, DegreeCap(20)),
            Err(Error::DegreeCapExceeded { .. })
        ));
    }

    #[test]
    fn cancellation_is_multiset_difference() {
        let f = FactorRatioProduct::from_pairs([(2, 1), (3, 2), (3, 2), (5, 3)]).unwrap();
        assert_eq!(f.cancelled(), (vec![3, 5], vec![1, 2]));
        assert_eq!(f.degree(), 5);
    }

    #[test]
    fn palindrome_and_display() {
        assert!(p(&[0, 0, 1, 3, 1]).is_palindromic());
        assert!(!p(&[1, 2]).is_palindromic());
        assert_eq!(alloc::format!("{}", p(&[1, -2, 0, 1])), "1 - 2q + q^3");
        assert_eq!(alloc::format!("{}", ExactPolynomial::zero()), "0");
    }
}
