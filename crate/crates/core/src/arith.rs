//! Exact integer and rational helpers: binomials under the extended
//! convention, and dense polynomials with rational coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// `C(n, k)` for integer `n` and `k`.
///
/// Zero when `k < 0` or `0 <= n < k`. For negative `n` the value is the
/// binomial polynomial evaluated at `n`, i.e. `(-1)^k C(k - n - 1, k)`, so
/// Pascal's rule holds on all of `Z x Z`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n >= 0 {
        if n < k {
            return BigInt::zero();
        }
        let k = k.min(n - k);
        let mut acc = BigInt::one();
        for i in 0..k {
            acc *= n - i;
            acc /= i + 1;
        }
        acc
    } else {
        let mag = binomial(k - n - 1, k);
        if k % 2 == 0 {
            mag
        } else {
            -mag
        }
    }
}

/// Checked `C(n, k)` in `u128` for `0 <= k`, `0 <= n`.
pub fn binomial_u128(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc.checked_mul(u128::from(n - i))? / u128::from(i + 1);
    }
    Some(acc)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Dense polynomial in one variable, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        RatPoly { coeffs: vec![c] }.normalized()
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        RatPoly { coeffs }.normalized()
    }

    /// `a*m + b` as a polynomial in `m`.
    pub fn linear(a: i64, b: i64) -> Self {
        RatPoly::from_coeffs(vec![rat(b), rat(a)])
    }

    /// The binomial polynomial `m -> C(a*m + b, k)`.
    pub fn binomial(a: i64, b: i64, k: i64) -> Self {
        if k < 0 {
            return RatPoly::zero();
        }
        let mut p = RatPoly::constant(rat(1));
        for t in 0..k {
            p = &p * &RatPoly::linear(a, b - t);
        }
        p.scale(&BigRational::new(BigInt::one(), factorial(k as u64)))
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&rat(x))
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        RatPoly::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// `m -> p(m + shift)`.
    pub fn shift(&self, shift: i64) -> Self {
        let lin = RatPoly::linear(1, shift);
        let mut out = RatPoly::zero();
        for c in self.coeffs.iter().rev() {
            out = &(&out * &lin) + &RatPoly::constant(c.clone());
        }
        out
    }

    /// Interpolate the unique polynomial of degree `< values.len()` taking
    /// `values[i]` at `start + i`, via Newton forward differences.
    pub fn interpolate(start: i64, values: &[BigInt]) -> Self {
        let mut diffs: Vec<BigInt> = values.to_vec();
        let mut leading = Vec::with_capacity(values.len());
        for _ in 0..values.len() {
            leading.push(diffs[0].clone());
            diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
            if diffs.is_empty() {
                break;
            }
        }
        let mut out = RatPoly::zero();
        for (k, delta) in leading.into_iter().enumerate() {
            if delta.is_zero() {
                continue;
            }
            // C(m - start, k) = C(1*m + (-start), k)
            out = &out + &RatPoly::binomial(1, -start, k as i64).scale(&rat(delta));
        }
        out
    }
}

impl<'a> std::ops::Add<&'a RatPoly> for &'a RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> std::ops::Sub<&'a RatPoly> for &'a RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> std::ops::Mul<&'a RatPoly> for &'a RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::from_coeffs(out)
    }
}

impl fmt::Display for RatPoly {
    /// Coefficients in degree order, e.g. `[1, 3/2, 1/2]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Convert an exact rational that must be a nonnegative integer.
pub fn to_nonneg_integer(q: &BigRational, what: &'static str) -> Result<BigInt> {
    if !q.is_integer() || q.is_negative() {
        return Err(Error::Integrity(format!(
            "{what} evaluated to {q}, expected a nonnegative integer"
        )));
    }
    Ok(q.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_conventions() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(4, -1), BigInt::zero());
        assert_eq!(binomial(-1, 0), BigInt::one());
        assert_eq!(binomial(-1, 3), BigInt::from(-1));
        assert_eq!(binomial(-3, 2), BigInt::from(6));
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn pascal_rule_on_integers() {
        for n in -6..8 {
            for r in -3..9 {
                assert_eq!(
                    binomial(n - 1, r - 1) + binomial(n - 1, r),
                    binomial(n, r),
                    "n={n} r={r}"
                );
            }
        }
    }

    #[test]
    fn binomial_u128_matches_bigint() {
        for n in 0..60u64 {
            for k in 0..=n + 1 {
                assert_eq!(
                    BigInt::from(binomial_u128(n, k).unwrap()),
                    binomial(n as i64, k as i64)
                );
            }
        }
        assert!(binomial_u128(400, 200).is_none());
    }

    #[test]
    fn binomial_polynomial_agrees_with_integers() {
        let p = RatPoly::binomial(2, 3, 4);
        for m in -5..10 {
            assert_eq!(p.eval_int(m), rat(binomial(2 * m + 3, 4)), "m={m}");
        }
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = RatPoly::from_coeffs(vec![
            rat(1),
            BigRational::new(3.into(), 2.into()),
            BigRational::new(1.into(), 2.into()),
        ]);
        let vals: Vec<BigInt> = (2..6).map(|m| p.eval_int(m).to_integer()).collect();
        assert_eq!(RatPoly::interpolate(2, &vals), p);
        assert_eq!(p.shift(1).eval_int(3), p.eval_int(4));
        assert_eq!(p.to_string(), "[1, 3/2, 1/2]");
    }
}
