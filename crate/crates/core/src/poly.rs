//! Dense univariate polynomials with exact rational coefficients.
//!
//! Coefficient `i` multiplies `x^i`. Everything that has to be an exact identity
//! (orthogonality, derivative relations, endpoint values) is checked at this level,
//! with no floating point involved.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn zero() -> Self {
        RationalPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^power`
    pub fn monomial(power: usize, c: BigRational) -> Self {
        let mut coeffs = vec![BigRational::zero(); power + 1];
        coeffs[power] = c;
        Self::new(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(1, BigRational::one())
    }

    /// `1 - x`
    pub fn one_minus_x() -> Self {
        Self::from_i64s(&[1, -1])
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Index of the last nonzero coefficient; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiply by `x` (coefficient shift up).
    pub fn mul_x(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigRational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    /// Exact division by `x`. Fails unless the constant term is zero.
    pub fn div_x(&self) -> Result<Self> {
        match self.coeffs.first() {
            None => Ok(Self::zero()),
            Some(c0) if c0.is_zero() => Ok(Self::new(self.coeffs[1..].to_vec())),
            Some(c0) => Err(Error::NotDivisibleByX(c0.to_string())),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, order: usize) -> Self {
        (0..order).fold(self.clone(), |p, _| p.derivative())
    }

    /// `p(1 - x)`
    pub fn reflect(&self) -> Self {
        // Horner in the composed variable.
        let u = Self::one_minus_x();
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &u) + &Self::constant(c.clone());
        }
        acc
    }

    /// Exact long division. Returns `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        if divisor.is_zero() {
            return Err(Error::arg("division by the zero polynomial"));
        }
        let dd = divisor.degree();
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + dd] / &lead;
            if !q.is_zero() {
                for (j, c) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = &rem[i + j] - &q * c;
                }
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact division that must leave no remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Internal(format!(
                "division by {divisor} leaves remainder {r}"
            )))
        }
    }

    /// `∫₀¹ p(x) dx`
    pub fn integral_unit(&self) -> BigRational {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c / int(i as i64 + 1))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Horner's scheme on the coefficients rounded to `f64`.
    ///
    /// Loses accuracy quickly with degree for families whose monomial
    /// coefficients grow (all the orthogonal systems in this crate); use
    /// [`RoundedEvaluator`] or the recurrence evaluators when that matters.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(to_f64).collect()
    }

    /// Exact value at the binary rational `x`, correctly rounded.
    pub fn eval_rounded(&self, x: f64) -> f64 {
        RoundedEvaluator::new(self).eval(x)
    }

    /// Whether `self = c * other` for some nonzero rational `c`; returns `c`.
    pub fn proportionality(&self, other: &Self) -> Option<BigRational> {
        if self.is_zero() || other.is_zero() || self.degree() != other.degree() {
            return None;
        }
        let c = self.leading() / other.leading();
        (*self == other.scale(&c)).then_some(c)
    }
}

pub fn to_f64(c: &BigRational) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

/// Exact `BigRational` for a finite `f64` (every finite double is a binary rational).
pub fn from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

/// `∫₀¹ p(x) q(x) / x dx`, exact.
///
/// The product must vanish at 0; otherwise the integral diverges and an error is returned.
pub fn weighted_inner(p: &RationalPoly, q: &RationalPoly) -> Result<BigRational> {
    let (pn, pd) = integer_form(p);
    let (qn, qd) = integer_form(q);
    if pn.is_empty() || qn.is_empty() {
        return Ok(BigRational::zero());
    }
    if !(pn[0].is_zero() || qn[0].is_zero()) {
        return Err(Error::arg(
            "weighted inner product diverges: neither factor vanishes at x = 0",
        ));
    }
    let mut total = BigRational::zero();
    for s in 1..(pn.len() + qn.len() - 1) {
        let lo = s.saturating_sub(qn.len() - 1);
        let hi = s.min(pn.len() - 1);
        let mut conv = BigInt::zero();
        for i in lo..=hi {
            conv += &pn[i] * &qn[s - i];
        }
        if !conv.is_zero() {
            total += BigRational::new(conv, BigInt::from(s));
        }
    }
    Ok(total / BigRational::from_integer(pd * qd))
}

/// Integer numerators over a common positive denominator.
fn integer_form(p: &RationalPoly) -> (Vec<BigInt>, BigInt) {
    let denom = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let numer = p
        .coeffs
        .iter()
        .map(|c| c.numer() * (&denom / c.denom()))
        .collect();
    (numer, denom)
}

/// Evaluates a fixed polynomial exactly at binary-rational points and rounds once.
///
/// Costs a few big-integer multiplications per coefficient, so it is meant for
/// root polishing and symmetry checks, not dense quadrature grids.
#[derive(Clone, Debug)]
pub struct RoundedEvaluator {
    numer: Vec<BigInt>,
    denom: BigInt,
}

impl RoundedEvaluator {
    pub fn new(p: &RationalPoly) -> Self {
        let (numer, denom) = integer_form(p);
        RoundedEvaluator { numer, denom }
    }

    pub fn eval(&self, x: f64) -> f64 {
        if !x.is_finite() {
            return f64::NAN;
        }
        let Some(top) = self.numer.len().checked_sub(1) else {
            return 0.0;
        };
        if x == 0.0 {
            return ratio_to_f64(self.numer[0].clone(), self.denom.clone());
        }
        let (mant, exp, sign) = x.integer_decode();
        let mut m = mant;
        let mut e = exp as i64;
        let tz = m.trailing_zeros() as i64;
        m >>= tz;
        e += tz;
        let m = BigInt::from(m) * BigInt::from(sign);
        if e >= 0 {
            let xv = m << (e as usize);
            let mut acc = self.numer[top].clone();
            for c in self.numer[..top].iter().rev() {
                acc = acc * &xv + c;
            }
            ratio_to_f64(acc, self.denom.clone())
        } else {
            let s = (-e) as usize;
            let mut acc = self.numer[top].clone();
            for (i, c) in self.numer[..top].iter().enumerate().rev() {
                acc = acc * &m + (c << (s * (top - i)));
            }
            ratio_to_f64(acc, &self.denom << (s * top))
        }
    }
}

fn ratio_to_f64(n: BigInt, d: BigInt) -> f64 {
    BigRational::new_raw(n, d).to_f64().unwrap_or(f64::NAN)
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::new(out)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one() && i > 0;
            if !unit {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> RationalPoly {
        RationalPoly::from_i64s(cs)
    }

    #[test]
    fn trailing_zeros_are_dropped() {
        let q = p(&[1, 2, 0, 0]);
        assert_eq!(q.degree(), 1);
        assert_eq!(p(&[0, 0]).degree(), 0);
        assert!(p(&[0, 0]).is_zero());
    }

    #[test]
    fn division_by_x_requires_zero_constant() {
        assert_eq!(p(&[0, 3, -4]).div_x().unwrap(), p(&[3, -4]));
        assert!(matches!(p(&[1, 3]).div_x(), Err(Error::NotDivisibleByX(_))));
    }

    #[test]
    fn long_division() {
        // (x^2 - 1) / (x - 1) = x + 1
        let (q, r) = p(&[-1, 0, 1]).div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
        assert!(p(&[1, 0, 1]).div_exact(&p(&[-1, 1])).is_err());
    }

    #[test]
    fn reflection() {
        // x^2 -> (1-x)^2
        assert_eq!(p(&[0, 0, 1]).reflect(), p(&[1, -2, 1]));
    }

    #[test]
    fn unit_integrals() {
        assert_eq!(p(&[0, 0, 1]).integral_unit(), rat(1, 3));
        // ∫ x^2 * x^3 / x = 1/5
        assert_eq!(weighted_inner(&p(&[0, 0, 1]), &p(&[0, 0, 0, 1])).unwrap(), rat(1, 5));
        assert!(weighted_inner(&p(&[1]), &p(&[1, 1])).is_err());
    }

    #[test]
    fn rounded_evaluation_matches_exact() {
        let q = RationalPoly::new(vec![rat(1, 3), rat(-7, 5), int(11), rat(2, 9)]);
        for &x in &[0.0, 0.1, -2.5, 0.7071067811865476, 1e-9, 3.0e5] {
            let exact = to_f64(&q.eval_rational(&from_f64(x)));
            assert_eq!(q.eval_rounded(x), exact, "x = {x}");
        }
        assert_eq!(RationalPoly::zero().eval_rounded(0.3), 0.0);
    }

    #[test]
    fn proportionality_detects_scalar_multiples() {
        assert_eq!(p(&[2, 4]).proportionality(&p(&[1, 2])), Some(int(2)));
        assert_eq!(p(&[2, 5]).proportionality(&p(&[1, 2])), None);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -6, 6]).to_string(), "1 - 6x + 6x^2");
        assert_eq!(p(&[0, 1]).to_string(), "x");
        assert_eq!(RationalPoly::new(vec![rat(-1, 2)]).to_string(), "-1/2");
    }
}
