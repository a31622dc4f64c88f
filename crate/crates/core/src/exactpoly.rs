//! Dense univariate polynomials with exact coefficients.
//!
//! [`Poly`] is generic over a [`Coefficient`] field; [`Polynomial`] is the
//! rational instance used for every final answer. Coefficients are stored in
//! ascending order of exponent with no trailing zeros, so the zero polynomial
//! is the empty vector and has degree `-1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Polynomial with rational coefficients.
pub type Polynomial = Poly<Rational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division is not exact")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("degree {degree} exceeds reversal bound {bound}")]
    DegreeExceedsBound { degree: isize, bound: usize },
}

/// `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        Sign::from_parity(self != other)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Field operations needed by [`Poly`].
///
/// Method names avoid the `std::ops` names so both can be in scope.
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;
    fn from_rational(r: Rational) -> Self;
}

impl Coefficient for Rational {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> Default for Poly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> Poly<C> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::unit())
    }

    pub fn constant(c: C) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(C::unit(), 1)
    }

    pub fn monomial(c: C, k: usize) -> Self {
        if c.is_nil() {
            return Self::zero();
        }
        let mut coeffs = vec![C::nil(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_nil()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Coefficient of `q^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::nil)
    }

    /// Degree, `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_nil())
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x.times(c)).collect())
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::nil(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `p(q^k)`.
    pub fn substitute_power(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return Self::constant(
                self.coeffs
                    .iter()
                    .fold(C::nil(), |acc, c| acc.plus(c)),
            );
        }
        let mut coeffs = vec![C::nil(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Self::from_coeffs(coeffs)
    }

    pub fn eval(&self, x: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::nil(), |acc, c| acc.times(x).plus(c))
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        let lead = divisor.leading().ok_or(PolyError::DivisionByZero)?;
        let inv = lead.inverse().ok_or(PolyError::DivisionByZero)?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![C::nil(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].times(&inv);
            if c.is_nil() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].minus(&c.times(d));
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Quotient of an exact division; fails if there is a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, PolyError> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::NotDivisible)
        }
    }

    /// `q^n p(1/q)`; requires `deg p <= n`.
    pub fn reverse(&self, n: usize) -> Result<Self, PolyError> {
        if self.degree() > n as isize {
            return Err(PolyError::DegreeExceedsBound {
                degree: self.degree(),
                bound: n,
            });
        }
        let mut coeffs = vec![C::nil(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[n - i] = c.clone();
        }
        Ok(Self::from_coeffs(coeffs))
    }

    /// Whether `q^n p(1/q) = sign * p`.
    pub fn is_palindromic(&self, n: usize, sign: Sign) -> bool {
        match self.reverse(n) {
            Ok(r) => match sign {
                Sign::Plus => r == *self,
                Sign::Minus => r == -self,
            },
            Err(_) => false,
        }
    }

    /// Exact division by `1 - q^k`.
    pub fn divide_by_one_minus_q_power(&self, k: usize) -> Result<Self, PolyError> {
        if k == 0 {
            return Err(PolyError::DivisionByZero);
        }
        // p = (1 - q^k) s  <=>  s_i = p_i + s_{i-k}
        let n = self.coeffs.len();
        if n == 0 {
            return Ok(Self::zero());
        }
        if n <= k {
            return Err(PolyError::NotDivisible);
        }
        let mut s = vec![C::nil(); n - k];
        for i in 0..n - k {
            s[i] = if i >= k {
                self.coeffs[i].plus(&s[i - k])
            } else {
                self.coeffs[i].clone()
            };
        }
        for i in n - k..n {
            let carried = if i >= k { s[i - k].clone() } else { C::nil() };
            if self.coeffs[i].plus(&carried) != C::nil() {
                return Err(PolyError::NotDivisible);
            }
        }
        Ok(Self::from_coeffs(s))
    }

    /// Largest `e` such that `(1 - q)^e` divides `self` (zero polynomial: 0).
    pub fn multiplicity_of_one(&self) -> usize {
        if self.is_zero() {
            return 0;
        }
        let mut e = 0;
        let mut p = self.clone();
        while let Ok(next) = p.divide_by_one_minus_q_power(1) {
            p = next;
            e += 1;
        }
        e
    }
}

impl<C: Coefficient> Add<&Poly<C>> for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i).plus(&rhs.coeff(i))).collect())
    }
}

impl<C: Coefficient> Sub<&Poly<C>> for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i).minus(&rhs.coeff(i))).collect())
    }
}

impl<C: Coefficient> Mul<&Poly<C>> for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![C::nil(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_nil() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Poly::from_coeffs(out)
    }
}

impl<C: Coefficient> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.negated()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Coefficient> $tr<Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, rhs: Poly<C>) -> Poly<C> {
                (&self).$m(&rhs)
            }
        }
        impl<C: Coefficient> $tr<&Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, rhs: &Poly<C>) -> Poly<C> {
                (&self).$m(rhs)
            }
        }
        impl<C: Coefficient> $tr<Poly<C>> for &Poly<C> {
            type Output = Poly<C>;
            fn $m(self, rhs: Poly<C>) -> Poly<C> {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coefficient> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -&self
    }
}

impl<C: Coefficient> std::iter::Sum for Poly<C> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Poly::zero(), |a, b| &a + &b)
    }
}

impl<C: Coefficient> std::iter::Product for Poly<C> {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Poly::one(), |a, b| &a * &b)
    }
}

impl Polynomial {
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// `1 - q^k`.
    pub fn one_minus_q_pow(k: usize) -> Self {
        &Self::one() - &Self::monomial(rat(1), k)
    }

    /// `1 + q^k`.
    pub fn one_plus_q_pow(k: usize) -> Self {
        &Self::one() + &Self::monomial(rat(1), k)
    }

    /// `q^k - 1`.
    pub fn q_pow_minus_one(k: usize) -> Self {
        &Self::monomial(rat(1), k) - &Self::one()
    }

    /// Coefficients as integers, if they all are.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Coefficients as `i64`, if they are all integers that fit.
    pub fn i64_coeffs(&self) -> Option<Vec<i64>> {
        self.integer_coeffs()?.iter().map(|c| c.to_i64()).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Bracketed list such as `[1,2,3]`; fractions as `n/d`.
    pub fn coefficient_list(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

impl fmt::Display for Polynomial {
    /// Ascending exponents, e.g. `1 + 2q - q^3`, `(1/2)q^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            let negative = c.is_negative();
            let a = c.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let unit = a.is_one();
            let body = if a.is_integer() {
                a.to_integer().to_string()
            } else {
                format!("({a})")
            };
            match i {
                0 => f.write_str(&body)?,
                _ => {
                    if !unit {
                        f.write_str(&body)?;
                    }
                    if i == 1 {
                        f.write_str("q")?;
                    } else {
                        write!(f, "q^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn display_matches_convention() {
        assert_eq!(p(&[1, 2, 3]).to_string(), "1 + 2q + 3q^2");
        assert_eq!(p(&[0, -1, 0, 1]).to_string(), "-q + q^3");
        assert_eq!(p(&[]).to_string(), "0");
        let half = Polynomial::from_coeffs(vec![rat(0), ratio(1, 2)]);
        assert_eq!(half.to_string(), "(1/2)q");
        assert_eq!(p(&[1, 0, 2]).coefficient_list(), "[1,0,2]");
    }

    #[test]
    fn division_by_one_minus_q_power() {
        let f = &p(&[1, 1, 1]) * &Polynomial::one_minus_q_pow(3);
        assert_eq!(f.divide_by_one_minus_q_power(3).unwrap(), p(&[1, 1, 1]));
        assert_eq!(
            p(&[1, 1]).divide_by_one_minus_q_power(1),
            Err(PolyError::NotDivisible)
        );
        assert_eq!(p(&[1, -1]).divide_by_one_minus_q_power(1).unwrap(), p(&[1]));
    }

    #[test]
    fn multiplicity_of_one_counts_factors() {
        let f = &Polynomial::one_minus_q_pow(1).pow(3) * &p(&[1, 1]);
        assert_eq!(f.multiplicity_of_one(), 3);
        assert_eq!(p(&[1, 1]).multiplicity_of_one(), 0);
    }

    #[test]
    fn reverse_and_palindromy() {
        let f = p(&[1, 2, 1]);
        assert!(f.is_palindromic(2, Sign::Plus));
        assert!(!f.is_palindromic(3, Sign::Plus));
        assert!(p(&[1, 0, -1]).is_palindromic(2, Sign::Minus));
        assert!(matches!(
            f.reverse(1),
            Err(PolyError::DegreeExceedsBound { .. })
        ));
        assert_eq!(p(&[0, 1]).reverse(3).unwrap(), p(&[0, 0, 1]));
    }

    #[test]
    fn exact_division_detects_remainder() {
        let a = p(&[1, 0, -1]);
        assert_eq!(a.div_exact(&p(&[1, 1])).unwrap(), p(&[1, -1]));
        assert_eq!(a.div_exact(&p(&[2, 1])), Err(PolyError::NotDivisible));
        assert_eq!(a.div_exact(&p(&[])), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn substitute_power_and_eval() {
        assert_eq!(p(&[1, 1]).substitute_power(2), p(&[1, 0, 1]));
        assert_eq!(p(&[1, 2, 3]).eval(&rat(2)), rat(17));
    }
}
