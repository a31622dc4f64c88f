//! Exact arithmetic in cyclotomic fields `Q(zeta_n)`.
//!
//! An element of order `n` is a rational vector of length `phi(n)` in the power
//! basis `1, zeta_n, ..., zeta_n^(phi(n)-1)`, reduced modulo the cyclotomic
//! polynomial. Mixed-order operations lift both operands to the lcm of the
//! orders. Elements that turn out to be rational are renormalized to order 1.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactpoly::{rat, Coefficient, Poly, Polynomial, Rational};


/// Largest order an element may be lifted to.
pub const MAX_ORDER: u32 = 240;

/// Polynomial with cyclotomic coefficients.
pub type CycloPolynomial = Poly<CyclotomicElement>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("cyclotomic order {0} exceeds the supported maximum {MAX_ORDER}")]
    OrderTooLarge(u32),
    #[error("cyclotomic order must be positive")]
    ZeroOrder,
    #[error("element is not rational")]
    NotRational,
}

fn phi_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (ascending) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n > 0, "cyclotomic_polynomial(0)");
    if let Some(p) = phi_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Phi_d with d | n, d < n; all divisors are monic.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d != 0 {
            continue;
        }
        let div = cyclotomic_polynomial(d);
        num = monic_int_div(&num, &div);
    }
    let arc = Arc::new(num);
    phi_cache()
        .lock()
        .unwrap()
        .entry(n)
        .or_insert_with(|| arc.clone())
        .clone()
}

fn monic_int_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut q = vec![0i64; num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd];
        q[i] = c;
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

pub fn euler_phi(n: u32) -> u32 {
    (cyclotomic_polynomial(n).len() - 1) as u32
}

/// Reduce an arbitrary-length coefficient vector modulo `Phi_n`.
fn reduce(mut v: Vec<Rational>, n: u32) -> Vec<Rational> {
    let phi = cyclotomic_polynomial(n);
    let d = phi.len() - 1;
    for i in (d..v.len()).rev() {
        if v[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut v[i], Rational::zero());
        for j in 0..d {
            if phi[j] != 0 {
                v[i - d + j] -= &c * rat(phi[j]);
            }
        }
    }
    v.resize(d, Rational::zero());
    v
}

#[derive(Clone)]
pub struct CyclotomicElement {
    order: u32,
    coeffs: Vec<Rational>,
}

impl CyclotomicElement {
    fn normalized(order: u32, coeffs: Vec<Rational>) -> Self {
        if coeffs.iter().skip(1).all(|c| c.is_nil()) {
            let c = coeffs.into_iter().next().unwrap_or_else(Rational::zero);
            CyclotomicElement {
                order: 1,
                coeffs: vec![c],
            }
        } else {
            CyclotomicElement { order, coeffs }
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        CyclotomicElement {
            order: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    /// `zeta_n^k`.
    pub fn root_of_unity(n: u32, k: i64) -> Result<Self, CycloError> {
        check_order(n)?;
        let e = k.rem_euclid(n as i64) as usize;
        let mut v = vec![Rational::zero(); e + 1];
        v[e] = Rational::one();
        Ok(Self::normalized(n, reduce(v, n)))
    }

    /// `zeta_n^k + zeta_n^-k`, i.e. `2 cos(2 pi k / n)`.
    pub fn two_cos(n: u32, k: i64) -> Result<Self, CycloError> {
        Ok(&Self::root_of_unity(n, k)? + &Self::root_of_unity(n, -k)?)
    }

    /// `sqrt(5) = 1 + 2(zeta_5 + zeta_5^4)`.
    pub fn sqrt5() -> Self {
        let t = Self::two_cos(5, 1).expect("order 5");
        &Self::from_int(1) + &(&t + &t)
    }

    /// Golden ratio `(1 + sqrt 5)/2 = 1 + zeta_5 + zeta_5^4`.
    pub fn golden_ratio() -> Self {
        &Self::from_int(1) + &Self::two_cos(5, 1).expect("order 5")
    }

    /// `a + b sqrt 5`.
    pub fn from_sqrt5_pair(a: Rational, b: Rational) -> Self {
        &Self::from_rational(a) + &Self::sqrt5().scale(&b)
    }

    /// Inverse of [`from_sqrt5_pair`](Self::from_sqrt5_pair), if the element lies in `Q(sqrt 5)`.
    pub fn to_sqrt5_pair(&self) -> Option<(Rational, Rational)> {
        if self.order == 1 {
            return Some((self.coeffs[0].clone(), Rational::zero()));
        }
        if self.order != 5 {
            return None;
        }
        // In Q(zeta_5): a + b(1 + 2z + 2z^4) = (a+b-2b) + ... after reduction:
        // z^4 = -1 - z - z^2 - z^3, so sqrt5 = -1 - 2z^2 - 2z^3.
        let c = &self.coeffs;
        if c[1] != Rational::zero() || c[2] != c[3] {
            return None;
        }
        let b = -&c[2] / rat(2);
        let a = &c[0] + &b;
        Some((a, b))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Power-basis coefficients at the current order.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    pub fn is_zero(&self) -> bool {
        self.order == 1 && self.coeffs[0].is_zero()
    }

    pub fn to_rational(&self) -> Result<Rational, CycloError> {
        if self.order == 1 {
            Ok(self.coeffs[0].clone())
        } else {
            Err(CycloError::NotRational)
        }
    }

    /// Re-express at order `target`, which must be a multiple of the current order.
    pub fn lift(&self, target: u32) -> Result<Self, CycloError> {
        check_order(target)?;
        assert!(target % self.order == 0, "lift to non-multiple order");
        if target == self.order {
            return Ok(self.clone());
        }
        let step = (target / self.order) as usize;
        let mut v = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * step] = c.clone();
        }
        Ok(CyclotomicElement {
            order: target,
            coeffs: reduce(v, target),
        })
    }

    fn lifted_pair(&self, other: &Self) -> (Self, Self) {
        let l = self.order.lcm(&other.order);
        let a = self.lift(l).expect("lifted order within bound");
        let b = other.lift(l).expect("lifted order within bound");
        (a, b)
    }

    /// Checked lcm-lifting; fails instead of panicking when the common order is too large.
    pub fn try_add(&self, other: &Self) -> Result<Self, CycloError> {
        check_order(self.order.lcm(&other.order))?;
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CycloError> {
        check_order(self.order.lcm(&other.order))?;
        Ok(self * other)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::normalized(self.order, self.coeffs.iter().map(|c| c * r).collect())
    }

    /// Complex conjugate, `zeta -> zeta^-1`.
    pub fn conjugate(&self) -> Self {
        self.galois(-1)
    }

    /// Galois automorphism `zeta_n -> zeta_n^k`, `k` coprime to the order.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.order;
        if n == 1 {
            return self.clone();
        }
        assert!(k.gcd(&(n as i64)) == 1, "galois exponent not coprime");
        let mut v = vec![Rational::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = (i as i64 * k).rem_euclid(n as i64) as usize;
            v[e] += c;
        }
        Self::normalized(n, reduce(v, n))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm mod `Phi_n`.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.order == 1 {
            return Some(Self::from_rational(self.coeffs[0].recip()));
        }
        let a = Polynomial::from_coeffs(self.coeffs.clone());
        let m = Polynomial::from_ints(&cyclotomic_polynomial(self.order));
        // invariant: r_i = s_i * a  (mod m)
        let (mut r0, mut r1) = (m, a);
        let (mut s0, mut s1) = (Polynomial::zero(), Polynomial::one());
        while r1.degree() > 0 {
            let (q, r) = r0.div_rem(&r1).ok()?;
            let s = &s0 - &(&q * &s1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        let c = r1.leading()?.recip();
        let inv = s1.scale(&c);
        let mut v = inv.into_coeffs();
        v.resize(v.len().max(1), Rational::zero());
        Some(Self::normalized(self.order, reduce(v, self.order)))
    }

    /// The element as a polynomial in `zeta` of degree below `phi(order)`.
    pub fn as_polynomial(&self) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.clone())
    }
}

fn check_order(n: u32) -> Result<(), CycloError> {
    if n == 0 {
        Err(CycloError::ZeroOrder)
    } else if n > MAX_ORDER {
        Err(CycloError::OrderTooLarge(n))
    } else {
        Ok(())
    }
}

impl PartialEq for CyclotomicElement {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.lifted_pair(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CyclotomicElement {}

impl std::ops::Add<&CyclotomicElement> for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn add(self, rhs: &CyclotomicElement) -> CyclotomicElement {
        if self.order == rhs.order {
            let v = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
            return CyclotomicElement::normalized(self.order, v);
        }
        let (a, b) = self.lifted_pair(rhs);
        &a + &b
    }
}

impl std::ops::Sub<&CyclotomicElement> for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn sub(self, rhs: &CyclotomicElement) -> CyclotomicElement {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn neg(self) -> CyclotomicElement {
        CyclotomicElement {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl std::ops::Mul<&CyclotomicElement> for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn mul(self, rhs: &CyclotomicElement) -> CyclotomicElement {
        if self.order == 1 {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.order == 1 {
            return self.scale(&rhs.coeffs[0]);
        }
        if self.order != rhs.order {
            let (a, b) = self.lifted_pair(rhs);
            return &a * &b;
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        CyclotomicElement::normalized(self.order, reduce(v, self.order))
    }
}

impl fmt::Debug for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        if let Some((a, b)) = self.to_sqrt5_pair() {
            return write!(f, "{a} + ({b})*sqrt5");
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => format!("{c}"),
                _ => format!("({c})*z{}^{i}", self.order),
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}

impl Coefficient for CyclotomicElement {
    fn nil() -> Self {
        Self::from_int(0)
    }
    fn unit() -> Self {
        Self::from_int(1)
    }
    fn is_nil(&self) -> bool {
        CyclotomicElement::is_zero(self)
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
        CyclotomicElement::inverse(self)
    }
    fn from_rational(r: Rational) -> Self {
        CyclotomicElement::from_rational(r)
    }
}

impl From<&Polynomial> for CycloPolynomial {
    fn from(p: &Polynomial) -> Self {
        p.map(|c| CyclotomicElement::from_rational(c.clone()))
    }
}

impl CycloPolynomial {
    /// Collapse to a rational polynomial; fails if any coefficient is irrational.
    pub fn to_rational(&self) -> Result<Polynomial, CycloError> {
        Ok(Polynomial::from_coeffs(
            self.coeffs()
                .iter()
                .map(|c| c.to_rational())
                .collect::<Result<_, _>>()?,
        ))
    }

    /// Apply a Galois automorphism coefficientwise.
    pub fn galois(&self, k: i64) -> Self {
        self.map(|c| c.galois(k))
    }
}

/// Check `sum_{zeta^n=1} zeta^a (1-q^2)(1-q^n)/((1-zeta q)(1-zeta^-1 q)) = n(q^[a] + q^(n-[a]))`,
/// where `[a]` is the residue of `a` mod `n` in `0..n` and the left side is computed
/// by exact division in `Q(zeta_n)[q]`.
pub fn verify_root_of_unity_sum_identity(n: u32, a: i64) -> Result<bool, CycloError> {
    check_order(n)?;
    let numer: CycloPolynomial =
        (&(&Polynomial::one_minus_q_pow(2) * &Polynomial::one_minus_q_pow(n as usize))).into();
    let mut total = CycloPolynomial::zero();
    for k in 0..n as i64 {
        let t = CyclotomicElement::two_cos(n, k)?;
        let den = CycloPolynomial::from_coeffs(vec![
            CyclotomicElement::from_int(1),
            -&t,
            CyclotomicElement::from_int(1),
        ]);
        let Ok(quot) = numer.div_exact(&den) else {
            return Ok(false);
        };
        total = &total + &quot.scale(&CyclotomicElement::root_of_unity(n, a * k)?);
    }
    let r = a.rem_euclid(n as i64) as usize;
    let expected = (&Polynomial::monomial(rat(1), r)
        + &Polynomial::monomial(rat(1), n as usize - r))
        .scale(&rat(n as i64));
    Ok(total == CycloPolynomial::from(&expected))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::ratio;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(240), 64);
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn roots_of_unity_multiply() {
        let z = CyclotomicElement::root_of_unity(12, 1).unwrap();
        let mut acc = CyclotomicElement::from_int(1);
        for _ in 0..12 {
            acc = &acc * &z;
        }
        assert_eq!(acc, CyclotomicElement::from_int(1));
        assert!(acc.is_rational());
        let w = CyclotomicElement::root_of_unity(4, 1).unwrap();
        assert_eq!(&w * &w, CyclotomicElement::from_int(-1));
        // zeta_12^3 = i
        assert_eq!(CyclotomicElement::root_of_unity(12, 3).unwrap(), w);
    }

    #[test]
    fn golden_ratio_relations() {
        let phi = CyclotomicElement::golden_ratio();
        assert_eq!(&phi * &phi, &phi + &CyclotomicElement::from_int(1));
        let s = CyclotomicElement::sqrt5();
        assert_eq!(&s * &s, CyclotomicElement::from_int(5));
        assert_eq!(s.to_sqrt5_pair(), Some((rat(0), rat(1))));
        let x = CyclotomicElement::from_sqrt5_pair(ratio(1, 2), ratio(-3, 4));
        assert_eq!(x.to_sqrt5_pair(), Some((ratio(1, 2), ratio(-3, 4))));
        assert_eq!(s.galois(2), -&s);
    }

    #[test]
    fn inverse_and_conjugate() {
        let z = CyclotomicElement::root_of_unity(7, 2).unwrap();
        let x = &z + &CyclotomicElement::from_int(3);
        let y = x.inverse().unwrap();
        assert_eq!(&x * &y, CyclotomicElement::from_int(1));
        assert_eq!(&z * &z.conjugate(), CyclotomicElement::from_int(1));
        assert!(CyclotomicElement::from_int(0).inverse().is_none());
    }

    #[test]
    fn order_cap_enforced() {
        assert_eq!(
            CyclotomicElement::root_of_unity(241, 1).unwrap_err(),
            CycloError::OrderTooLarge(241)
        );
        let a = CyclotomicElement::root_of_unity(16, 1).unwrap();
        let b = CyclotomicElement::root_of_unity(31, 1).unwrap();
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn non_rational_collapse_fails() {
        let z = CyclotomicElement::root_of_unity(5, 1).unwrap();
        assert_eq!(z.to_rational(), Err(CycloError::NotRational));
        let p = CycloPolynomial::from_coeffs(vec![z]);
        assert!(p.to_rational().is_err());
    }

    #[test]
    fn root_sum_identity_small() {
        for n in 2..=8 {
            for a in -3..(n as i64 + 3) {
                assert!(verify_root_of_unity_sum_identity(n, a).unwrap(), "n={n} a={a}");
            }
        }
    }
}
