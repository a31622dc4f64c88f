//! Partitions, bipartitions, Murnaghan–Nakayama rules and q-binomials.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::exactpoly::{rat, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("cannot parse partition {0:?}")]
    Parse(String),
    #[error("partition parts must be positive")]
    ZeroPart,
    #[error("character label has weight {label} but class has weight {class}")]
    WeightMismatch { label: u32, class: u32 },
}

/// Weakly decreasing sequence of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts the parts; zero parts are dropped.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition(
            (1..=first)
                .map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32)
                .collect(),
        )
    }

    /// `n(lambda) = sum (i-1) lambda_i`.
    pub fn n_statistic(&self) -> u32 {
        self.0.iter().enumerate().map(|(i, &p)| i as u32 * p).sum()
    }

    /// Hook lengths of all boxes, row by row.
    pub fn hook_lengths(&self) -> Vec<u32> {
        let conj = self.conjugate();
        let mut out = Vec::new();
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row as usize {
                out.push(row - j as u32 + conj.0[j] - i as u32 - 1);
            }
        }
        out
    }

    /// Multiplicity of each part size, as `(part, count)` in decreasing order of part.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, c)) if *q == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Order of the centralizer in `S_n` of an element of this cycle type.
    pub fn z(&self) -> BigInt {
        let mut z = BigInt::one();
        for (p, c) in self.multiplicities() {
            for k in 1..=c {
                z *= BigInt::from(p) * BigInt::from(k);
            }
        }
        z
    }

    /// Beta-set of length `len` (first-column hook lengths, padded).
    fn beta_set(&self, len: usize) -> Vec<u32> {
        (0..len)
            .map(|i| self.0.get(i).copied().unwrap_or(0) + (len - 1 - i) as u32)
            .collect()
    }

    fn from_beta_set(beta: &[u32]) -> Partition {
        let mut b = beta.to_vec();
        b.sort_unstable_by(|x, y| y.cmp(x));
        let len = b.len();
        Partition::new(
            b.iter()
                .enumerate()
                .map(|(i, &x)| x - (len - 1 - i) as u32)
                .collect(),
        )
    }

    /// All partitions obtained by removing an `r`-rim hook, with leg-length parity sign.
    pub fn remove_rim_hooks(&self, r: u32) -> Vec<(Partition, i64)> {
        let len = self.0.len();
        let beta = self.beta_set(len);
        let mut out = Vec::new();
        for (i, &x) in beta.iter().enumerate() {
            if x < r || beta.contains(&(x - r)) {
                continue;
            }
            let between = beta.iter().filter(|&&y| y > x - r && y < x).count();
            let mut nb = beta.clone();
            nb[i] = x - r;
            let sign = if between % 2 == 0 { 1 } else { -1 };
            out.push((Partition::from_beta_set(&nb), sign));
        }
        out
    }
}

/// All partitions of `n` in reverse lexicographic order, starting with `(n)`.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in (1..=n.min(max)).rev() {
            prefix.push(p);
            go(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for Partition {
    /// Comma-separated parts; `-` for the empty partition; runs of three or more
    /// ones are written `1^k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        let ones = self.0.iter().filter(|&&p| p == 1).count();
        let mut items: Vec<String> = self
            .0
            .iter()
            .filter(|&&p| p != 1 || ones < 3)
            .map(|p| p.to_string())
            .collect();
        if ones >= 3 {
            items.push(format!("1^{ones}"));
        }
        f.write_str(&items.join(","))
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    /// Accepts `2,1`, `(2,1)`, `1^3`, `3,1^2`, `-`, `()` and the empty string.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .unwrap_or(t)
            .trim();
        if t.is_empty() || t == "-" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for item in t.split(',') {
            let item = item.trim();
            let (base, exp) = match item.split_once('^') {
                Some((b, e)) => (b.trim(), e.trim()),
                None => (item, "1"),
            };
            let base: u32 = base.parse().map_err(|_| PartitionError::Parse(s.into()))?;
            let exp: u32 = exp.parse().map_err(|_| PartitionError::Parse(s.into()))?;
            if base == 0 {
                return Err(PartitionError::ZeroPart);
            }
            parts.extend(std::iter::repeat(base).take(exp as usize));
        }
        Ok(Partition::new(parts))
    }
}

/// Ordered pair of partitions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bipartition {
    pub first: Partition,
    pub second: Partition,
}

impl Bipartition {
    pub fn new(first: Partition, second: Partition) -> Self {
        Bipartition { first, second }
    }

    pub fn weight(&self) -> u32 {
        self.first.weight() + self.second.weight()
    }

    pub fn swapped(&self) -> Bipartition {
        Bipartition::new(self.second.clone(), self.first.clone())
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}),({})", self.first, self.second)
    }
}

impl FromStr for Bipartition {
    type Err = PartitionError;

    /// `(2,1),(-)`, `(2,1),()`, or `2.1|-` style with `|` separating the halves.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let (a, b) = if let Some(split) = t.find("),") {
            (&t[..=split], &t[split + 2..])
        } else if let Some((a, b)) = t.split_once('|') {
            (a, b)
        } else {
            return Err(PartitionError::Parse(s.into()));
        };
        Ok(Bipartition::new(a.parse()?, b.parse()?))
    }
}

/// All bipartitions of total weight `n`, ordered by the weight of the first half
/// (descending) and then by reverse lexicographic order in each half.
pub fn bipartitions_of(n: u32) -> Vec<Bipartition> {
    let mut out = Vec::new();
    for k in (0..=n).rev() {
        for a in partitions_of(k) {
            for b in partitions_of(n - k) {
                out.push(Bipartition::new(a.clone(), b));
            }
        }
    }
    out
}

/// Conjugacy class of `B_n`: cycle lengths of positive and negative cycles.
pub type SignedCycleType = Bipartition;

/// Centralizer order in `B_n` of an element with the given signed cycle type.
pub fn signed_centralizer_order(t: &SignedCycleType) -> BigInt {
    let mut z = BigInt::one();
    for part in [&t.first, &t.second] {
        for (p, c) in part.multiplicities() {
            for k in 1..=c {
                z *= BigInt::from(2 * p) * BigInt::from(k);
            }
        }
    }
    z
}

fn sym_cache() -> &'static Mutex<HashMap<(Partition, Partition), i64>> {
    static C: OnceLock<Mutex<HashMap<(Partition, Partition), i64>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `chi^lambda(mu)` for the symmetric group via the Murnaghan–Nakayama rule.
pub fn symmetric_char_value(lambda: &Partition, mu: &Partition) -> Result<i64, PartitionError> {
    if lambda.weight() != mu.weight() {
        return Err(PartitionError::WeightMismatch {
            label: lambda.weight(),
            class: mu.weight(),
        });
    }
    Ok(sym_value(lambda, mu))
}

fn sym_value(lambda: &Partition, mu: &Partition) -> i64 {
    if mu.is_empty() {
        return 1;
    }
    let key = (lambda.clone(), mu.clone());
    if let Some(&v) = sym_cache().lock().unwrap().get(&key) {
        return v;
    }
    let r = mu.0[0];
    let rest = Partition(mu.0[1..].to_vec());
    let v = lambda
        .remove_rim_hooks(r)
        .iter()
        .map(|(l, s)| s * sym_value(l, &rest))
        .sum();
    sym_cache().lock().unwrap().entry(key).or_insert(v);
    v
}

type HypKey = (Bipartition, Bipartition);

fn hyp_cache() -> &'static Mutex<HashMap<HypKey, i64>> {
    static C: OnceLock<Mutex<HashMap<HypKey, i64>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `chi^(alpha,beta)` of `B_n` on the class with signed cycle type `(mu, nu)`.
///
/// Rim hooks removed from `beta` pick up an extra `-1` for a negative cycle.
pub fn hyperoctahedral_char_value(
    label: &Bipartition,
    class: &SignedCycleType,
) -> Result<i64, PartitionError> {
    if label.weight() != class.weight() {
        return Err(PartitionError::WeightMismatch {
            label: label.weight(),
            class: class.weight(),
        });
    }
    Ok(hyp_value(label, class))
}

fn hyp_value(label: &Bipartition, class: &SignedCycleType) -> i64 {
    if class.first.is_empty() && class.second.is_empty() {
        return 1;
    }
    let key = (label.clone(), class.clone());
    if let Some(&v) = hyp_cache().lock().unwrap().get(&key) {
        return v;
    }
    let (r, eps, rest) = if let Some((&r, tail)) = class.first.0.split_first() {
        (
            r,
            1,
            Bipartition::new(Partition(tail.to_vec()), class.second.clone()),
        )
    } else {
        let (&r, tail) = class.second.0.split_first().expect("nonempty");
        (
            r,
            -1,
            Bipartition::new(class.first.clone(), Partition(tail.to_vec())),
        )
    };
    let mut v = 0;
    for (a, s) in label.first.remove_rim_hooks(r) {
        v += s * hyp_value(&Bipartition::new(a, label.second.clone()), &rest);
    }
    for (b, s) in label.second.remove_rim_hooks(r) {
        v += eps * s * hyp_value(&Bipartition::new(label.first.clone(), b), &rest);
    }
    hyp_cache().lock().unwrap().entry(key).or_insert(v);
    v
}

/// Gaussian binomial `[l choose k]_t` as a polynomial in `t`.
pub fn q_binomial(l: u32, k: u32) -> Polynomial {
    if k > l {
        return Polynomial::zero();
    }
    let k = k.min(l - k);
    let mut num = Polynomial::one();
    let mut den = Polynomial::one();
    for j in 0..k {
        num = &num * &Polynomial::one_minus_q_pow((l - j) as usize);
        den = &den * &Polynomial::one_minus_q_pow((j + 1) as usize);
    }
    num.div_exact(&den).expect("q-binomial is a polynomial")
}

/// `sum_{k=0}^{l} (-1)^k q^(k^2) [l k]_{q^2}`.
pub fn gauss_alternating_sum(l: u32) -> Polynomial {
    (0..=l)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            q_binomial(l, k)
                .substitute_power(2)
                .shift((k * k) as usize)
                .scale(&rat(sign))
        })
        .sum()
}

/// `sum_{k=0}^{l} (-1)^k q^(k^2 + l - 2k) [l k]_{q^2}`; every exponent is
/// `(k-1)^2 + l - 1 >= 0`.
pub fn gauss_shifted_sum(l: u32) -> Polynomial {
    (0..=l)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let e = (k as i64 - 1).pow(2) + l as i64 - 1;
            q_binomial(l, k)
                .substitute_power(2)
                .shift(e as usize)
                .scale(&rat(sign))
        })
        .sum()
}

/// `sum (-1)^k q^(k^2) [l k]_{q^2} = prod_{j=1}^{l} (1 - q^(2j-1))`.
pub fn verify_gauss_alternating_instance(l: u32) -> bool {
    let rhs: Polynomial = (1..=l)
        .map(|j| Polynomial::one_minus_q_pow((2 * j - 1) as usize))
        .product();
    l >= 1 && gauss_alternating_sum(l) == rhs
}

/// `sum (-1)^k q^(k^2+l-2k) [l k]_{q^2} = q^(l-1) (q-1) prod_{j=1}^{l-1} (1 - q^(2j-1))`.
pub fn verify_gauss_shifted_instance(l: u32) -> bool {
    if l == 0 {
        return false;
    }
    let rhs: Polynomial = (1..l)
        .map(|j| Polynomial::one_minus_q_pow((2 * j - 1) as usize))
        .product::<Polynomial>()
        * Polynomial::q_pow_minus_one(1).shift((l - 1) as usize);
    gauss_shifted_sum(l) == rhs
}
