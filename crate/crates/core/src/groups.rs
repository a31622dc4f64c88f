//! Coxeter types, their invariants, and brute-force enumeration of small groups.
//!
//! Groups of order at most [`ENUMERATION_LIMIT`] can be enumerated as explicit
//! reflection matrices. Breadth-first enumeration by right multiplication with
//! the simple reflections numbers the elements in shortlex order of their
//! reduced words, so every stored word is reduced and shortlex minimal.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::combinatorics::{Partition, SignedCycleType};
use crate::cyclotomic::{CycloPolynomial, CyclotomicElement};
use crate::exactpoly::{Polynomial, Sign};

/// Largest group order accepted by [`enumerate_group`].
pub const ENUMERATION_LIMIT: u64 = 2000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid Coxeter type: {0}")]
    InvalidType(String),
    #[error("group {ctype} has order {order}, above the enumeration limit {ENUMERATION_LIMIT}")]
    TooLarge { ctype: String, order: BigInt },
    #[error("invalid word {0:?}")]
    BadWord(String),
    #[error("invalid class label {0:?}")]
    BadClass(String),
}

/// Irreducible finite Coxeter type. `B` also stands for `C`; `G2` is `I2(6)` with
/// the crystallographic representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoxeterType {
    A(u32),
    B(u32),
    D(u32),
    E(u32),
    F4,
    G2,
    H(u32),
    /// Dihedral group of order `2n`.
    I(u32),
}

impl CoxeterType {
    /// Validating constructor from a family letter, rank and dihedral parameter.
    pub fn new(family: char, rank: u32, param: Option<u32>) -> Result<Self, GroupError> {
        let bad = || GroupError::InvalidType(format!("{family}{rank}"));
        let t = match family.to_ascii_uppercase() {
            'A' if rank >= 1 => CoxeterType::A(rank),
            'B' | 'C' if rank >= 2 => CoxeterType::B(rank),
            'D' if rank >= 4 => CoxeterType::D(rank),
            'E' if (6..=8).contains(&rank) => CoxeterType::E(rank),
            'F' if rank == 4 => CoxeterType::F4,
            'G' if rank == 2 => CoxeterType::G2,
            'H' if rank == 3 || rank == 4 => CoxeterType::H(rank),
            'I' if rank == 2 => match param {
                Some(n) if n >= 3 => CoxeterType::I(n),
                _ => return Err(GroupError::InvalidType("I2 needs a parameter n >= 3".into())),
            },
            _ => return Err(bad()),
        };
        if family.to_ascii_uppercase() != 'I' && param.is_some() {
            return Err(GroupError::InvalidType(format!(
                "{family}{rank} takes no dihedral parameter"
            )));
        }
        Ok(t)
    }

    pub fn rank(&self) -> usize {
        match *self {
            CoxeterType::A(n) | CoxeterType::B(n) | CoxeterType::D(n) => n as usize,
            CoxeterType::E(n) | CoxeterType::H(n) => n as usize,
            CoxeterType::F4 => 4,
            CoxeterType::G2 | CoxeterType::I(_) => 2,
        }
    }

    pub fn family(&self) -> char {
        match self {
            CoxeterType::A(_) => 'A',
            CoxeterType::B(_) => 'B',
            CoxeterType::D(_) => 'D',
            CoxeterType::E(_) => 'E',
            CoxeterType::F4 => 'F',
            CoxeterType::G2 => 'G',
            CoxeterType::H(_) => 'H',
            CoxeterType::I(_) => 'I',
        }
    }

    pub fn is_crystallographic(&self) -> bool {
        !matches!(self, CoxeterType::H(_) | CoxeterType::I(_))
    }

    /// Degrees of the basic invariants, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        match *self {
            CoxeterType::A(n) => (2..=n + 1).collect(),
            CoxeterType::B(n) => (1..=n).map(|i| 2 * i).collect(),
            CoxeterType::D(n) => {
                let mut d: Vec<u32> = (1..n).map(|i| 2 * i).collect();
                d.push(n);
                d.sort_unstable();
                d
            }
            CoxeterType::E(6) => vec![2, 5, 6, 8, 9, 12],
            CoxeterType::E(7) => vec![2, 6, 8, 10, 12, 14, 18],
            CoxeterType::E(_) => vec![2, 8, 12, 14, 18, 20, 24, 30],
            CoxeterType::F4 => vec![2, 6, 8, 12],
            CoxeterType::G2 => vec![2, 6],
            CoxeterType::H(3) => vec![2, 6, 10],
            CoxeterType::H(_) => vec![2, 12, 20, 30],
            CoxeterType::I(n) => vec![2, n],
        }
    }

    /// Number of positive roots (equivalently of reflections).
    pub fn num_positive_roots(&self) -> usize {
        self.degrees().iter().map(|d| (d - 1) as usize).sum()
    }

    pub fn order(&self) -> BigInt {
        self.degrees()
            .iter()
            .fold(BigInt::one(), |acc, &d| acc * BigInt::from(d))
    }

    /// `P(q) = prod_j (1 - q^(d_j)) / (1 - q)`.
    pub fn poincare_polynomial(&self) -> Polynomial {
        self.degrees()
            .iter()
            .map(|&d| {
                Polynomial::one_minus_q_pow(d as usize)
                    .divide_by_one_minus_q_power(1)
                    .expect("1-q divides 1-q^d")
            })
            .product()
    }

    pub fn is_enumerable(&self) -> bool {
        self.order() <= BigInt::from(ENUMERATION_LIMIT)
    }

    /// Coxeter matrix entry `m(s_i, s_j)`, generators numbered from 0.
    pub fn coxeter_matrix_entry(&self, i: usize, j: usize) -> u32 {
        if i == j {
            return 1;
        }
        let (i, j) = (i.min(j), i.max(j));
        let chain = |n: usize, special: Option<(usize, u32)>| -> u32 {
            if j == i + 1 && j < n {
                if let Some((k, m)) = special {
                    if i == k {
                        return m;
                    }
                }
                3
            } else {
                2
            }
        };
        match *self {
            CoxeterType::A(n) => chain(n as usize, None),
            CoxeterType::B(n) => chain(n as usize, Some((n as usize - 2, 4))),
            CoxeterType::D(n) => {
                let n = n as usize;
                if (i, j) == (n - 3, n - 1) {
                    3
                } else if j == n - 1 {
                    2
                } else {
                    chain(n - 1, None)
                }
            }
            CoxeterType::E(_) => {
                // Bourbaki: 1-3-4-5-6-7-8 with 2 attached to 4 (zero-based below)
                let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
                if edges.contains(&(i, j)) {
                    3
                } else {
                    2
                }
            }
            CoxeterType::F4 => chain(4, Some((1, 4))),
            CoxeterType::G2 => 6,
            CoxeterType::H(n) => chain(n as usize, Some((n as usize - 2, 5))),
            CoxeterType::I(n) => n,
        }
    }

    /// Generator letters used when parsing and printing words for rank <= 4.
    pub fn generator_letters(&self) -> &'static [char] {
        &['r', 's', 't', 'u']
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterType::I(n) => write!(f, "I2({n})"),
            CoxeterType::F4 => f.write_str("F4"),
            CoxeterType::G2 => f.write_str("G2"),
            t => write!(f, "{}{}", t.family(), t.rank()),
        }
    }
}

impl FromStr for CoxeterType {
    type Err = GroupError;

    /// `B3`, `C3`, `F4`, `H3`, `I2(5)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars
            .next()
            .ok_or_else(|| GroupError::InvalidType(s.into()))?;
        let rest: String = chars.collect();
        let (rank, param) = match rest.split_once('(') {
            Some((r, p)) => {
                let p = p
                    .strip_suffix(')')
                    .and_then(|p| p.trim().parse().ok())
                    .ok_or_else(|| GroupError::InvalidType(s.into()))?;
                (r, Some(p))
            }
            None => (rest.as_str(), None),
        };
        let rank = rank
            .trim()
            .parse()
            .map_err(|_| GroupError::InvalidType(s.into()))?;
        CoxeterType::new(family, rank, param)
    }
}

/// Exact commutative ring used for matrix entries.
pub trait RingElem: Clone + PartialEq + fmt::Debug {
    type Key: Hash + Eq + Clone;
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn to_cyclotomic(&self) -> CyclotomicElement;
    fn key(&self) -> Self::Key;
}

impl RingElem for i64 {
    type Key = i64;
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn to_cyclotomic(&self) -> CyclotomicElement {
        CyclotomicElement::from_int(*self)
    }
    fn key(&self) -> i64 {
        *self
    }
}

/// Element `a + b phi` of `Z[phi]`, `phi^2 = phi + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Golden {
    pub a: i64,
    pub b: i64,
}

impl Golden {
    pub const PHI: Golden = Golden { a: 0, b: 1 };

    pub fn new(a: i64, b: i64) -> Self {
        Golden { a, b }
    }
}

impl RingElem for Golden {
    type Key = (i64, i64);
    fn zero() -> Self {
        Golden::new(0, 0)
    }
    fn one() -> Self {
        Golden::new(1, 0)
    }
    fn add(&self, o: &Self) -> Self {
        Golden::new(self.a + o.a, self.b + o.b)
    }
    fn mul(&self, o: &Self) -> Self {
        Golden::new(
            self.a * o.a + self.b * o.b,
            self.a * o.b + self.b * o.a + self.b * o.b,
        )
    }
    fn neg(&self) -> Self {
        Golden::new(-self.a, -self.b)
    }
    fn to_cyclotomic(&self) -> CyclotomicElement {
        &CyclotomicElement::from_int(self.a)
            + &CyclotomicElement::golden_ratio().scale(&crate::exactpoly::rat(self.b))
    }
    fn key(&self) -> (i64, i64) {
        (self.a, self.b)
    }
}

impl RingElem for CyclotomicElement {
    /// Canonical only for elements built inside one fixed cyclotomic field.
    type Key = (u32, Vec<crate::exactpoly::Rational>);
    fn zero() -> Self {
        CyclotomicElement::from_int(0)
    }
    fn one() -> Self {
        CyclotomicElement::from_int(1)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn to_cyclotomic(&self) -> CyclotomicElement {
        self.clone()
    }
    fn key(&self) -> Self::Key {
        (self.order(), self.coeffs().to_vec())
    }
}

/// Square matrix over a [`RingElem`], row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<R> {
    n: usize,
    data: Vec<R>,
}

impl<R: RingElem> Matrix<R> {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![R::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = R::one();
        }
        Matrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Matrix {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.n + j]
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        let mut data = vec![R::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if *a == R::zero() {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] = data[i * n + j].add(&a.mul(o.get(k, j)));
                }
            }
        }
        Matrix { n, data }
    }

    pub fn key(&self) -> Vec<R::Key> {
        self.data.iter().map(|x| x.key()).collect()
    }

    pub fn trace(&self) -> R {
        (0..self.n).fold(R::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    fn minor_det(&self, rows: &[usize]) -> R {
        // Laplace expansion along the first row; only small principal minors occur.
        if rows.is_empty() {
            return R::one();
        }
        if rows.len() == 1 {
            return self.get(rows[0], rows[0]).clone();
        }
        let cols = rows.to_vec();
        det_sub(self, rows, &cols)
    }

    /// Coefficients of `det(1 - qM)`: the `k`-th is `(-1)^k e_k(M)`.
    pub fn char_poly_one_minus_q(&self) -> Vec<R> {
        let n = self.n;
        let mut out = vec![R::zero(); n + 1];
        for mask in 0u32..(1 << n) {
            let rows: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let k = rows.len();
            let d = self.minor_det(&rows);
            let d = if k % 2 == 1 { d.neg() } else { d };
            out[k] = out[k].add(&d);
        }
        out
    }
}

fn det_sub<R: RingElem>(m: &Matrix<R>, rows: &[usize], cols: &[usize]) -> R {
    if rows.len() == 1 {
        return m.get(rows[0], cols[0]).clone();
    }
    let mut acc = R::zero();
    for (idx, &c) in cols.iter().enumerate() {
        let a = m.get(rows[0], c);
        if *a == R::zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = a.mul(&det_sub(m, &rows[1..], &rest));
        acc = if idx % 2 == 0 { acc.add(&term) } else { acc.add(&term.neg()) };
    }
    acc
}

/// `det(1 - qw)` as a polynomial with cyclotomic coefficients.
pub fn char_poly_one_minus_qw<R: RingElem>(w: &Matrix<R>) -> CycloPolynomial {
    CycloPolynomial::from_coeffs(
        w.char_poly_one_minus_q()
            .iter()
            .map(|c| c.to_cyclotomic())
            .collect(),
    )
}

/// Multiplicity of the eigenvalue 1 of `w`.
pub fn eigenvalue_one_multiplicity<R: RingElem>(w: &Matrix<R>) -> usize {
    charpoly_multiplicity_of_one(&char_poly_one_minus_qw(w))
}

pub fn charpoly_multiplicity_of_one(p: &CycloPolynomial) -> usize {
    let one_minus_q: CycloPolynomial = (&Polynomial::one_minus_q_pow(1)).into();
    let mut p = p.clone();
    let mut e = 0;
    while let Ok(next) = p.div_exact(&one_minus_q) {
        if p.is_zero() {
            break;
        }
        p = next;
        e += 1;
    }
    e
}

/// Cartan-matrix representation on the root basis: `s_i(a_j) = a_j - c_ij a_i`.
fn root_basis_generators<R: RingElem>(cartan: &[Vec<R>]) -> Vec<Matrix<R>> {
    let n = cartan.len();
    (0..n)
        .map(|i| {
            let mut rows: Vec<Vec<R>> = (0..n)
                .map(|r| (0..n).map(|c| if r == c { R::one() } else { R::zero() }).collect())
                .collect();
            for j in 0..n {
                rows[i][j] = rows[i][j].add(&cartan[i][j].neg());
            }
            Matrix::from_rows(rows)
        })
        .collect()
}

fn int_cartan(t: &CoxeterType) -> Vec<Vec<i64>> {
    let n = t.rank();
    let mut c = vec![vec![0i64; n]; n];
    for i in 0..n {
        c[i][i] = 2;
        for j in 0..n {
            if i == j {
                continue;
            }
            c[i][j] = match t.coxeter_matrix_entry(i, j) {
                2 => 0,
                3 => -1,
                4 | 6 => {
                    // the long root sits at the lower index for F4, the higher for G2
                    let big = if t.coxeter_matrix_entry(i, j) == 4 { 2 } else { 3 };
                    let long_first = matches!(t, CoxeterType::F4);
                    if (i < j) == long_first {
                        -1
                    } else {
                        -big
                    }
                }
                m => panic!("no integral Cartan entry for m = {m}"),
            };
        }
    }
    c
}

fn signed_permutation_generators(t: &CoxeterType) -> Vec<Matrix<i64>> {
    let n = t.rank();
    let mut gens = Vec::new();
    for i in 0..n - 1 {
        let mut m = vec![vec![0i64; n]; n];
        for (k, row) in m.iter_mut().enumerate() {
            let target = if k == i {
                i + 1
            } else if k == i + 1 {
                i
            } else {
                k
            };
            row[target] = 1;
        }
        gens.push(Matrix::from_rows(m));
    }
    let mut m: Vec<Vec<i64>> = (0..n)
        .map(|r| (0..n).map(|c| (r == c) as i64).collect())
        .collect();
    match t {
        CoxeterType::B(_) => m[n - 1][n - 1] = -1,
        CoxeterType::D(_) => {
            m[n - 2][n - 2] = 0;
            m[n - 1][n - 1] = 0;
            m[n - 2][n - 1] = -1;
            m[n - 1][n - 2] = -1;
        }
        _ => unreachable!(),
    }
    gens.push(Matrix::from_rows(m));
    gens
}

/// Simple reflections of `t` in its natural reflection representation over the
/// integers (only for crystallographic types).
pub fn integral_generators(t: &CoxeterType) -> Option<Vec<Matrix<i64>>> {
    match t {
        CoxeterType::B(_) | CoxeterType::D(_) => Some(signed_permutation_generators(t)),
        CoxeterType::A(_) | CoxeterType::E(_) | CoxeterType::F4 | CoxeterType::G2 => {
            Some(root_basis_generators(&int_cartan(t)))
        }
        _ => None,
    }
}

/// Simple reflections of `H3`/`H4` over `Z[phi]`.
pub fn golden_generators(t: &CoxeterType) -> Option<Vec<Matrix<Golden>>> {
    let CoxeterType::H(_) = t else { return None };
    let n = t.rank();
    let cartan: Vec<Vec<Golden>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match t.coxeter_matrix_entry(i, j) {
                    1 => Golden::new(2, 0),
                    2 => Golden::new(0, 0),
                    3 => Golden::new(-1, 0),
                    _ => Golden::new(0, -1),
                })
                .collect()
        })
        .collect();
    Some(root_basis_generators(&cartan))
}

/// Simple reflections of `I2(n)` over `Q(zeta_2n)`.
pub fn dihedral_generators(n: u32) -> Vec<Matrix<CyclotomicElement>> {
    let c = CyclotomicElement::two_cos(2 * n, 1).expect("order within bound");
    let two = CyclotomicElement::from_int(2);
    let cartan = vec![vec![two.clone(), -&c], vec![-&c, two]];
    root_basis_generators(&cartan)
}

#[derive(Debug, Clone)]
pub struct ElementData {
    /// Shortlex-minimal reduced word, generators numbered from 0.
    pub word: Vec<u8>,
    pub charpoly: CycloPolynomial,
    pub trace: CyclotomicElement,
    /// Cycle data for classical types: permutation cycle type for `A`, signed
    /// cycle type for `B`/`D`.
    pub cycle_type: Option<SignedCycleType>,
}

impl ElementData {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn det(&self) -> Sign {
        Sign::from_parity(self.word.len() % 2 == 1)
    }

    /// Generators occurring in the word (the same for every reduced word).
    pub fn support(&self) -> u32 {
        self.word.iter().fold(0, |acc, &s| acc | 1 << s)
    }
}

/// A fully enumerated finite Coxeter group with multiplication tables by the
/// simple reflections.
#[derive(Debug, Clone)]
pub struct EnumeratedGroup {
    pub ctype: CoxeterType,
    elements: Vec<ElementData>,
    right: Vec<Vec<usize>>,
    left: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

/// Element indices are positions in shortlex order; 0 is the identity.
pub type ElementId = usize;

pub fn enumerate_group(t: &CoxeterType) -> Result<EnumeratedGroup, GroupError> {
    if !t.is_enumerable() {
        return Err(GroupError::TooLarge {
            ctype: t.to_string(),
            order: t.order(),
        });
    }
    let g = if let Some(gens) = integral_generators(t) {
        enumerate_with(t, gens)
    } else if let Some(gens) = golden_generators(t) {
        enumerate_with(t, gens)
    } else if let CoxeterType::I(n) = t {
        enumerate_with(t, dihedral_generators(*n))
    } else {
        unreachable!()
    };
    debug_assert_eq!(BigInt::from(g.order()), t.order());
    Ok(g)
}

fn enumerate_with<R: RingElem>(t: &CoxeterType, gens: Vec<Matrix<R>>) -> EnumeratedGroup {
    let n = gens[0].dim();
    let r = gens.len();
    let mut mats: Vec<Matrix<R>> = vec![Matrix::identity(n)];
    let mut words: Vec<Vec<u8>> = vec![Vec::new()];
    let mut index: HashMap<Vec<R::Key>, usize> = HashMap::new();
    index.insert(mats[0].key(), 0);
    let mut right = vec![Vec::new(); r];
    let mut queue = VecDeque::from([0usize]);
    while let Some(w) = queue.pop_front() {
        for (s, g) in gens.iter().enumerate() {
            let m = mats[w].mul(g);
            let key = m.key();
            let id = match index.get(&key) {
                Some(&id) => id,
                None => {
                    let id = mats.len();
                    let mut word = words[w].clone();
                    word.push(s as u8);
                    words.push(word);
                    mats.push(m);
                    index.insert(key, id);
                    queue.push_back(id);
                    id
                }
            };
            if right[s].len() <= w {
                right[s].resize(w + 1, usize::MAX);
            }
            right[s][w] = id;
        }
    }
    let size = mats.len();
    let left: Vec<Vec<usize>> = gens
        .iter()
        .map(|g| (0..size).map(|w| index[&g.mul(&mats[w]).key()]).collect())
        .collect();
    let identity = Matrix::<R>::identity(n).key();
    let mut inverse = vec![usize::MAX; size];
    for w in 0..size {
        // the inverse has the reversed word
        let mut x = 0;
        for &s in words[w].iter().rev() {
            x = right[s as usize][x];
        }
        inverse[w] = x;
    }
    debug_assert!((0..size).all(|w| mats[w].mul(&mats[inverse[w]]).key() == identity));
    let elements = mats
        .iter()
        .zip(words)
        .map(|(m, word)| {
            let cycle_type = classical_cycle_type(t, m, &word);
            ElementData {
                charpoly: char_poly_one_minus_qw(m),
                trace: m.trace().to_cyclotomic(),
                word,
                cycle_type,
            }
        })
        .collect();
    EnumeratedGroup {
        ctype: *t,
        elements,
        right,
        left,
        inverse,
    }
}

fn classical_cycle_type<R: RingElem>(
    t: &CoxeterType,
    m: &Matrix<R>,
    word: &[u8],
) -> Option<SignedCycleType> {
    match t {
        CoxeterType::A(n) => {
            let n = *n as usize + 1;
            let mut perm: Vec<usize> = (0..n).collect();
            for &s in word {
                perm.swap(s as usize, s as usize + 1);
            }
            let (pos, _) = cycles(&perm, &vec![1; n]);
            Some(SignedCycleType::new(pos, Partition::empty()))
        }
        CoxeterType::B(_) | CoxeterType::D(_) => {
            let n = m.dim();
            let mut perm = vec![0; n];
            let mut sign = vec![1i64; n];
            for j in 0..n {
                for i in 0..n {
                    let v = m.get(i, j).to_cyclotomic();
                    if !v.is_zero() {
                        perm[j] = i;
                        sign[j] = if v == CyclotomicElement::from_int(1) { 1 } else { -1 };
                    }
                }
            }
            let (pos, neg) = cycles(&perm, &sign);
            Some(SignedCycleType::new(pos, neg))
        }
        _ => None,
    }
}

fn cycles(perm: &[usize], sign: &[i64]) -> (Partition, Partition) {
    let n = perm.len();
    let mut seen = vec![false; n];
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let (mut len, mut s, mut x) = (0, 1, start);
        while !seen[x] {
            seen[x] = true;
            s *= sign[x];
            x = perm[x];
            len += 1;
        }
        if s == 1 {
            pos.push(len);
        } else {
            neg.push(len);
        }
    }
    (Partition::new(pos), Partition::new(neg))
}

impl EnumeratedGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn rank(&self) -> usize {
        self.right.len()
    }

    pub fn element(&self, w: ElementId) -> &ElementData {
        &self.elements[w]
    }

    pub fn elements(&self) -> &[ElementData] {
        &self.elements
    }

    /// `w s`.
    pub fn mul_gen_right(&self, w: ElementId, s: usize) -> ElementId {
        self.right[s][w]
    }

    /// `s w`.
    pub fn mul_gen_left(&self, s: usize, w: ElementId) -> ElementId {
        self.left[s][w]
    }

    pub fn inverse(&self, w: ElementId) -> ElementId {
        self.inverse[w]
    }

    pub fn mul(&self, x: ElementId, y: ElementId) -> ElementId {
        self.elements[y]
            .word
            .iter()
            .fold(x, |acc, &s| self.right[s as usize][acc])
    }

    /// Element represented by a word in the generators (numbered from 0).
    pub fn from_word(&self, word: &[u8]) -> Result<ElementId, GroupError> {
        let mut x = 0;
        for &s in word {
            if s as usize >= self.rank() {
                return Err(GroupError::BadWord(format!("{word:?}")));
            }
            x = self.right[s as usize][x];
        }
        Ok(x)
    }

    pub fn conjugate_by_generator(&self, w: ElementId, s: usize) -> ElementId {
        self.left[s][self.right[s][w]]
    }

    /// Reflections, i.e. conjugates of simple reflections.
    pub fn reflections(&self) -> Vec<ElementId> {
        let gens: Vec<ElementId> = (0..self.rank()).map(|s| self.right[s][0]).collect();
        let mut out: Vec<ElementId> = Vec::new();
        for c in self.conjugacy_classes() {
            if c.members.iter().any(|m| gens.contains(m)) {
                out.extend(&c.members);
            }
        }
        out.sort_unstable();
        out
    }

    /// Conjugacy classes ordered by their shortlex-first element.
    pub fn conjugacy_classes(&self) -> Vec<BruteClass> {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for w in 0..n {
            if class_of[w] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = vec![w];
            class_of[w] = id;
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                for s in 0..self.rank() {
                    let y = self.conjugate_by_generator(x, s);
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        members.push(y);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            classes.push(BruteClass {
                representative: w,
                members,
            });
        }
        classes
    }

    /// Whether `w` lies in the standard parabolic subgroup generated by `j_mask`.
    pub fn in_parabolic(&self, w: ElementId, j_mask: u32) -> bool {
        self.elements[w].support() & !j_mask == 0
    }

    /// Whether the class meets no proper standard parabolic subgroup.
    pub fn is_cuspidal_class(&self, class: &BruteClass) -> bool {
        let full = (1u32 << self.rank()) - 1;
        class.members.iter().all(|&w| self.elements[w].support() == full)
    }

    /// For each reflection class (in order of first element), the number of
    /// its reflections commuting with `w`.
    pub fn commuting_reflection_counts(&self, w: ElementId) -> Vec<usize> {
        let gens: Vec<ElementId> = (0..self.rank()).map(|s| self.right[s][0]).collect();
        self.conjugacy_classes()
            .iter()
            .filter(|c| c.members.iter().any(|m| gens.contains(m)))
            .map(|c| {
                c.members
                    .iter()
                    .filter(|&&t| self.mul(t, w) == self.mul(w, t))
                    .count()
            })
            .collect()
    }

    /// Classical or dihedral label of a class, where one is defined by cycle data.
    pub fn class_label(&self, class: &BruteClass) -> Option<ConjClassLabel> {
        let rep = &self.elements[class.representative];
        match self.ctype {
            CoxeterType::A(_) => Some(ConjClassLabel::Partition(
                rep.cycle_type.clone()?.first,
            )),
            CoxeterType::B(_) => Some(ConjClassLabel::Signed {
                cycle_type: rep.cycle_type.clone()?,
                split: None,
            }),
            CoxeterType::D(_) => {
                let ct = rep.cycle_type.clone()?;
                let split = is_split_d_class(&ct).then(|| {
                    let canon = self
                        .from_word(&canonical_split_word(&ct.first))
                        .expect("valid word");
                    if class.members.binary_search(&canon).is_ok() {
                        Sign::Plus
                    } else {
                        Sign::Minus
                    }
                });
                Some(ConjClassLabel::Signed {
                    cycle_type: ct,
                    split,
                })
            }
            CoxeterType::I(n) => Some(dihedral_label_of_word(n, &rep.word)),
            CoxeterType::G2 => Some(dihedral_label_of_word(6, &rep.word)),
            _ => None,
        }
    }
}

/// Type `D` classes whose `B`-class splits: no negative cycles, all parts even.
pub fn is_split_d_class(ct: &SignedCycleType) -> bool {
    ct.second.is_empty() && ct.first.parts().iter().all(|p| p % 2 == 0)
}

/// Word of the unsigned permutation with the given cycle type whose cycles act on
/// consecutive coordinates; it lies in the parabolic generated by `s_1..s_(n-1)`.
pub fn canonical_split_word(mu: &Partition) -> Vec<u8> {
    let mut word = Vec::new();
    let mut start = 0u8;
    for &r in mu.parts() {
        for k in 0..(r as u8).saturating_sub(1) {
            word.push(start + k);
        }
        start += r as u8;
    }
    word
}

fn dihedral_label_of_word(n: u32, word: &[u8]) -> ConjClassLabel {
    if word.len() % 2 == 1 {
        // reflections: one class for odd n, classes of r and s for even n
        // an odd alternating word is a conjugate of its middle letter
        let which = if n % 2 == 1 { 0 } else { word[word.len() / 2] };
        ConjClassLabel::DihedralReflection(which)
    } else {
        let k = (word.len() / 2) as u32;
        ConjClassLabel::DihedralRotation(k.min(n - k))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteClass {
    /// Shortlex-first element of the class.
    pub representative: ElementId,
    pub members: Vec<ElementId>,
}

impl BruteClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Conjugacy class label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConjClassLabel {
    /// Cycle type in `S_(l+1)`.
    Partition(Partition),
    /// Signed cycle type `(mu, nu)` in `B_l` or `D_l`; `split` distinguishes the
    /// two `D_l` classes sharing a split signed cycle type, `Plus` being the class
    /// of the unsigned permutation on consecutive coordinates.
    Signed {
        cycle_type: SignedCycleType,
        split: Option<Sign>,
    },
    /// Class of `(rs)^k`, `0 <= k <= n/2`.
    DihedralRotation(u32),
    /// Class of the reflection `r` (0) or `s` (1); a single class (0) for odd `n`.
    DihedralReflection(u8),
    /// Name taken from a data file.
    Named(String),
}

impl fmt::Display for ConjClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConjClassLabel::Partition(p) => write!(f, "({p})"),
            ConjClassLabel::Signed { cycle_type, split } => {
                write!(f, "{cycle_type}")?;
                match split {
                    Some(Sign::Plus) => f.write_str("split:+"),
                    Some(Sign::Minus) => f.write_str("split:-"),
                    None => Ok(()),
                }
            }
            ConjClassLabel::DihedralRotation(k) => write!(f, "k={k}"),
            ConjClassLabel::DihedralReflection(0) => f.write_str("r"),
            ConjClassLabel::DihedralReflection(_) => f.write_str("s"),
            ConjClassLabel::Named(s) => f.write_str(s),
        }
    }
}

impl ConjClassLabel {
    /// Parse a label in the syntax appropriate to `t`. Exceptional types accept
    /// any string as a name, resolved later against the data file.
    pub fn parse(t: &CoxeterType, s: &str) -> Result<Self, GroupError> {
        let bad = || GroupError::BadClass(s.to_string());
        let s = s.trim();
        let s = s.strip_prefix("C_").unwrap_or(s);
        let unbrace = |x: &str| -> String {
            let x = x.trim();
            x.strip_prefix('{')
                .and_then(|y| y.strip_suffix('}'))
                .unwrap_or(x)
                .to_string()
        };
        let s = unbrace(s);
        match t {
            CoxeterType::A(_) => Ok(ConjClassLabel::Partition(s.parse().map_err(|_| bad())?)),
            CoxeterType::B(_) | CoxeterType::D(_) => {
                let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
                let (body, split) = if let Some(b) = compact.strip_suffix("split:+") {
                    (b.to_string(), Some(Sign::Plus))
                } else if let Some(b) = compact.strip_suffix("split:-") {
                    (b.to_string(), Some(Sign::Minus))
                } else if let Some(b) = compact.strip_suffix('+') {
                    (b.to_string(), Some(Sign::Plus))
                } else if compact.ends_with(")-") {
                    (compact[..compact.len() - 1].to_string(), Some(Sign::Minus))
                } else {
                    (compact.clone(), None)
                };
                let cycle_type: SignedCycleType = body.parse().map_err(|_| bad())?;
                if split.is_some() && !is_split_d_class(&cycle_type) {
                    return Err(bad());
                }
                if split.is_some() && !matches!(t, CoxeterType::D(_)) {
                    return Err(bad());
                }
                Ok(ConjClassLabel::Signed { cycle_type, split })
            }
            CoxeterType::I(_) | CoxeterType::G2 => {
                let n = match t {
                    CoxeterType::I(n) => *n,
                    _ => 6,
                };
                let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
                match compact.as_str() {
                    "e" | "" => Ok(ConjClassLabel::DihedralRotation(0)),
                    "r" => Ok(ConjClassLabel::DihedralReflection(0)),
                    "s" => Ok(ConjClassLabel::DihedralReflection(if n % 2 == 0 { 1 } else { 0 })),
                    "rs" => Ok(ConjClassLabel::DihedralRotation(1)),
                    other => {
                        let k = other
                            .strip_prefix("(rs)^")
                            .or_else(|| other.strip_prefix("k="))
                            .unwrap_or(other)
                            .parse::<u32>()
                            .map_err(|_| bad())?;
                        let k = k % n;
                        Ok(ConjClassLabel::DihedralRotation(k.min(n - k)))
                    }
                }
            }
            _ => Ok(ConjClassLabel::Named(s)),
        }
    }
}

/// Parse a word such as `rst`, `1 2 3`, `s1s2s3` or `1,2,3` (generators numbered
/// from 1 in digit form).
pub fn parse_word(t: &CoxeterType, s: &str) -> Result<Vec<u8>, GroupError> {
    let bad = || GroupError::BadWord(s.to_string());
    let s = s.trim();
    if s.is_empty() || s == "e" {
        return Ok(Vec::new());
    }
    let letters = t.generator_letters();
    if s.chars().all(|c| letters[..t.rank().min(4)].contains(&c)) {
        return Ok(s
            .chars()
            .map(|c| letters.iter().position(|&l| l == c).unwrap() as u8)
            .collect());
    }
    let cleaned = s.replace('s', " ");
    let mut out = Vec::new();
    for tok in cleaned.split(|c: char| c == ',' || c == '.' || c.is_whitespace()) {
        if tok.is_empty() {
            continue;
        }
        if tok.len() > 1 && t.rank() < 10 && tok.chars().all(|c| c.is_ascii_digit()) {
            for c in tok.chars() {
                out.push(c.to_digit(10).unwrap());
            }
        } else {
            out.push(tok.parse::<u32>().map_err(|_| bad())?);
        }
    }
    out.into_iter()
        .map(|i| {
            if i >= 1 && (i as usize) <= t.rank() {
                Ok((i - 1) as u8)
            } else {
                Err(bad())
            }
        })
        .collect()
}

/// Render a word with letters `r, s, t, u` (rank <= 4) or 1-based digits.
pub fn format_word(t: &CoxeterType, word: &[u8]) -> String {
    if word.is_empty() {
        return "e".into();
    }
    if t.rank() <= 4 {
        word.iter()
            .map(|&s| t.generator_letters()[s as usize])
            .collect()
    } else {
        word.iter()
            .map(|&s| (s + 1).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Label of the class of Coxeter elements `s_1 s_2 ... s_l`.
pub fn coxeter_class_label(t: &CoxeterType) -> ConjClassLabel {
    let signed = |pos: Vec<u32>, neg: Vec<u32>| ConjClassLabel::Signed {
        cycle_type: SignedCycleType::new(Partition::new(pos), Partition::new(neg)),
        split: None,
    };
    match *t {
        CoxeterType::A(n) => ConjClassLabel::Partition(Partition::new(vec![n + 1])),
        CoxeterType::B(n) => signed(vec![], vec![n]),
        CoxeterType::D(n) => signed(vec![], vec![n - 1, 1]),
        CoxeterType::I(_) | CoxeterType::G2 => ConjClassLabel::DihedralRotation(1),
        CoxeterType::F4 => ConjClassLabel::Named("F_4".into()),
        CoxeterType::E(n) => ConjClassLabel::Named(format!("E_{n}")),
        CoxeterType::H(n) => {
            let word: Vec<u8> = (0..n as u8).collect();
            ConjClassLabel::Named(format_word(t, &word))
        }
    }
}

/// Label of the class of the longest element, for the families where it is
/// determined by cycle data.
pub fn longest_class_label(t: &CoxeterType) -> Option<ConjClassLabel> {
    let signed = |pos: Vec<u32>, neg: Vec<u32>| ConjClassLabel::Signed {
        cycle_type: SignedCycleType::new(Partition::new(pos), Partition::new(neg)),
        split: None,
    };
    Some(match *t {
        CoxeterType::A(n) => {
            let mut parts = vec![2; (n as usize + 1) / 2];
            if n % 2 == 0 {
                parts.push(1);
            }
            ConjClassLabel::Partition(Partition::new(parts))
        }
        CoxeterType::B(n) => signed(vec![], vec![1; n as usize]),
        CoxeterType::D(n) if n % 2 == 0 => signed(vec![], vec![1; n as usize]),
        // w0 negates all but one coordinate
        CoxeterType::D(n) => signed(vec![1], vec![1; n as usize - 1]),
        CoxeterType::I(n) if n % 2 == 0 => ConjClassLabel::DihedralRotation(n / 2),
        CoxeterType::I(_) => ConjClassLabel::DihedralReflection(0),
        CoxeterType::G2 => ConjClassLabel::DihedralRotation(3),
        _ => return None,
    })
}

/// Whether every component of the parabolic subgroup on `j_mask` has type `A`:
/// all edges inside have `m = 3` and no node has more than two neighbours.
/// Finite Coxeter diagrams are forests, so this leaves only paths.
pub fn is_type_a_parabolic(t: &CoxeterType, j_mask: u32) -> bool {
    let n = t.rank();
    let inside = |i: usize| j_mask >> i & 1 == 1;
    (0..n).filter(|&i| inside(i)).all(|i| {
        let nbrs: Vec<u32> = (0..n)
            .filter(|&j| j != i && inside(j))
            .map(|j| t.coxeter_matrix_entry(i, j))
            .filter(|&m| m > 2)
            .collect();
        nbrs.len() <= 2 && nbrs.iter().all(|&m| m == 3)
    })
}
