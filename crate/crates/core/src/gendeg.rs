//! Generic degrees `d_chi(q)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use thiserror::Error;

use crate::chartab::{
    class_sign, d_char_labels, dihedral_char_labels, CharLabel, CharacterTable, DihedralChar,
    TableError,
};
use crate::combinatorics::{bipartitions_of, partitions_of, Bipartition, Partition};
use crate::cyclotomic::{CycloPolynomial, CyclotomicElement};
use crate::exactpoly::{rat, Polynomial, Rational};
use crate::groups::CoxeterType;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenDegError {
    #[error("generic degree of the trivial character is not 1")]
    TrivialNotOne,
    #[error("generic degree of the sign character is not q^N")]
    SignNotTopPower,
    #[error("sum of chi(e) d_chi(q) differs from the Poincare polynomial")]
    PoincareSum,
    #[error("epsilon-twist d_(eps chi)(q) = q^N d_chi(1/q) fails for {0}")]
    EpsilonTwist(String),
    #[error("q does not divide the generic degree of {0}")]
    NotDivisibleByQ(String),
    #[error("no generic degree for {0}")]
    MissingLabel(String),
    #[error("no closed-form generic degrees for {0}")]
    Unsupported(String),
    #[error(transparent)]
    Table(#[from] TableError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenericDegreeTable {
    pub ctype: CoxeterType,
    pub labels: Vec<CharLabel>,
    pub entries: Vec<CycloPolynomial>,
}

impl GenericDegreeTable {
    pub fn get(&self, chi: &CharLabel) -> Option<&CycloPolynomial> {
        self.labels.iter().position(|l| l == chi).map(|i| &self.entries[i])
    }

    /// Entries in the row order of `table`.
    pub fn aligned(&self, table: &CharacterTable) -> Result<Vec<CycloPolynomial>, GenDegError> {
        table
            .char_labels
            .iter()
            .map(|l| {
                self.get(l)
                    .cloned()
                    .ok_or_else(|| GenDegError::MissingLabel(l.to_string()))
            })
            .collect()
    }

    /// Check `d_1 = 1`, `d_eps = q^N`, `sum chi(e) d_chi = P`, the epsilon-twist
    /// and `q | d_chi` for nontrivial `chi`.
    pub fn validate(&self, table: &CharacterTable) -> Result<(), GenDegError> {
        let d = self.aligned(table)?;
        let k = table.num_classes();
        let n = self.ctype.num_positive_roots();
        let one = CyclotomicElement::from_int(1);
        let signs: Vec<CyclotomicElement> = (0..k)
            .map(|c| CyclotomicElement::from_int(class_sign(table, c)))
            .collect();
        let trivial = (0..k).find(|&i| table.values[i].iter().all(|v| *v == one));
        let sign = (0..k).find(|&i| table.values[i] == signs);
        let trivial = trivial.ok_or(GenDegError::TrivialNotOne)?;
        if d[trivial] != CycloPolynomial::one() {
            return Err(GenDegError::TrivialNotOne);
        }
        let top = CycloPolynomial::monomial(one.clone(), n);
        if sign.map(|s| &d[s]) != Some(&top) {
            return Err(GenDegError::SignNotTopPower);
        }
        let mut sum = CycloPolynomial::zero();
        for (i, di) in d.iter().enumerate() {
            let deg = CyclotomicElement::from_rational(Rational::from_integer(table.degree(i)));
            sum = &sum + &di.scale(&deg);
        }
        if sum != CycloPolynomial::from(&self.ctype.poincare_polynomial()) {
            return Err(GenDegError::PoincareSum);
        }
        for i in 0..k {
            let name = table.char_labels[i].to_string();
            let twisted: Vec<CyclotomicElement> =
                (0..k).map(|c| &table.values[i][c] * &signs[c]).collect();
            let j = (0..k)
                .find(|&j| table.values[j] == twisted)
                .ok_or_else(|| GenDegError::EpsilonTwist(name.clone()))?;
            match d[i].reverse(n) {
                Ok(r) if r == d[j] => {}
                _ => return Err(GenDegError::EpsilonTwist(name)),
            }
            if i != trivial && !d[i].coeff(0).is_zero() {
                return Err(GenDegError::NotDivisibleByQ(name));
            }
        }
        Ok(())
    }
}

/// Fake degree of `chi^lambda`: `q^{n(lambda)} prod_{j<=n}(1-q^j) / prod_cells (1-q^h)`.
pub fn fake_degree_a(lambda: &Partition) -> Polynomial {
    let num: Polynomial = (1..=lambda.weight() as usize)
        .map(Polynomial::one_minus_q_pow)
        .product();
    let den: Polynomial = lambda
        .hook_lengths()
        .iter()
        .map(|&h| Polynomial::one_minus_q_pow(h as usize))
        .product();
    num.div_exact(&den)
        .expect("hook formula divides")
        .shift(lambda.n_statistic() as usize)
}

/// Symbol with rows `top` and `bottom`, each strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BSymbol {
    pub top: Vec<u32>,
    pub bottom: Vec<u32>,
    pub defect: i32,
}

impl BSymbol {
    fn rows(p: &Partition, len: usize) -> Vec<u32> {
        let mut parts: Vec<u32> = p.parts().to_vec();
        parts.resize(len, 0);
        parts.reverse();
        parts.iter().enumerate().map(|(i, &x)| x + i as u32).collect()
    }

    /// Defect-1 symbol of `(alpha, beta)`, `alpha` in the longer row.
    pub fn type_b(b: &Bipartition) -> Self {
        let m = b.first.len().saturating_sub(1).max(b.second.len());
        BSymbol {
            top: Self::rows(&b.first, m + 1),
            bottom: Self::rows(&b.second, m),
            defect: 1,
        }
    }

    /// Defect-0 symbol of `{alpha, beta}`.
    pub fn type_d(b: &Bipartition) -> Self {
        let m = b.first.len().max(b.second.len());
        BSymbol {
            top: Self::rows(&b.first, m),
            bottom: Self::rows(&b.second, m),
            defect: 0,
        }
    }

    /// The symbol part of the generic degree: differences within rows and sums
    /// across rows, over `2^c q^{...} prod_x prod_{k<=x}(q^{2k}-1)`.
    fn ratio(&self) -> (Polynomial, Polynomial) {
        let qp = |k: u32| Polynomial::monomial(rat(1), k as usize);
        let mut num = Polynomial::one();
        for row in [&self.top, &self.bottom] {
            for (i, &x) in row.iter().enumerate() {
                for &y in &row[i + 1..] {
                    num = &num * &(&qp(y) - &qp(x));
                }
            }
        }
        for &x in &self.top {
            for &y in &self.bottom {
                num = &num * &(&qp(x) + &qp(y));
            }
        }
        let total = (self.top.len() + self.bottom.len()) as i64;
        let mut shift = 0usize;
        let mut t = total - 2;
        while t >= 2 {
            shift += (t * (t - 1) / 2) as usize;
            t -= 2;
        }
        let halves = (total - 1) / 2;
        let mut den = Polynomial::constant(Rational::from_integer(BigInt::from(1) << halves as usize))
            .shift(shift);
        for &x in self.top.iter().chain(&self.bottom) {
            for k in 1..=x {
                den = &den * &Polynomial::q_pow_minus_one(2 * k as usize);
            }
        }
        (num, den)
    }
}

/// Generic degree of `chi^(alpha,beta)` in type `B_l`.
pub fn generic_degree_b(b: &Bipartition) -> Polynomial {
    let l = b.weight() as usize;
    let order: Polynomial = (1..=l).map(|i| Polynomial::q_pow_minus_one(2 * i)).product();
    let (num, den) = BSymbol::type_b(b).ratio();
    (&order * &num).div_exact(&den).expect("symbol formula divides")
}

/// Generic degree of a character of `D_l`; both split characters get half of the
/// degenerate symbol's value.
pub fn generic_degree_d(chi: &CharLabel) -> Option<Polynomial> {
    let b = match chi {
        CharLabel::Pair(b) => b.clone(),
        CharLabel::Split(a, _) => Bipartition::new(a.clone(), a.clone()),
        _ => return None,
    };
    let l = b.weight() as usize;
    let order: Polynomial = (1..l)
        .map(|i| Polynomial::q_pow_minus_one(2 * i))
        .product::<Polynomial>()
        * Polynomial::q_pow_minus_one(l);
    let (num, den) = BSymbol::type_d(&b).ratio();
    let d = (&order * &num).div_exact(&den).ok()?;
    Some(if matches!(chi, CharLabel::Split(..)) {
        d.scale(&(rat(1) / rat(2)))
    } else {
        d
    })
}

/// Generic degree of a character of `I2(n)`.
pub fn generic_degree_dihedral(n: u32, chi: DihedralChar) -> CycloPolynomial {
    let one = CyclotomicElement::from_int(1);
    match chi {
        DihedralChar::Trivial => CycloPolynomial::one(),
        DihedralChar::Sign => CycloPolynomial::monomial(one, n as usize),
        DihedralChar::Delta | DihedralChar::SignDelta => {
            let p = Polynomial::one_minus_q_pow(n as usize)
                .div_exact(&Polynomial::one_minus_q_pow(2))
                .expect("n even")
                .shift(1)
                .scale(&(rat(2) / rat(n as i64)));
            CycloPolynomial::from(&p)
        }
        DihedralChar::Two(m) => {
            let t = CyclotomicElement::two_cos(n, m as i64).expect("order within range");
            let p = CycloPolynomial::from(&CoxeterType::I(n).poincare_polynomial().shift(1));
            let num = p.scale(&(&CyclotomicElement::from_int(2) - &t));
            let den = CycloPolynomial::from_coeffs(vec![one.clone(), -&t, one]);
            num.div_exact(&den)
                .expect("denominator divides q P(q)")
                .scale(&CyclotomicElement::from_rational(rat(1) / rat(n as i64)))
        }
    }
}

fn classical(t: CoxeterType) -> Result<GenericDegreeTable, GenDegError> {
    let (labels, entries): (Vec<CharLabel>, Vec<CycloPolynomial>) = match t {
        CoxeterType::A(n) => partitions_of(n + 1)
            .into_iter()
            .map(|l| {
                let d = CycloPolynomial::from(&fake_degree_a(&l));
                (CharLabel::Partition(l), d)
            })
            .unzip(),
        CoxeterType::B(l) => bipartitions_of(l)
            .into_iter()
            .map(|b| {
                let d = CycloPolynomial::from(&generic_degree_b(&b));
                (CharLabel::Bipartition(b), d)
            })
            .unzip(),
        CoxeterType::D(l) => d_char_labels(l)
            .into_iter()
            .map(|c| {
                let d = CycloPolynomial::from(&generic_degree_d(&c).expect("D label"));
                (c, d)
            })
            .unzip(),
        CoxeterType::I(_) | CoxeterType::G2 => {
            let n = if let CoxeterType::I(n) = t { n } else { 6 };
            dihedral_char_labels(n)
                .into_iter()
                .map(|c| {
                    let CharLabel::Dihedral(d) = c else { unreachable!() };
                    (c, generic_degree_dihedral(n, d))
                })
                .unzip()
        }
        _ => return Err(GenDegError::Unsupported(t.to_string())),
    };
    Ok(GenericDegreeTable {
        ctype: t,
        labels,
        entries,
    })
}

/// Closed-form generic degrees for classical and dihedral types, memoized per type.
pub fn generic_degrees_classical(t: CoxeterType) -> Result<Arc<GenericDegreeTable>, GenDegError> {
    static CACHE: OnceLock<Mutex<HashMap<CoxeterType, Arc<GenericDegreeTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().expect("cache lock").get(&t) {
        return Ok(t.clone());
    }
    let table = Arc::new(classical(t)?);
    Ok(cache
        .lock()
        .expect("cache lock")
        .entry(t)
        .or_insert(table)
        .clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::char_table_classical;

    fn q(k: usize) -> Polynomial {
        Polynomial::monomial(rat(1), k)
    }
    fn omq(k: usize) -> Polynomial {
        Polynomial::one_minus_q_pow(k)
    }
    fn opq(k: usize) -> Polynomial {
        Polynomial::one_plus_q_pow(k)
    }
    fn ratio(num: Vec<Polynomial>, den: Vec<Polynomial>) -> Polynomial {
        let n: Polynomial = num.into_iter().product();
        let d: Polynomial = den.into_iter().product();
        n.div_exact(&d).unwrap()
    }
    fn hook(a: u32, k: usize) -> Partition {
        let mut p = vec![a];
        p.extend(std::iter::repeat(1).take(k));
        Partition::new(p)
    }

    #[test]
    fn fake_degrees() {
        assert_eq!(fake_degree_a(&Partition::new(vec![3])), Polynomial::one());
        assert_eq!(fake_degree_a(&Partition::new(vec![1, 1, 1])), q(3));
        assert_eq!(fake_degree_a(&Partition::new(vec![2, 1])), &q(1) + &q(2));
    }

    #[test]
    fn tables_validate() {
        let mut types: Vec<CoxeterType> = (1..=8).map(CoxeterType::A).collect();
        types.extend((2..=6).map(CoxeterType::B));
        types.extend((4..=6).map(CoxeterType::D));
        types.extend((3..=16).map(CoxeterType::I));
        types.push(CoxeterType::G2);
        for t in types {
            let table = char_table_classical(t).unwrap();
            generic_degrees_classical(t).unwrap().validate(&table).unwrap();
        }
    }

    #[test]
    fn b_hook_formulas() {
        for l in 2..=6usize {
            for k in 0..l {
                let mut num = vec![q(k * k), opq(l), opq(k)];
                let mut den = vec![Polynomial::constant(rat(2)), opq(l - k)];
                for j in 1..=k {
                    num.push(omq(2 * (l - j)));
                    den.push(omq(2 * j));
                }
                let b = Bipartition::new(hook((l - k) as u32, k), Partition::empty());
                assert_eq!(generic_degree_b(&b), ratio(num, den), "l={l} k={k}");
            }
            for k in 1..=l {
                let mut num = vec![q(k * k), opq(l), opq(l - k)];
                let mut den = vec![Polynomial::constant(rat(2)), opq(k)];
                for j in 1..k {
                    num.push(omq(2 * (l - j)));
                    den.push(omq(2 * j));
                }
                let b = Bipartition::new(Partition::empty(), hook((l - k + 1) as u32, k - 1));
                assert_eq!(generic_degree_b(&b), ratio(num, den), "l={l} k={k}");
            }
        }
    }

    #[test]
    fn d_printed_cases() {
        let pair = |a: Partition, b: Partition| {
            generic_degree_d(&crate::chartab::d_pair_label(&Bipartition::new(a, b))).unwrap()
        };
        for l in 4..=6usize {
            assert_eq!(pair(Partition::new(vec![l as u32]), Partition::empty()), Polynomial::one());
            assert_eq!(pair(hook(1, l - 1), Partition::empty()), q(l * l - l));
            for k in 1..=l - 3 {
                let mut parts = vec![(l - k - 1) as u32, 2];
                parts.extend(std::iter::repeat(1).take(k - 1));
                let mut num = vec![q(k * k + k + 1), omq(l), omq(l - k - 2)];
                let mut den = vec![omq(1), omq(k + 1)];
                for j in 0..=k {
                    num.push(opq(l - j - 1));
                    den.push(opq(j));
                }
                for j in 1..k {
                    num.push(omq(l - j - 1));
                    den.push(omq(j));
                }
                assert_eq!(pair(Partition::new(parts), Partition::empty()), ratio(num, den), "l={l} k={k}");
            }
            for k in 0..=l - 2 {
                let mut num = vec![q(k * k + k + 1), omq(l), opq(k)];
                let mut den = vec![omq(1), opq(l - k - 1)];
                for j in 0..=k + 1 {
                    num.push(opq(l - j - 1));
                    den.push(opq(j));
                }
                for j in 1..=k {
                    num.push(omq(l - j - 1));
                    den.push(omq(j));
                }
                let got = pair(hook((l - k - 1) as u32, k), Partition::new(vec![1]));
                assert_eq!(got, ratio(num, den), "l={l} k={k}");
            }
        }
    }

    #[test]
    fn dihedral_values() {
        let d = generic_degree_dihedral(5, DihedralChar::Two(1));
        let five = d.scale(&CyclotomicElement::from_int(5));
        assert!(five.coeffs().iter().all(|c| c
            .coeffs()
            .iter()
            .all(|x| x.is_integer())));
        assert_eq!(d.eval(&CyclotomicElement::from_int(1)), CyclotomicElement::from_int(2));
        let delta = generic_degree_dihedral(6, DihedralChar::Delta).to_rational().unwrap();
        let expect = (&omq(6) * &q(1))
            .div_exact(&omq(2))
            .unwrap()
            .scale(&(rat(2) / rat(6)));
        assert_eq!(delta, expect);
    }
}
