//! Character tables with exact cyclotomic values, addressed by labels.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::combinatorics::{
    bipartitions_of, hyperoctahedral_char_value, partitions_of, signed_centralizer_order,
    symmetric_char_value, Bipartition, Partition, SignedCycleType,
};
use crate::cyclotomic::{CycloPolynomial, CyclotomicElement};
use crate::exactpoly::{rat, Rational, Sign};
use crate::groups::{
    is_split_d_class, BruteClass, ConjClassLabel, CoxeterType, EnumeratedGroup, GroupError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("row orthogonality fails for characters {0} and {1}")]
    RowOrthogonality(String, String),
    #[error("column orthogonality fails for classes {0} and {1}")]
    ColumnOrthogonality(String, String),
    #[error("class sizes sum to {sum}, expected {order}")]
    ClassSizes { sum: BigInt, order: BigInt },
    #[error("character {0} is not real-valued")]
    NotReal(String),
    #[error("character degree of {0} is not a positive integer")]
    BadDegree(String),
    #[error("table shape does not match its labels")]
    Shape,
    #[error("rank {rank} is outside the supported range for type {family}")]
    RankOutOfRange { family: char, rank: usize },
    #[error("brute-force class {0} matches no table class")]
    UnmatchedClass(String),
    #[error("brute-force class {0} matches more than one table class")]
    AmbiguousFingerprint(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Irreducible character of a dihedral group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DihedralChar {
    Trivial,
    Sign,
    /// `delta(r) = -1`, `delta(s) = +1`; even `n` only.
    Delta,
    SignDelta,
    /// Two-dimensional `chi_m`, `1 <= m < n/2`.
    Two(u32),
}

/// Character label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CharLabel {
    /// `chi^lambda` of `S_(l+1)`.
    Partition(Partition),
    /// `chi^(alpha,beta)` of `B_l`.
    Bipartition(Bipartition),
    /// Restriction of `chi^(alpha,beta)` to `D_l`, `alpha != beta`, stored in the
    /// orientation listed first by [`bipartitions_of`].
    Pair(Bipartition),
    /// One of the two constituents of the restriction of `chi^(alpha,alpha)`.
    Split(Partition, Sign),
    Dihedral(DihedralChar),
    Named(String),
}

impl fmt::Display for CharLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharLabel::Partition(p) => write!(f, "({p})"),
            CharLabel::Bipartition(b) => write!(f, "{b}"),
            CharLabel::Pair(b) => write!(f, "{{{b}}}"),
            CharLabel::Split(a, s) => {
                write!(f, "{{({a}),{}}}", if *s == Sign::Plus { "+" } else { "-" })
            }
            CharLabel::Dihedral(d) => match d {
                DihedralChar::Trivial => f.write_str("1"),
                DihedralChar::Sign => f.write_str("eps"),
                DihedralChar::Delta => f.write_str("delta"),
                DihedralChar::SignDelta => f.write_str("eps*delta"),
                DihedralChar::Two(m) => write!(f, "chi_{m}"),
            },
            CharLabel::Named(s) => f.write_str(s),
        }
    }
}

/// Optional per-class metadata used to match brute-force classes.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ClassInfo {
    pub charpoly: Option<CycloPolynomial>,
    /// Representative word, generators numbered from 0.
    pub word: Option<Vec<u8>>,
    pub commuting_reflections: Option<Vec<usize>>,
    pub carter_label: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CharacterTable {
    pub ctype: CoxeterType,
    pub class_labels: Vec<ConjClassLabel>,
    pub class_sizes: Vec<BigInt>,
    pub char_labels: Vec<CharLabel>,
    /// Rows indexed like `char_labels`, columns like `class_labels`.
    pub values: Vec<Vec<CyclotomicElement>>,
    /// Index of the identity class.
    pub identity_class: usize,
    pub class_info: Vec<ClassInfo>,
}

impl CharacterTable {
    pub fn num_classes(&self) -> usize {
        self.class_labels.len()
    }

    pub fn num_chars(&self) -> usize {
        self.char_labels.len()
    }

    pub fn class_index(&self, c: &ConjClassLabel) -> Option<usize> {
        self.class_labels.iter().position(|x| x == c)
    }

    pub fn char_index(&self, c: &CharLabel) -> Option<usize> {
        self.char_labels.iter().position(|x| x == c)
    }

    pub fn value(&self, chi: &CharLabel, c: &ConjClassLabel) -> Option<&CyclotomicElement> {
        Some(&self.values[self.char_index(chi)?][self.class_index(c)?])
    }

    /// `chi(e)` for the character in row `i`.
    pub fn degree(&self, i: usize) -> BigInt {
        self.values[i][self.identity_class]
            .to_rational()
            .expect("degrees are rational")
            .to_integer()
    }

    pub fn order(&self) -> BigInt {
        self.class_sizes.iter().sum()
    }

    fn integer_values(&self) -> Option<Vec<Vec<i128>>> {
        self.values
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| {
                        let r = v.to_rational().ok()?;
                        r.is_integer().then(|| r.to_integer().to_i128()).flatten()
                    })
                    .collect()
            })
            .collect()
    }

    /// Exact row and column orthogonality, reality, class-size sum, and degrees.
    pub fn validate(&self) -> Result<(), TableError> {
        let k = self.num_classes();
        if self.num_chars() != k
            || self.class_sizes.len() != k
            || self.class_info.len() != k
            || self.values.len() != k
            || self.values.iter().any(|r| r.len() != k)
        {
            return Err(TableError::Shape);
        }
        let order = self.ctype.order();
        let sum = self.order();
        if sum != order {
            return Err(TableError::ClassSizes { sum, order });
        }
        for (i, row) in self.values.iter().enumerate() {
            if row.iter().any(|v| v.conjugate() != *v) {
                return Err(TableError::NotReal(self.char_labels[i].to_string()));
            }
            let d = row[self.identity_class].to_rational().ok();
            if !d.is_some_and(|d| d.is_integer() && d > Rational::zero()) {
                return Err(TableError::BadDegree(self.char_labels[i].to_string()));
            }
        }
        let row_err = |i: usize, j: usize| {
            TableError::RowOrthogonality(
                self.char_labels[i].to_string(),
                self.char_labels[j].to_string(),
            )
        };
        let col_err = |i: usize, j: usize| {
            TableError::ColumnOrthogonality(
                self.class_labels[i].to_string(),
                self.class_labels[j].to_string(),
            )
        };
        if let (Some(v), Some(sizes)) = (
            self.integer_values(),
            self.class_sizes
                .iter()
                .map(|s| s.to_i128())
                .collect::<Option<Vec<i128>>>(),
        ) {
            let ord = order.to_i128().expect("small group");
            for i in 0..k {
                for j in i..k {
                    let s: i128 = (0..k).map(|c| sizes[c] * v[i][c] * v[j][c]).sum();
                    if s != if i == j { ord } else { 0 } {
                        return Err(row_err(i, j));
                    }
                    let t: i128 = (0..k).map(|x| v[x][i] * v[x][j]).sum();
                    let expected = if i == j { ord / sizes[i] } else { 0 };
                    if t != expected || (i == j && ord % sizes[i] != 0) {
                        return Err(col_err(i, j));
                    }
                }
            }
            return Ok(());
        }
        let ord = CyclotomicElement::from_rational(Rational::from_integer(order.clone()));
        let zero = CyclotomicElement::from_int(0);
        for i in 0..k {
            for j in i..k {
                let mut s = CyclotomicElement::from_int(0);
                for c in 0..k {
                    let term = &self.values[i][c] * &self.values[j][c].conjugate();
                    s = &s + &term.scale(&Rational::from_integer(self.class_sizes[c].clone()));
                }
                if s != if i == j { ord.clone() } else { zero.clone() } {
                    return Err(row_err(i, j));
                }
                let mut t = CyclotomicElement::from_int(0);
                for x in 0..k {
                    t = &t + &(&self.values[x][i] * &self.values[x][j].conjugate());
                }
                let expected = if i == j {
                    let (q, r) = order.div_rem(&self.class_sizes[i]);
                    if !r.is_zero() {
                        return Err(col_err(i, j));
                    }
                    CyclotomicElement::from_rational(Rational::from_integer(q))
                } else {
                    zero.clone()
                };
                if t != expected {
                    return Err(col_err(i, j));
                }
            }
        }
        Ok(())
    }
}

/// `det(w)` on the class in column `c`, read from its label or charpoly.
pub fn class_sign(table: &CharacterTable, c: usize) -> i64 {
    let par = |k: u32| if k % 2 == 0 { 1 } else { -1 };
    match &table.class_labels[c] {
        ConjClassLabel::Partition(l) => par(l.weight() - l.len() as u32),
        ConjClassLabel::Signed { cycle_type, .. } => {
            let pos: i64 = cycle_type.first.parts().iter().map(|&r| par(r - 1)).product();
            let neg: i64 = cycle_type.second.parts().iter().map(|&r| par(r)).product();
            pos * neg
        }
        ConjClassLabel::DihedralRotation(_) => 1,
        ConjClassLabel::DihedralReflection(_) => -1,
        ConjClassLabel::Named(_) => {
            let r = table.ctype.rank();
            let p = table.class_info[c]
                .charpoly
                .as_ref()
                .expect("named classes carry a charpoly");
            let lead = p.coeff(r).to_rational().expect("rational charpoly");
            if (lead > Rational::zero()) == (r % 2 == 0) {
                1
            } else {
                -1
            }
        }
    }
}

const MAX_RANK_A: u32 = 8;
const MAX_RANK_B: u32 = 6;
const MAX_RANK_D: u32 = 6;

fn int(v: i64) -> CyclotomicElement {
    CyclotomicElement::from_int(v)
}

/// Character table of type `A_n` (the symmetric group on `n + 1` letters).
pub fn char_table_a(n: u32) -> Result<CharacterTable, TableError> {
    if n < 1 || n > MAX_RANK_A {
        return Err(TableError::RankOutOfRange {
            family: 'A',
            rank: n as usize,
        });
    }
    let parts = partitions_of(n + 1);
    let order = CoxeterType::A(n).order();
    let values = parts
        .iter()
        .map(|l| {
            parts
                .iter()
                .map(|m| int(symmetric_char_value(l, m).expect("weights agree")))
                .collect()
        })
        .collect();
    Ok(CharacterTable {
        ctype: CoxeterType::A(n),
        class_labels: parts.iter().cloned().map(ConjClassLabel::Partition).collect(),
        class_sizes: parts.iter().map(|m| &order / m.z()).collect(),
        char_labels: parts.iter().cloned().map(CharLabel::Partition).collect(),
        values,
        identity_class: parts.len() - 1,
        class_info: vec![ClassInfo::default(); parts.len()],
    })
}

fn signed(ct: SignedCycleType, split: Option<Sign>) -> ConjClassLabel {
    ConjClassLabel::Signed {
        cycle_type: ct,
        split,
    }
}

fn identity_signed(l: u32) -> SignedCycleType {
    Bipartition::new(Partition::new(vec![1; l as usize]), Partition::empty())
}

/// Character table of type `B_l`.
pub fn char_table_b(l: u32) -> Result<CharacterTable, TableError> {
    if !(2..=MAX_RANK_B).contains(&l) {
        return Err(TableError::RankOutOfRange {
            family: 'B',
            rank: l as usize,
        });
    }
    let labels = bipartitions_of(l);
    let order = CoxeterType::B(l).order();
    let values = labels
        .iter()
        .map(|chi| {
            labels
                .iter()
                .map(|c| int(hyperoctahedral_char_value(chi, c).expect("weights agree")))
                .collect()
        })
        .collect();
    let id = identity_signed(l);
    Ok(CharacterTable {
        ctype: CoxeterType::B(l),
        identity_class: labels.iter().position(|c| *c == id).expect("identity class"),
        class_labels: labels.iter().map(|c| signed(c.clone(), None)).collect(),
        class_sizes: labels
            .iter()
            .map(|c| &order / signed_centralizer_order(c))
            .collect(),
        char_labels: labels.iter().cloned().map(CharLabel::Bipartition).collect(),
        values,
        class_info: vec![ClassInfo::default(); labels.len()],
    })
}

/// Classes of `D_l` in table order: signed cycle types with an even number of
/// negative cycles, split types contributing a `+` and a `-` class.
pub fn d_class_labels(l: u32) -> Vec<ConjClassLabel> {
    let mut out = Vec::new();
    for ct in bipartitions_of(l) {
        if ct.second.len() % 2 == 1 {
            continue;
        }
        if is_split_d_class(&ct) {
            out.push(signed(ct.clone(), Some(Sign::Plus)));
            out.push(signed(ct, Some(Sign::Minus)));
        } else {
            out.push(signed(ct, None));
        }
    }
    out
}

/// Characters of `D_l` in table order.
pub fn d_char_labels(l: u32) -> Vec<CharLabel> {
    let all = bipartitions_of(l);
    let mut out = Vec::new();
    for (i, b) in all.iter().enumerate() {
        if b.first == b.second {
            out.push(CharLabel::Split(b.first.clone(), Sign::Plus));
            out.push(CharLabel::Split(b.first.clone(), Sign::Minus));
        } else {
            let j = all.iter().position(|x| *x == b.swapped()).expect("swap present");
            if i < j {
                out.push(CharLabel::Pair(b.clone()));
            }
        }
    }
    out
}

/// Normalize an unordered pair to the stored orientation.
pub fn d_pair_label(b: &Bipartition) -> CharLabel {
    if b.first == b.second {
        panic!("degenerate pair has split labels");
    }
    let all = bipartitions_of(b.weight());
    let i = all.iter().position(|x| x == b).expect("bipartition of l");
    let j = all.iter().position(|x| *x == b.swapped()).expect("bipartition of l");
    CharLabel::Pair(if i < j { b.clone() } else { b.swapped() })
}

/// Value of a character of `D_l` on a class of `D_l`.
pub fn d_char_value(chi: &CharLabel, class: &ConjClassLabel) -> Option<CyclotomicElement> {
    let ConjClassLabel::Signed { cycle_type, split } = class else {
        return None;
    };
    match chi {
        CharLabel::Pair(b) => Some(int(hyperoctahedral_char_value(b, cycle_type).ok()?)),
        CharLabel::Split(a, s) => {
            let full = hyperoctahedral_char_value(&Bipartition::new(a.clone(), a.clone()), cycle_type)
                .ok()?;
            let v = match split {
                None => rat(full) / rat(2),
                Some(cs) => {
                    // 2rho = mu: the difference character is 2^{l(rho)} chi^a(rho) on C^+
                    let rho = Partition::new(cycle_type.first.parts().iter().map(|p| p / 2).collect());
                    let diff = symmetric_char_value(a, &rho).ok()? << rho.len();
                    let sign = s.times(*cs).value();
                    rat(full + sign * diff) / rat(2)
                }
            };
            Some(CyclotomicElement::from_rational(v))
        }
        _ => None,
    }
}

/// Size in `D_l` of a class.
pub fn d_class_size(l: u32, class: &ConjClassLabel) -> BigInt {
    let ConjClassLabel::Signed { cycle_type, split } = class else {
        panic!("not a signed label");
    };
    let b = CoxeterType::B(l).order() / signed_centralizer_order(cycle_type);
    if split.is_some() {
        b / 2
    } else {
        b
    }
}

/// Character table of type `D_l`.
pub fn char_table_d(l: u32) -> Result<CharacterTable, TableError> {
    if !(4..=MAX_RANK_D).contains(&l) {
        return Err(TableError::RankOutOfRange {
            family: 'D',
            rank: l as usize,
        });
    }
    let classes = d_class_labels(l);
    let chars = d_char_labels(l);
    let values = chars
        .iter()
        .map(|chi| {
            classes
                .iter()
                .map(|c| d_char_value(chi, c).expect("valid labels"))
                .collect()
        })
        .collect();
    let id = signed(identity_signed(l), None);
    Ok(CharacterTable {
        ctype: CoxeterType::D(l),
        identity_class: classes.iter().position(|c| *c == id).expect("identity"),
        class_sizes: classes.iter().map(|c| d_class_size(l, c)).collect(),
        class_info: vec![ClassInfo::default(); classes.len()],
        class_labels: classes,
        char_labels: chars,
        values,
    })
}

/// Dihedral classes in table order: rotations `k = 0..=n/2`, then reflections.
pub fn dihedral_class_labels(n: u32) -> Vec<ConjClassLabel> {
    let mut out: Vec<ConjClassLabel> = (0..=n / 2).map(ConjClassLabel::DihedralRotation).collect();
    out.push(ConjClassLabel::DihedralReflection(0));
    if n % 2 == 0 {
        out.push(ConjClassLabel::DihedralReflection(1));
    }
    out
}

pub fn dihedral_char_labels(n: u32) -> Vec<CharLabel> {
    let mut out = vec![
        CharLabel::Dihedral(DihedralChar::Trivial),
        CharLabel::Dihedral(DihedralChar::Sign),
    ];
    if n % 2 == 0 {
        out.push(CharLabel::Dihedral(DihedralChar::Delta));
        out.push(CharLabel::Dihedral(DihedralChar::SignDelta));
    }
    out.extend((1..n.div_ceil(2)).map(|m| CharLabel::Dihedral(DihedralChar::Two(m))));
    out
}

pub fn dihedral_char_value(n: u32, chi: DihedralChar, class: &ConjClassLabel) -> Option<CyclotomicElement> {
    let par = |k: u32| if k % 2 == 0 { 1 } else { -1 };
    let v = match (chi, class) {
        (DihedralChar::Trivial, _) => int(1),
        (DihedralChar::Sign, ConjClassLabel::DihedralRotation(_)) => int(1),
        (DihedralChar::Sign, ConjClassLabel::DihedralReflection(_)) => int(-1),
        (DihedralChar::Delta | DihedralChar::SignDelta, ConjClassLabel::DihedralRotation(k)) => {
            int(par(*k))
        }
        (DihedralChar::Delta, ConjClassLabel::DihedralReflection(w)) => int(if *w == 0 { -1 } else { 1 }),
        (DihedralChar::SignDelta, ConjClassLabel::DihedralReflection(w)) => {
            int(if *w == 0 { 1 } else { -1 })
        }
        (DihedralChar::Two(m), ConjClassLabel::DihedralRotation(k)) => {
            CyclotomicElement::two_cos(n, (*k as i64) * (m as i64)).ok()?
        }
        (DihedralChar::Two(_), ConjClassLabel::DihedralReflection(_)) => int(0),
        _ => return None,
    };
    Some(v)
}

pub fn dihedral_class_size(n: u32, class: &ConjClassLabel) -> BigInt {
    BigInt::from(match class {
        ConjClassLabel::DihedralRotation(0) => 1,
        ConjClassLabel::DihedralRotation(k) if 2 * k == n => 1,
        ConjClassLabel::DihedralRotation(_) => 2,
        ConjClassLabel::DihedralReflection(_) if n % 2 == 1 => n,
        ConjClassLabel::DihedralReflection(_) => n / 2,
        _ => panic!("not a dihedral label"),
    })
}

/// Character table of `I2(n)`; `G2` is served by this with `n = 6`.
pub fn char_table_dihedral(t: CoxeterType) -> Result<CharacterTable, TableError> {
    let n = match t {
        CoxeterType::I(n) => n,
        CoxeterType::G2 => 6,
        _ => return Err(TableError::Group(GroupError::InvalidType(t.to_string()))),
    };
    let classes = dihedral_class_labels(n);
    let chars = dihedral_char_labels(n);
    let values = chars
        .iter()
        .map(|chi| {
            let CharLabel::Dihedral(d) = chi else { unreachable!() };
            classes
                .iter()
                .map(|c| dihedral_char_value(n, *d, c).expect("valid"))
                .collect()
        })
        .collect();
    Ok(CharacterTable {
        ctype: t,
        identity_class: 0,
        class_sizes: classes.iter().map(|c| dihedral_class_size(n, c)).collect(),
        class_info: vec![ClassInfo::default(); classes.len()],
        class_labels: classes,
        char_labels: chars,
        values,
    })
}

/// Map every brute-force class to a column of `table`.
///
/// Classical and dihedral classes match by label. Named classes match by
/// fingerprint: class size, `det(1-qw)` and, where the table records them,
/// commuting-reflection counts and a representative word.
pub fn match_classes(
    group: &EnumeratedGroup,
    classes: &[BruteClass],
    table: &CharacterTable,
) -> Result<Vec<usize>, TableError> {
    let mut out = Vec::with_capacity(classes.len());
    for c in classes {
        if let Some(label) = group.class_label(c) {
            let idx = table
                .class_index(&label)
                .ok_or_else(|| TableError::UnmatchedClass(label.to_string()))?;
            out.push(idx);
            continue;
        }
        let rep = group.element(c.representative);
        let mut counts = None;
        let candidates: Vec<usize> = (0..table.num_classes())
            .filter(|&j| {
                let info = &table.class_info[j];
                if table.class_sizes[j] != BigInt::from(c.size()) {
                    return false;
                }
                if info.charpoly.as_ref().is_some_and(|p| *p != rep.charpoly) {
                    return false;
                }
                if let Some(want) = &info.commuting_reflections {
                    let have = counts
                        .get_or_insert_with(|| group.commuting_reflection_counts(c.representative));
                    if want != have {
                        return false;
                    }
                }
                if let Some(w) = &info.word {
                    match group.from_word(w) {
                        Ok(x) if c.members.binary_search(&x).is_ok() => {}
                        _ => return false,
                    }
                }
                true
            })
            .collect();
        let name = crate::groups::format_word(&group.ctype, &rep.word);
        match candidates.as_slice() {
            [j] => out.push(*j),
            [] => return Err(TableError::UnmatchedClass(name)),
            _ => return Err(TableError::AmbiguousFingerprint(name)),
        }
    }
    let mut seen = out.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != out.len() || out.len() != table.num_classes() {
        return Err(TableError::AmbiguousFingerprint("class matching is not a bijection".into()));
    }
    Ok(out)
}

/// Multiplicities `<chi|_{W_J}, phi>` for `chi` in `table` (rows) and `phi` in
/// `sub_table` (columns), where `sub_table` is the table of the parabolic `W_J`
/// realized as its own enumerated group `sub_group` with generator `i` mapped to
/// generator `j_gens[i]` of `group`.
pub fn restriction_multiplicities(
    group: &EnumeratedGroup,
    table: &CharacterTable,
    sub_group: &EnumeratedGroup,
    sub_table: &CharacterTable,
    j_gens: &[u8],
) -> Result<Vec<Vec<BigInt>>, TableError> {
    let classes = group.conjugacy_classes();
    let cols = match_classes(group, &classes, table)?;
    let mut class_of = vec![0usize; group.order()];
    for (c, &col) in classes.iter().zip(&cols) {
        for &m in &c.members {
            class_of[m] = col;
        }
    }
    let sub_classes = sub_group.conjugacy_classes();
    let sub_cols = match_classes(sub_group, &sub_classes, sub_table)?;
    let mut out = vec![vec![BigInt::zero(); sub_table.num_chars()]; table.num_chars()];
    for (i, row) in out.iter_mut().enumerate() {
        for (p, entry) in row.iter_mut().enumerate() {
            let mut acc = CyclotomicElement::from_int(0);
            for (sc, &scol) in sub_classes.iter().zip(&sub_cols) {
                let word: Vec<u8> = sub_group
                    .element(sc.representative)
                    .word
                    .iter()
                    .map(|&s| j_gens[s as usize])
                    .collect();
                let x = group.from_word(&word)?;
                let term = &table.values[i][class_of[x]] * &sub_table.values[p][scol].conjugate();
                acc = &acc + &term.scale(&Rational::from_integer(BigInt::from(sc.size())));
            }
            let v = acc
                .to_rational()
                .ok()
                .map(|r| r / Rational::from_integer(BigInt::from(sub_group.order())))
                .filter(|r| r.is_integer())
                .ok_or_else(|| TableError::RowOrthogonality(table.char_labels[i].to_string(), sub_table.char_labels[p].to_string()))?;
            *entry = v.to_integer();
        }
    }
    Ok(out)
}

/// Character table for classical and dihedral types computed from formulas.
pub fn char_table_classical(t: CoxeterType) -> Result<CharacterTable, TableError> {
    match t {
        CoxeterType::A(n) => char_table_a(n),
        CoxeterType::B(l) => char_table_b(l),
        CoxeterType::D(l) => char_table_d(l),
        CoxeterType::I(_) | CoxeterType::G2 => char_table_dihedral(t),
        _ => Err(TableError::Group(GroupError::InvalidType(format!(
            "{t} has no closed-form table"
        )))),
    }
}

/// `chi(e)` as an integer for a label of a classical type.
pub fn hook_dimension(lambda: &Partition) -> BigInt {
    let n = lambda.weight();
    let fact: BigInt = (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k));
    let hooks: BigInt = lambda
        .hook_lengths()
        .iter()
        .fold(BigInt::one(), |a, &h| a * BigInt::from(h));
    fact / hooks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::enumerate_group;

    #[test]
    fn classical_tables_are_orthogonal() {
        for n in 1..=6 {
            char_table_a(n).unwrap().validate().unwrap();
        }
        for l in 2..=5 {
            char_table_b(l).unwrap().validate().unwrap();
        }
        for l in 4..=5 {
            char_table_d(l).unwrap().validate().unwrap();
        }
        for n in 3..=12 {
            char_table_dihedral(CoxeterType::I(n)).unwrap().validate().unwrap();
        }
    }

    #[test]
    fn d_table_shapes() {
        let t = char_table_d(4).unwrap();
        assert_eq!(t.num_classes(), 13);
        let split = t
            .class_labels
            .iter()
            .filter(|c| matches!(c, ConjClassLabel::Signed { split: Some(_), .. }))
            .count();
        assert_eq!(split, 4);
    }

    #[test]
    fn split_rows_sum_to_restriction() {
        let t = char_table_d(4).unwrap();
        let a = Partition::new(vec![1, 1]);
        let p = t.char_index(&CharLabel::Split(a.clone(), Sign::Plus)).unwrap();
        let m = t.char_index(&CharLabel::Split(a.clone(), Sign::Minus)).unwrap();
        for (c, label) in t.class_labels.iter().enumerate() {
            let ConjClassLabel::Signed { cycle_type, .. } = label else { unreachable!() };
            let full = hyperoctahedral_char_value(&Bipartition::new(a.clone(), a.clone()), cycle_type).unwrap();
            assert_eq!(&t.values[p][c] + &t.values[m][c], int(full));
        }
    }

    #[test]
    fn hook_values_on_coxeter_class() {
        let t = char_table_b(4).unwrap();
        let cox = signed(Bipartition::new(Partition::empty(), Partition::new(vec![4])), None);
        for k in 0..4u32 {
            let mut parts = vec![4 - k];
            parts.extend(std::iter::repeat(1).take(k as usize));
            let chi = CharLabel::Bipartition(Bipartition::new(Partition::new(parts), Partition::empty()));
            assert_eq!(*t.value(&chi, &cox).unwrap(), int(if k % 2 == 0 { 1 } else { -1 }));
        }
    }

    #[test]
    fn brute_force_columns_match_lin_and_reflection_characters() {
        for s in ["A3", "B3", "D4", "I2(5)", "I2(6)", "G2"] {
            let ty: CoxeterType = s.parse().unwrap();
            let g = enumerate_group(&ty).unwrap();
            let table = char_table_classical(ty).unwrap();
            let classes = g.conjugacy_classes();
            let cols = match_classes(&g, &classes, &table).unwrap();
            // some row is the sign character and some row is the reflection character
            let det_row: Vec<CyclotomicElement> = classes
                .iter()
                .map(|c| int(g.element(c.representative).det().value()))
                .collect();
            let trace_row: Vec<CyclotomicElement> = classes
                .iter()
                .map(|c| g.element(c.representative).trace.clone())
                .collect();
            for (c, col) in classes.iter().zip(&cols) {
                assert_eq!(BigInt::from(c.size()), table.class_sizes[*col], "{s}");
            }
            for target in [det_row, trace_row] {
                assert!(
                    (0..table.num_chars()).any(|i| cols
                        .iter()
                        .zip(&target)
                        .all(|(&col, v)| table.values[i][col] == *v)),
                    "{s}"
                );
            }
        }
    }

    fn inner_products(table: &CharacterTable, f: &[CyclotomicElement]) -> Vec<Rational> {
        let order = Rational::from_integer(table.order());
        (0..table.num_chars())
            .map(|i| {
                let mut acc = int(0);
                for c in 0..table.num_classes() {
                    let t = (&table.values[i][c].conjugate() * &f[c])
                        .scale(&Rational::from_integer(table.class_sizes[c].clone()));
                    acc = &acc + &t;
                }
                acc.to_rational().expect("rational inner product") / &order
            })
            .collect()
    }

    #[test]
    fn induced_and_power_characters_decompose() {
        for s in ["A4", "B3", "B4", "D4", "D5", "G2", "I2(8)"] {
            let ty: CoxeterType = s.parse().unwrap();
            let g = enumerate_group(&ty).unwrap();
            let table = char_table_classical(ty).unwrap();
            let classes = g.conjugacy_classes();
            let cols = match_classes(&g, &classes, &table).unwrap();
            let mut class_of = vec![0; g.order()];
            for (c, &col) in classes.iter().zip(&cols) {
                for &m in &c.members {
                    class_of[m] = col;
                }
            }
            let k = table.num_classes();
            let order = Rational::from_integer(table.order());
            for mask in 0..(1u32 << g.rank()) {
                let sub = (0..g.order()).filter(|&w| g.in_parabolic(w, mask)).count();
                let mut f = vec![int(0); k];
                for (c, &col) in classes.iter().zip(&cols) {
                    let meet = c.members.iter().filter(|&&w| g.in_parabolic(w, mask)).count();
                    f[col] = CyclotomicElement::from_rational(&order * rat(meet as i64) / rat((c.size() * sub) as i64));
                }
                for m in inner_products(&table, &f) {
                    assert!(m.is_integer() && m >= Rational::zero(), "{s} mask {mask}");
                }
            }
            for p in 2..=3 {
                for i in 0..table.num_chars() {
                    let mut f = vec![int(0); k];
                    for (c, &col) in classes.iter().zip(&cols) {
                        let w = c.representative;
                        let wp = (1..p).fold(w, |x, _| g.mul(x, w));
                        f[col] = table.values[i][class_of[wp]].clone();
                    }
                    for m in inner_products(&table, &f) {
                        assert!(m.is_integer(), "{s} power {p} row {i}");
                    }
                }
            }
        }
    }
}
