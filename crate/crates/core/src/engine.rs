//! `g_w(q) = sum_chi chi(w) d_chi(q)`, `h_w = g_w / (1-q)^(l-m)`, the theorem
//! verifiers and the conjecture check.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chartab::{class_sign, char_table_classical, match_classes, CharacterTable, TableError};
use crate::cyclotomic::{CycloError, CycloPolynomial, CyclotomicElement};
use crate::datastore::{DataError, DataStore};
use crate::exactpoly::{PolyError, Polynomial, Rational, Sign};
use crate::gendeg::{generic_degrees_classical, GenDegError, GenericDegreeTable};
use crate::groups::{
    charpoly_multiplicity_of_one, coxeter_class_label, enumerate_group, is_type_a_parabolic,
    longest_class_label, BruteClass, ConjClassLabel, CoxeterType, ElementId, EnumeratedGroup,
    GroupError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("unsupported type {0}")]
    UnsupportedType(String),
    #[error("unknown class {class} for {ctype}")]
    UnknownClass { ctype: String, class: String },
    #[error("g for class {class} of {ctype} has a non-integer coefficient")]
    IntegralityViolated { ctype: String, class: String },
    #[error("recovered generic degree of {character} in {ctype} differs from the table")]
    RoundTripMismatch { ctype: String, character: String },
    #[error("class {0} does not meet the parabolic subgroup")]
    ClassDoesNotMeetParabolic(String),
    #[error("cuspidal label rule disagrees with brute force on {0}")]
    CuspidalRuleMismatch(String),
    #[error("parabolic component is not an irreducible type in scope")]
    UnknownComponent,
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    GenDeg(#[from] GenDegError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

pub type Result<T, E = EngineError> = std::result::Result<T, E>;

/// A character table together with its generic degrees in row order.
#[derive(Debug, Clone)]
pub struct Tables {
    pub table: CharacterTable,
    pub degrees: Vec<CycloPolynomial>,
}

impl Tables {
    pub fn ctype(&self) -> CoxeterType {
        self.table.ctype
    }

    /// `sum_chi chi(C) d_chi(q)` for column `c`, collapsed to rational coefficients.
    pub fn g_column(&self, c: usize) -> Result<Polynomial> {
        let mut acc = CycloPolynomial::zero();
        for (row, d) in self.table.values.iter().zip(&self.degrees) {
            if !row[c].is_zero() {
                acc = &acc + &d.scale(&row[c]);
            }
        }
        Ok(acc.to_rational()?)
    }
}

/// `g_w`, `m`, `h_w` and `epsilon` for one class.
#[derive(Debug, Clone, PartialEq)]
pub struct GPolyResult {
    pub ctype: CoxeterType,
    pub class_label: ConjClassLabel,
    pub g: Polynomial,
    /// Multiplicity of the eigenvalue 1.
    pub m: usize,
    /// `g / (1-q)^(l-m)` when the division is exact.
    pub h: Option<Polynomial>,
    pub epsilon: Sign,
    /// Number of positive roots.
    pub n: usize,
}

/// Brute-force classes of an enumerable type matched to the table columns.
#[derive(Debug)]
pub struct ClassMap {
    pub group: Arc<EnumeratedGroup>,
    pub classes: Vec<BruteClass>,
    /// Table column of each brute-force class.
    pub column: Vec<usize>,
    /// Table column of each element.
    pub class_of: Vec<usize>,
}

impl ClassMap {
    /// Brute-force class sitting in table column `c`.
    pub fn brute_class(&self, c: usize) -> &BruteClass {
        let i = self.column.iter().position(|&x| x == c).expect("bijection");
        &self.classes[i]
    }
}

/// Per-class verdict of the conjecture check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureRow {
    pub class: String,
    pub epsilon: i64,
    pub m: usize,
    pub g_coeffs: Vec<i64>,
    /// `None` when `(1-q)^(l-m)` does not divide `g`.
    pub h_coeffs: Option<Vec<i64>>,
    pub divisible: bool,
    pub palindromic: bool,
    pub integral: bool,
    pub nonnegative: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    #[serde(rename = "type")]
    pub ctype: String,
    pub cuspidal_only: bool,
    pub rows: Vec<ConjectureRow>,
    pub passed: bool,
}

impl ConjectureReport {
    pub fn counterexamples(&self) -> impl Iterator<Item = &ConjectureRow> {
        self.rows.iter().filter(|r| !r.passed)
    }
}

/// The outcome of a verifier sweep: how many cases ran, and the failures.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Sweep {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl Sweep {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn merge(&mut self, other: Sweep) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

/// Types with tables: `A1..A8`, `B2..B6`, `D4..D6`, `F4`, `G2`, `H3` and `I2(3..30)`.
pub fn supported_types() -> Vec<CoxeterType> {
    let mut out: Vec<CoxeterType> = (1..=8).map(CoxeterType::A).collect();
    out.extend((2..=6).map(CoxeterType::B));
    out.extend((4..=6).map(CoxeterType::D));
    out.extend([CoxeterType::F4, CoxeterType::G2, CoxeterType::H(3)]);
    out.extend((3..=30).map(CoxeterType::I));
    out
}

fn poly_i64(p: &Polynomial) -> Vec<i64> {
    p.i64_coeffs().expect("integral coefficients checked")
}

/// Shared state: the data store plus memoized tables and enumerated groups.
#[derive(Debug, Default)]
pub struct Engine {
    store: DataStore,
    tables: Mutex<HashMap<CoxeterType, Arc<Tables>>>,
    maps: Mutex<HashMap<CoxeterType, Arc<ClassMap>>>,
    cusp_rule_checked: OnceLock<std::result::Result<(), String>>,
}

impl Engine {
    pub fn new(store: DataStore) -> Self {
        Engine {
            store,
            ..Default::default()
        }
    }

    pub fn store(&self) -> &DataStore {
        &self.store
    }

    /// Character table and aligned generic degrees of an irreducible type.
    pub fn tables(&self, t: CoxeterType) -> Result<Arc<Tables>> {
        if let Some(x) = self.tables.lock().expect("lock").get(&t) {
            return Ok(x.clone());
        }
        let built = match t {
            CoxeterType::A(_) | CoxeterType::B(_) | CoxeterType::D(_) | CoxeterType::I(_) | CoxeterType::G2 => {
                let table = char_table_classical(t).map_err(|e| match e {
                    TableError::RankOutOfRange { .. } => EngineError::UnsupportedType(t.to_string()),
                    e => e.into(),
                })?;
                let degrees = generic_degrees_classical(t)?.aligned(&table)?;
                Tables { table, degrees }
            }
            _ => {
                let data = match self.store.exceptional(t) {
                    Err(DataError::DataMissing(_)) if !matches!(t, CoxeterType::F4 | CoxeterType::H(3)) => {
                        return Err(EngineError::UnsupportedType(t.to_string()))
                    }
                    x => x?,
                };
                let degrees = data.degrees.aligned(&data.table)?;
                Tables {
                    table: data.table.clone(),
                    degrees,
                }
            }
        };
        let built = Arc::new(built);
        Ok(self
            .tables
            .lock()
            .expect("lock")
            .entry(t)
            .or_insert(built)
            .clone())
    }

    /// Enumerated group of `t` with classes matched to the table.
    pub fn class_map(&self, t: CoxeterType) -> Result<Arc<ClassMap>> {
        if let Some(x) = self.maps.lock().expect("lock").get(&t) {
            return Ok(x.clone());
        }
        let tables = self.tables(t)?;
        let group = Arc::new(enumerate_group(&t)?);
        let classes = group.conjugacy_classes();
        let column = match_classes(&group, &classes, &tables.table)?;
        let mut class_of = vec![0; group.order()];
        for (cl, &col) in classes.iter().zip(&column) {
            for &m in &cl.members {
                class_of[m] = col;
            }
        }
        let map = Arc::new(ClassMap {
            group,
            classes,
            column,
            class_of,
        });
        Ok(self.maps.lock().expect("lock").entry(t).or_insert(map).clone())
    }

    /// Column of a class label.
    pub fn class_index(&self, t: CoxeterType, label: &ConjClassLabel) -> Result<usize> {
        let tables = self.tables(t)?;
        let found = tables.table.class_index(label).or_else(|| match label {
            // exceptional classes may also be addressed by their Carter name
            ConjClassLabel::Named(name) => tables
                .table
                .class_info
                .iter()
                .position(|i| i.carter_label.as_deref() == Some(name)),
            _ => None,
        });
        found.ok_or_else(|| EngineError::UnknownClass {
            ctype: t.to_string(),
            class: label.to_string(),
        })
    }

    /// Column of the class containing the element spelled by `word`.
    pub fn class_of_word(&self, t: CoxeterType, word: &[u8]) -> Result<usize> {
        let map = self.class_map(t)?;
        let w = map.group.from_word(word)?;
        Ok(map.class_of[w])
    }

    /// Resolve command-line style text: a label, or failing that a word.
    pub fn resolve_class(&self, t: CoxeterType, text: &str) -> Result<usize> {
        // exact names first: the label grammar strips a leading "C_"
        if let Ok(c) = self.class_index(t, &ConjClassLabel::Named(text.trim().to_string())) {
            return Ok(c);
        }
        let label = ConjClassLabel::parse(&t, text)?;
        match self.class_index(t, &label) {
            Ok(c) => Ok(c),
            Err(e) => match crate::groups::parse_word(&t, text) {
                Ok(word) if t.is_enumerable() => self.class_of_word(t, &word),
                _ => Err(e),
            },
        }
    }

    /// Eigenvalue-1 multiplicity on column `c`, from the label or the stored charpoly.
    pub fn eigenvalue_one_multiplicity(&self, t: CoxeterType, c: usize) -> Result<usize> {
        let tables = self.tables(t)?;
        let label = &tables.table.class_labels[c];
        Ok(match label {
            ConjClassLabel::Partition(l) => l.len() - 1,
            ConjClassLabel::Signed { cycle_type, .. } => cycle_type.first.len(),
            ConjClassLabel::DihedralRotation(0) => 2,
            ConjClassLabel::DihedralRotation(_) => 0,
            ConjClassLabel::DihedralReflection(_) => 1,
            ConjClassLabel::Named(_) => {
                let p = tables.table.class_info[c].charpoly.as_ref().ok_or_else(|| {
                    EngineError::UnknownClass {
                        ctype: t.to_string(),
                        class: format!("{label} (no characteristic polynomial)"),
                    }
                })?;
                charpoly_multiplicity_of_one(p)
            }
        })
    }

    pub fn g_poly(&self, t: CoxeterType, label: &ConjClassLabel) -> Result<GPolyResult> {
        let c = self.class_index(t, label)?;
        self.g_poly_at(t, c)
    }

    pub fn g_poly_at(&self, t: CoxeterType, c: usize) -> Result<GPolyResult> {
        let tables = self.tables(t)?;
        let label = tables.table.class_labels[c].clone();
        let g = tables.g_column(c)?;
        if !g.is_integral() {
            return Err(EngineError::IntegralityViolated {
                ctype: t.to_string(),
                class: label.to_string(),
            });
        }
        let m = self.eigenvalue_one_multiplicity(t, c)?;
        let h = g
            .div_exact(&Polynomial::one_minus_q_pow(1).pow((t.rank() - m) as u32))
            .ok();
        let epsilon = if class_sign(&tables.table, c) > 0 {
            Sign::Plus
        } else {
            Sign::Minus
        };
        Ok(GPolyResult {
            ctype: t,
            class_label: label,
            g,
            m,
            h,
            epsilon,
            n: t.num_positive_roots(),
        })
    }

    /// Results for every class, in table order (computed in parallel).
    pub fn all_classes(&self, t: CoxeterType) -> Result<Vec<GPolyResult>> {
        let k = self.tables(t)?.table.num_classes();
        (0..k).into_par_iter().map(|c| self.g_poly_at(t, c)).collect()
    }

    /// Classes of reflections: those fixing a hyperplane pointwise.
    pub fn reflection_classes(&self, t: CoxeterType) -> Result<Vec<usize>> {
        let k = self.tables(t)?.table.num_classes();
        let mut out = Vec::new();
        for c in 0..k {
            if self.eigenvalue_one_multiplicity(t, c)? + 1 == t.rank() {
                out.push(c);
            }
        }
        Ok(out)
    }

    pub fn coxeter_class(&self, t: CoxeterType) -> Result<usize> {
        match t {
            CoxeterType::H(n) => {
                let word: Vec<u8> = (0..n as u8).collect();
                self.class_index(t, &coxeter_class_label(&t))
                    .or_else(|_| self.class_of_word(t, &word))
            }
            _ => self.class_index(t, &coxeter_class_label(&t)),
        }
    }

    pub fn longest_class(&self, t: CoxeterType) -> Result<usize> {
        match longest_class_label(&t) {
            Some(label) => self.class_index(t, &label),
            None => {
                let map = self.class_map(t)?;
                let w0 = (0..map.group.order())
                    .max_by_key(|&w| map.group.element(w).length())
                    .expect("nonempty group");
                Ok(map.class_of[w0])
            }
        }
    }

    /// Whether each class is cuspidal: brute force where the group is enumerable,
    /// otherwise the signed-cycle-type rule (checked against brute force at rank 4).
    pub fn cuspidal_flags(&self, t: CoxeterType) -> Result<Vec<bool>> {
        if t.is_enumerable() {
            let map = self.class_map(t)?;
            let mut flags = vec![false; map.classes.len()];
            for (cl, &col) in map.classes.iter().zip(&map.column) {
                flags[col] = map.group.is_cuspidal_class(cl);
            }
            return Ok(flags);
        }
        self.cusp_rule_checked
            .get_or_init(|| self.check_cuspidal_rule())
            .clone()
            .map_err(EngineError::CuspidalRuleMismatch)?;
        let tables = self.tables(t)?;
        Ok(tables.table.class_labels.iter().map(cuspidal_by_label).collect())
    }

    fn check_cuspidal_rule(&self) -> std::result::Result<(), String> {
        for t in [CoxeterType::A(4), CoxeterType::B(4), CoxeterType::D(4)] {
            let brute = self.cuspidal_flags(t).map_err(|e| e.to_string())?;
            let tables = self.tables(t).map_err(|e| e.to_string())?;
            for (c, label) in tables.table.class_labels.iter().enumerate() {
                if cuspidal_by_label(label) != brute[c] {
                    return Err(format!("{t} class {label}"));
                }
            }
        }
        Ok(())
    }

    /// Columns with the Coxeter class first, the longest-element class last and
    /// the rest in table order.
    pub fn display_order(&self, t: CoxeterType, cuspidal_only: bool) -> Result<Vec<usize>> {
        let k = self.tables(t)?.table.num_classes();
        let cox = self.coxeter_class(t)?;
        let w0 = self.longest_class(t)?;
        let keep = if cuspidal_only {
            self.cuspidal_flags(t)?
        } else {
            vec![true; k]
        };
        let mut order = vec![cox];
        order.extend((0..k).filter(|&c| c != cox && c != w0));
        if w0 != cox {
            order.push(w0);
        }
        Ok(order.into_iter().filter(|&c| keep[c]).collect())
    }

    /// `d_chi = (1/|W|) sum_C |C| chi(C) g_C`, which must agree with the table.
    pub fn recover_generic_degrees(&self, t: CoxeterType) -> Result<GenericDegreeTable> {
        let tables = self.tables(t)?;
        let results = self.all_classes(t)?;
        let order = Rational::from_integer(tables.table.order());
        let mut entries = Vec::with_capacity(tables.table.num_chars());
        for (i, row) in tables.table.values.iter().enumerate() {
            let mut acc = CycloPolynomial::zero();
            for (c, res) in results.iter().enumerate() {
                // characters are real, so chi(w^-1) = chi(w)
                let w = row[c].scale(&(Rational::from_integer(tables.table.class_sizes[c].clone()) / &order));
                acc = &acc + &CycloPolynomial::from(&res.g).scale(&w);
            }
            if acc != tables.degrees[i] {
                return Err(EngineError::RoundTripMismatch {
                    ctype: t.to_string(),
                    character: tables.table.char_labels[i].to_string(),
                });
            }
            entries.push(acc);
        }
        Ok(GenericDegreeTable {
            ctype: t,
            labels: tables.table.char_labels.clone(),
            entries,
        })
    }

    pub fn check_conjecture(&self, t: CoxeterType, cuspidal_only: bool) -> Result<ConjectureReport> {
        let order = self.display_order(t, cuspidal_only)?;
        let rows: Vec<ConjectureRow> = order
            .par_iter()
            .map(|&c| self.g_poly_at(t, c).map(|r| conjecture_row(&r, t.rank())))
            .collect::<Result<_>>()?;
        let passed = rows.iter().all(|r| r.passed);
        Ok(ConjectureReport {
            ctype: t.to_string(),
            cuspidal_only,
            rows,
            passed,
        })
    }

    /// `g = (1-q)^l P / det(1-qw)` for the class of `w`, which must meet a
    /// parabolic subgroup whose components have type `A`.
    pub fn verify_type_a_theorem(&self, t: CoxeterType, w: ElementId) -> Result<bool> {
        let map = self.class_map(t)?;
        let e = map.group.element(w);
        if !is_type_a_parabolic(&t, e.support()) {
            return Err(EngineError::ClassDoesNotMeetParabolic(crate::groups::format_word(&t, &e.word)));
        }
        let g = self.g_poly_at(t, map.class_of[w])?.g;
        let det = e.charpoly.to_rational()?;
        let num = &Polynomial::one_minus_q_pow(1).pow(t.rank() as u32) * &t.poincare_polynomial();
        Ok(num.div_exact(&det)? == g)
    }

    /// Theorem sweep over every class of an enumerable type that meets a type-`A`
    /// parabolic subgroup.
    pub fn sweep_type_a(&self, t: CoxeterType) -> Result<Sweep> {
        let map = self.class_map(t)?;
        let mut sweep = Sweep::default();
        for cl in &map.classes {
            let witness = cl
                .members
                .iter()
                .copied()
                .find(|&w| is_type_a_parabolic(&t, map.group.element(w).support()));
            if let Some(w) = witness {
                let ok = self.verify_type_a_theorem(t, w)?;
                let label = self.tables(t)?.table.class_labels[map.class_of[w]].to_string();
                sweep.record(ok, || format!("{t} class {label}"));
            }
        }
        Ok(sweep)
    }

    /// `g_{(rs)^k} = (1-q^k)(1-q^(n-k))` in `I2(n)`.
    pub fn verify_dihedral_theorem(&self, n: u32, k: u32) -> Result<bool> {
        let t = CoxeterType::I(n);
        let g = self.g_poly(t, &ConjClassLabel::DihedralRotation(k))?.g;
        let want = &Polynomial::one_minus_q_pow(k as usize) * &Polynomial::one_minus_q_pow((n - k) as usize);
        Ok(g == want)
    }

    /// `g_c = prod_j (1 - q^(d_j - 1))` for Coxeter elements.
    pub fn verify_coxeter_theorem(&self, t: CoxeterType) -> Result<bool> {
        let g = self.g_poly_at(t, self.coxeter_class(t)?)?.g;
        let want: Polynomial = t
            .degrees()
            .iter()
            .map(|&d| Polynomial::one_minus_q_pow(d as usize - 1))
            .product();
        Ok(g == want)
    }

    /// Palindromy `q^N g(1/q) = eps g`, degree `N`, `g(0) = 1`, leading coefficient
    /// `eps` and integrality, for every class.
    pub fn verify_palindromy(&self, t: CoxeterType) -> Result<Sweep> {
        let mut sweep = Sweep::default();
        for r in self.all_classes(t)? {
            let lead = r.g.leading().cloned().unwrap_or_else(Rational::zero);
            let ok = r.g.is_palindromic(r.n, r.epsilon)
                && r.g.degree() == r.n as isize
                && r.g.coeff(0) == Rational::from_integer(1.into())
                && lead == Rational::from_integer(r.epsilon.value().into())
                && r.g.is_integral();
            sweep.record(ok, || format!("{t} class {}", r.class_label));
        }
        Ok(sweep)
    }

    /// `g_{W,C} = (P_W / P_{W_J}) g_{W_J,x}` for some `x` in `C` lying in `W_J`.
    /// The cofactor must have nonnegative coefficients.
    pub fn verify_parabolic_recursion(&self, t: CoxeterType, j_mask: u32, c: usize) -> Result<bool> {
        let map = self.class_map(t)?;
        let x = map
            .brute_class(c)
            .members
            .iter()
            .copied()
            .find(|&w| map.group.in_parabolic(w, j_mask))
            .ok_or_else(|| {
                EngineError::ClassDoesNotMeetParabolic(self.tables(t).map(|x| x.table.class_labels[c].to_string()).unwrap_or_default())
            })?;
        let comps = parabolic_components(&t, j_mask)?;
        let word = &map.group.element(x).word;
        let mut factors = Vec::new();
        let mut p_j = Polynomial::one();
        for comp in &comps {
            let local: Vec<u8> = word
                .iter()
                .filter_map(|s| comp.gens.iter().position(|&g| g == *s as usize))
                .map(|i| comp.to_standard[i] as u8)
                .collect();
            let col = self.class_of_word(comp.ctype, &local)?;
            factors.push((self.tables(comp.ctype)?, col));
            p_j = &p_j * &comp.ctype.poincare_polynomial();
        }
        let g_j = product_g(&factors)?;
        let ratio = t.poincare_polynomial().div_exact(&p_j)?;
        let g = self.g_poly_at(t, c)?.g;
        Ok(ratio.has_nonnegative_coeffs() && &ratio * &g_j == g)
    }

    /// Recursion checks over all proper nonempty parabolics and all classes meeting them.
    pub fn sweep_parabolic_recursion(&self, t: CoxeterType) -> Result<Sweep> {
        let map = self.class_map(t)?;
        let tables = self.tables(t)?;
        let full = (1u32 << t.rank()) - 1;
        let mut sweep = Sweep::default();
        for j_mask in 1..full {
            for c in 0..tables.table.num_classes() {
                let meets = map
                    .brute_class(c)
                    .members
                    .iter()
                    .any(|&w| map.group.in_parabolic(w, j_mask));
                if meets {
                    let ok = self.verify_parabolic_recursion(t, j_mask, c)?;
                    sweep.record(ok, || {
                        format!("{t} J={j_mask:b} class {}", tables.table.class_labels[c])
                    });
                }
            }
        }
        Ok(sweep)
    }

    /// `g` on the reducible type `t1 x t2` (characters as outer tensor products,
    /// generic degrees multiplied) against `g_{t1,c1} g_{t2,c2}`.
    pub fn verify_product_formula(
        &self,
        t1: CoxeterType,
        c1: usize,
        t2: CoxeterType,
        c2: usize,
    ) -> Result<bool> {
        let whole = product_g(&[(self.tables(t1)?, c1), (self.tables(t2)?, c2)])?;
        let parts = &self.g_poly_at(t1, c1)?.g * &self.g_poly_at(t2, c2)?.g;
        Ok(whole == parts)
    }

    pub fn sweep_product_formula(&self, pairs: &[(CoxeterType, CoxeterType)]) -> Result<Sweep> {
        let mut sweep = Sweep::default();
        for &(t1, t2) in pairs {
            let k1 = self.tables(t1)?.table.num_classes();
            let k2 = self.tables(t2)?.table.num_classes();
            let mut inner = Sweep::default();
            for c1 in 0..k1 {
                for c2 in 0..k2 {
                    let ok = self.verify_product_formula(t1, c1, t2, c2)?;
                    inner.record(ok, || format!("{t1} x {t2} classes {c1},{c2}"));
                }
            }
            sweep.merge(inner);
        }
        Ok(sweep)
    }
}

/// Cuspidality read from a label: the Coxeter class in type `A`, `mu` empty in
/// type `B`, `mu` empty with an even number of negative cycles in type `D`.
pub fn cuspidal_by_label(label: &ConjClassLabel) -> bool {
    match label {
        ConjClassLabel::Partition(l) => l.len() == 1,
        ConjClassLabel::Signed { cycle_type, split } => {
            // in D the number of negative cycles is always even
            split.is_none() && cycle_type.first.is_empty()
        }
        ConjClassLabel::DihedralRotation(k) => *k != 0,
        _ => false,
    }
}

/// The individual properties behind a conjecture verdict, by name.
pub fn conjecture_checks(r: &ConjectureRow) -> [(&'static str, bool); 4] {
    [
        ("divisible", r.divisible),
        ("palindromic", r.palindromic),
        ("integral", r.integral),
        ("nonnegative", r.nonnegative),
    ]
}

fn conjecture_row(r: &GPolyResult, rank: usize) -> ConjectureRow {
    let deg_h = r.n - (rank - r.m);
    let (divisible, palindromic, integral, nonnegative) = match &r.h {
        Some(h) => (
            true,
            h.is_palindromic(deg_h, Sign::Plus) && h.degree() == deg_h as isize,
            h.is_integral(),
            h.has_nonnegative_coeffs(),
        ),
        None => (false, false, false, false),
    };
    let passed = divisible && palindromic && integral && nonnegative;
    ConjectureRow {
        class: r.class_label.to_string(),
        epsilon: r.epsilon.value(),
        m: r.m,
        g_coeffs: poly_i64(&r.g),
        h_coeffs: r.h.as_ref().filter(|h| h.is_integral()).map(poly_i64),
        divisible,
        palindromic,
        integral,
        nonnegative,
        passed,
    }
}

/// `sum over tuples (chi_1..chi_k) of prod chi_i(c_i) prod d_chi_i` — the value
/// of `g` on a class of the product group, computed from its tensor-product table.
pub fn product_g(factors: &[(Arc<Tables>, usize)]) -> Result<Polynomial> {
    let sizes: Vec<usize> = factors.iter().map(|(t, _)| t.table.num_chars()).collect();
    let total: usize = sizes.iter().product();
    let mut acc = CycloPolynomial::zero();
    for idx in 0..total {
        let mut rest = idx;
        let mut value = CyclotomicElement::from_int(1);
        let mut degree = CycloPolynomial::one();
        for ((tables, c), &n) in factors.iter().zip(&sizes) {
            let chi = rest % n;
            rest /= n;
            value = &value * &tables.table.values[chi][*c];
            degree = &degree * &tables.degrees[chi];
        }
        if !value.is_zero() {
            acc = &acc + &degree.scale(&value);
        }
    }
    Ok(acc.to_rational()?)
}

/// An irreducible component of a standard parabolic subgroup.
#[derive(Debug, Clone)]
pub struct Component {
    pub ctype: CoxeterType,
    /// Generators of the ambient group, in increasing order.
    pub gens: Vec<usize>,
    /// `to_standard[i]` is the generator of `ctype` that `gens[i]` maps to.
    pub to_standard: Vec<usize>,
}

/// Split `J` into connected components of the Coxeter graph and identify each
/// with a standard type through a Coxeter-matrix-preserving bijection.
pub fn parabolic_components(t: &CoxeterType, j_mask: u32) -> Result<Vec<Component>> {
    let n = t.rank();
    let in_j: Vec<usize> = (0..n).filter(|&i| j_mask >> i & 1 == 1).collect();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for &start in &in_j {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < comp.len() {
            let a = comp[i];
            for &b in &in_j {
                if !seen[b] && t.coxeter_matrix_entry(a, b) > 2 {
                    seen[b] = true;
                    comp.push(b);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(identify_component(t, comp)?);
    }
    Ok(out)
}

fn identify_component(t: &CoxeterType, gens: Vec<usize>) -> Result<Component> {
    let k = gens.len();
    let max_m = gens
        .iter()
        .flat_map(|&a| gens.iter().map(move |&b| (a, b)))
        .map(|(a, b)| t.coxeter_matrix_entry(a, b))
        .max()
        .unwrap_or(1);
    let candidates: Vec<CoxeterType> = match k {
        1 => vec![CoxeterType::A(1)],
        2 => vec![CoxeterType::A(2), CoxeterType::B(2), CoxeterType::I(max_m)],
        _ => {
            let k = k as u32;
            let mut c = vec![CoxeterType::A(k), CoxeterType::B(k)];
            if k >= 4 {
                c.push(CoxeterType::D(k));
            }
            if k == 4 {
                c.push(CoxeterType::F4);
            }
            if k == 3 || k == 4 {
                c.push(CoxeterType::H(k));
            }
            c
        }
    };
    for cand in candidates {
        if cand == CoxeterType::I(2) || matches!(cand, CoxeterType::I(m) if m < 3) {
            continue;
        }
        if let Some(perm) = find_isomorphism(t, &gens, &cand) {
            return Ok(Component {
                ctype: cand,
                gens,
                to_standard: perm,
            });
        }
    }
    Err(EngineError::UnknownComponent)
}

fn find_isomorphism(t: &CoxeterType, gens: &[usize], cand: &CoxeterType) -> Option<Vec<usize>> {
    let k = gens.len();
    let mut perm: Vec<usize> = (0..k).collect();
    // Heap's algorithm over at most 4! permutations
    let check = |p: &[usize]| {
        (0..k).all(|a| {
            (0..k).all(|b| t.coxeter_matrix_entry(gens[a], gens[b]) == cand.coxeter_matrix_entry(p[a], p[b]))
        })
    };
    let mut c = vec![0usize; k];
    if check(&perm) {
        return Some(perm);
    }
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            if check(&perm) {
                return Some(perm);
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    None
}

/// One rendered class: the shape of `compute` and `table` output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRow {
    pub class: String,
    pub epsilon: i64,
    pub m: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub g_coeffs: Vec<i64>,
    pub h_coeffs: Option<Vec<i64>>,
}

impl From<&GPolyResult> for ClassRow {
    fn from(r: &GPolyResult) -> Self {
        ClassRow {
            class: r.class_label.to_string(),
            epsilon: r.epsilon.value(),
            m: r.m,
            n: r.n,
            g_coeffs: poly_i64(&r.g),
            h_coeffs: r.h.as_ref().and_then(|h| h.i64_coeffs()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    #[serde(rename = "type")]
    pub ctype: String,
    pub cuspidal_only: bool,
    pub rows: Vec<ClassRow>,
}

/// Verifiers selectable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verifier {
    #[serde(rename = "typeA")]
    TypeA,
    Dihedral,
    Coxeter,
    Palindromy,
    Recursion,
    Product,
    Roundtrip,
}

impl Verifier {
    pub const ALL: [Verifier; 7] = [
        Verifier::TypeA,
        Verifier::Dihedral,
        Verifier::Coxeter,
        Verifier::Palindromy,
        Verifier::Recursion,
        Verifier::Product,
        Verifier::Roundtrip,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Verifier::TypeA => "typeA",
            Verifier::Dihedral => "dihedral",
            Verifier::Coxeter => "coxeter",
            Verifier::Palindromy => "palindromy",
            Verifier::Recursion => "recursion",
            Verifier::Product => "product",
            Verifier::Roundtrip => "roundtrip",
        }
    }
}

/// What a verification run covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scope {
    pub types: Vec<CoxeterType>,
    /// `n` values for the dihedral rotation sweep.
    pub dihedral: Vec<u32>,
    pub products: Vec<(CoxeterType, CoxeterType)>,
}

impl Scope {
    /// Every supported type, `I2(3..=max_n)` and a fixed list of products.
    pub fn all_supported(max_n: u32) -> Scope {
        Scope {
            types: supported_types(),
            dihedral: (3..=max_n).collect(),
            products: vec![
                (CoxeterType::A(1), CoxeterType::A(1)),
                (CoxeterType::A(2), CoxeterType::A(1)),
                (CoxeterType::B(2), CoxeterType::A(2)),
                (CoxeterType::A(2), CoxeterType::I(5)),
                (CoxeterType::B(3), CoxeterType::G2),
                (CoxeterType::H(3), CoxeterType::A(1)),
                (CoxeterType::D(4), CoxeterType::A(2)),
                (CoxeterType::F4, CoxeterType::A(1)),
            ],
        }
    }

    /// A single type; its product check pairs it with `A1`.
    pub fn single(t: CoxeterType) -> Scope {
        Scope {
            types: vec![t],
            dihedral: match t {
                CoxeterType::I(n) => vec![n],
                _ => vec![],
            },
            products: vec![(t, CoxeterType::A(1))],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyCheck {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<VerifyCheck>,
    pub passed: bool,
}

impl Engine {
    pub fn table(&self, t: CoxeterType, cuspidal_only: bool) -> Result<TableReport> {
        let order = self.display_order(t, cuspidal_only)?;
        let rows = order
            .par_iter()
            .map(|&c| self.g_poly_at(t, c).map(|r| ClassRow::from(&r)))
            .collect::<Result<_>>()?;
        Ok(TableReport {
            ctype: t.to_string(),
            cuspidal_only,
            rows,
        })
    }

    pub fn run_verifier(&self, v: Verifier, scope: &Scope) -> Result<Sweep> {
        let mut sweep = Sweep::default();
        match v {
            Verifier::TypeA => {
                for &t in scope.types.iter().filter(|t| t.is_enumerable()) {
                    sweep.merge(self.sweep_type_a(t)?);
                }
            }
            Verifier::Dihedral => {
                for &n in &scope.dihedral {
                    for k in 1..=n / 2 {
                        let ok = self.verify_dihedral_theorem(n, k)?;
                        sweep.record(ok, || format!("I2({n}) k={k}"));
                    }
                }
            }
            Verifier::Coxeter => {
                for &t in &scope.types {
                    let ok = self.verify_coxeter_theorem(t)?;
                    sweep.record(ok, || format!("{t} Coxeter class"));
                }
            }
            Verifier::Palindromy => {
                for &t in &scope.types {
                    sweep.merge(self.verify_palindromy(t)?);
                }
            }
            Verifier::Recursion => {
                for &t in scope.types.iter().filter(|t| t.is_enumerable() && t.rank() >= 2) {
                    sweep.merge(self.sweep_parabolic_recursion(t)?);
                }
            }
            Verifier::Product => sweep.merge(self.sweep_product_formula(&scope.products)?),
            Verifier::Roundtrip => {
                for &t in &scope.types {
                    match self.recover_generic_degrees(t) {
                        Ok(_) => sweep.record(true, String::new),
                        Err(e @ EngineError::RoundTripMismatch { .. }) => {
                            sweep.record(false, || e.to_string())
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
        }
        Ok(sweep)
    }

    pub fn verify(&self, which: &[Verifier], scope: &Scope) -> Result<VerifyReport> {
        let mut checks = Vec::new();
        for &v in which {
            let s = self.run_verifier(v, scope)?;
            checks.push(VerifyCheck {
                name: v.name().to_string(),
                checked: s.checked,
                passed: s.passed(),
                failures: s.failures,
            });
        }
        let passed = checks.iter().all(|c| c.passed);
        Ok(VerifyReport { checks, passed })
    }
}
