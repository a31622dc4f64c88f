//! Data files for exceptional types and golden tables.
//!
//! Exceptional types ship as JSON with exact integer or integer-pair entries.
//! Every file is validated on load; a failed check names the identity that broke.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chartab::{match_classes, CharLabel, CharacterTable, ClassInfo, TableError};
use crate::cyclotomic::{CycloPolynomial, CyclotomicElement};
use crate::exactpoly::{Poly, Rational};
use crate::gendeg::{GenDegError, GenericDegreeTable};
use crate::groups::{enumerate_group, parse_word, ConjClassLabel, CoxeterType};

pub const SCHEMA_VERSION: u32 = 1;
pub const DATA_DIR_ENV: &str = "GPOLY_DATA_DIR";

const BUNDLED: &[(&str, &str)] = &[
    ("F4.json", include_str!("../data/F4.json")),
    ("H3.json", include_str!("../data/H3.json")),
    ("G2.json", include_str!("../data/G2.json")),
    ("golden_B3.json", include_str!("../data/golden_B3.json")),
    ("golden_D4.json", include_str!("../data/golden_D4.json")),
    ("golden_F4.json", include_str!("../data/golden_F4.json")),
    ("golden_H3.json", include_str!("../data/golden_H3.json")),
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DataError {
    #[error("data file {0} not found")]
    DataMissing(String),
    #[error("{file}: parse error at line {line}, column {column} (field `{field}`): {message}")]
    ParseError {
        file: String,
        line: usize,
        column: usize,
        field: String,
        message: String,
    },
    #[error("{file}: data corrupt, violated invariant: {invariant} ({detail})")]
    DataCorrupt {
        file: String,
        invariant: Invariant,
        detail: String,
    },
}

/// Identities checked when an exceptional data file is loaded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Invariant {
    SchemaVersion,
    TypeAndOrder,
    Dimensions,
    Encoding,
    ClassSizes,
    RealValues,
    RowOrthogonality,
    ColumnOrthogonality,
    CharacterDegrees,
    DistinctFingerprints,
    GroupFingerprints,
    TrivialDegree,
    SignDegree,
    PoincareSum,
    EpsilonTwist,
    QDivides,
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Invariant::SchemaVersion => "schema version",
            Invariant::TypeAndOrder => "type, rank and group order",
            Invariant::Dimensions => "record counts match the value matrix",
            Invariant::Encoding => "exact rational encoding",
            Invariant::ClassSizes => "class sizes sum to |W|",
            Invariant::RealValues => "character values are real",
            Invariant::RowOrthogonality => "row orthogonality",
            Invariant::ColumnOrthogonality => "column orthogonality",
            Invariant::CharacterDegrees => "degrees equal chi(e)",
            Invariant::DistinctFingerprints => "class fingerprints are distinct",
            Invariant::GroupFingerprints => "class fingerprints match the enumerated group",
            Invariant::TrivialDegree => "d_1(q) = 1",
            Invariant::SignDegree => "d_eps(q) = q^N",
            Invariant::PoincareSum => "sum chi(e) d_chi(q) = P(q)",
            Invariant::EpsilonTwist => "epsilon-twist d_(eps chi)(q) = q^N d_chi(1/q)",
            Invariant::QDivides => "q divides d_chi for chi nontrivial",
        })
    }
}

/// An exact number: `[num, den]` for a rational, `[a_num, a_den, b_num, b_den]`
/// for `a + b sqrt 5`.
pub type Entry = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub name: String,
    pub size: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub carter_label: Option<String>,
    /// Coefficients of `det(1 - qw)`, ascending.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub charpoly: Option<Vec<Entry>>,
    /// Representative word in the letters `r, s, t, u`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    /// Reflections commuting with the representative, per reflection class.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub commuting_reflections: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharRecord {
    pub name: String,
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExceptionalFile {
    pub schema_version: u32,
    #[serde(rename = "type")]
    pub type_name: String,
    pub rank: usize,
    pub group_order: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub classes: Vec<ClassRecord>,
    pub characters: Vec<CharRecord>,
    /// Row-major character values, one entry `[a_num, a_den, b_num, b_den]` each.
    pub values: Vec<Entry>,
    /// Per character, ascending coefficients.
    pub generic_degrees: Vec<Vec<Entry>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenRow {
    pub class: String,
    pub h_coeffs: Vec<i64>,
    pub truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenFile {
    pub example: String,
    pub rows: Vec<GoldenRow>,
}

/// Validated tables of an exceptional type.
#[derive(Debug, Clone)]
pub struct ExceptionalData {
    pub table: CharacterTable,
    pub degrees: GenericDegreeTable,
}

fn parse_json<T: serde::de::DeserializeOwned>(file: &str, text: &str) -> Result<T, DataError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        let inner = e.into_inner();
        DataError::ParseError {
            file: file.into(),
            line: inner.line(),
            column: inner.column(),
            field,
            message: inner.to_string(),
        }
    })
}

pub fn decode_entry(e: &[i64]) -> Option<CyclotomicElement> {
    let r = |n: i64, d: i64| (d != 0).then(|| Rational::new(n.into(), d.into()));
    match *e {
        [n, d] => Some(CyclotomicElement::from_rational(r(n, d)?)),
        [a, ad, b, bd] => Some(CyclotomicElement::from_sqrt5_pair(r(a, ad)?, r(b, bd)?)),
        _ => None,
    }
}

fn small(r: &Rational) -> Option<(i64, i64)> {
    use num_traits::ToPrimitive;
    Some((r.numer().to_i64()?, r.denom().to_i64()?))
}

/// Encode as `[num, den]` when rational, else `[a_num, a_den, b_num, b_den]`.
pub fn encode_entry(x: &CyclotomicElement, force_pair: bool) -> Option<Entry> {
    let (a, b) = x.to_sqrt5_pair()?;
    let (an, ad) = small(&a)?;
    let (bn, bd) = small(&b)?;
    if force_pair {
        Some(vec![an, ad, bn, bd])
    } else if bn == 0 {
        Some(vec![an, ad])
    } else {
        Some(vec![an, ad, bn, bd])
    }
}

fn decode_poly(coeffs: &[Entry]) -> Option<CycloPolynomial> {
    Some(Poly::from_coeffs(
        coeffs.iter().map(|e| decode_entry(e)).collect::<Option<Vec<_>>>()?,
    ))
}

/// Parse and validate an exceptional-type file.
pub fn load_exceptional(
    file: &str,
    text: &str,
    expected: CoxeterType,
) -> Result<ExceptionalData, DataError> {
    let raw: ExceptionalFile = parse_json(file, text)?;
    let corrupt = |inv: Invariant, detail: String| DataError::DataCorrupt {
        file: file.into(),
        invariant: inv,
        detail,
    };
    if raw.schema_version != SCHEMA_VERSION {
        return Err(corrupt(
            Invariant::SchemaVersion,
            format!("expected {SCHEMA_VERSION}, found {}", raw.schema_version),
        ));
    }
    let t: CoxeterType = raw
        .type_name
        .parse()
        .map_err(|_| corrupt(Invariant::TypeAndOrder, format!("unknown type {}", raw.type_name)))?;
    if t != expected || raw.rank != t.rank() || BigInt::from(raw.group_order) != t.order() {
        return Err(corrupt(
            Invariant::TypeAndOrder,
            format!("file describes {} of rank {} and order {}", raw.type_name, raw.rank, raw.group_order),
        ));
    }
    let k = raw.classes.len();
    if raw.characters.len() != k || raw.values.len() != k * k || raw.generic_degrees.len() != k {
        return Err(corrupt(
            Invariant::Dimensions,
            format!(
                "{k} classes, {} characters, {} values, {} generic degrees",
                raw.characters.len(),
                raw.values.len(),
                raw.generic_degrees.len()
            ),
        ));
    }
    let bad_entry = |what: String| corrupt(Invariant::Encoding, what);
    let mut values = Vec::with_capacity(k);
    for i in 0..k {
        let mut row = Vec::with_capacity(k);
        for j in 0..k {
            row.push(
                decode_entry(&raw.values[i * k + j])
                    .ok_or_else(|| bad_entry(format!("values[{}]", i * k + j)))?,
            );
        }
        values.push(row);
    }
    let mut class_info = Vec::with_capacity(k);
    for (i, c) in raw.classes.iter().enumerate() {
        let charpoly = match &c.charpoly {
            Some(p) => Some(decode_poly(p).ok_or_else(|| bad_entry(format!("classes[{i}].charpoly")))?),
            None => None,
        };
        let word = match &c.word {
            Some(w) => Some(parse_word(&t, w).map_err(|_| bad_entry(format!("classes[{i}].word")))?),
            None => None,
        };
        class_info.push(ClassInfo {
            charpoly,
            word,
            commuting_reflections: c.commuting_reflections.clone(),
            carter_label: c.carter_label.clone(),
        });
    }
    let degrees = raw
        .generic_degrees
        .iter()
        .enumerate()
        .map(|(i, d)| decode_poly(d).ok_or_else(|| bad_entry(format!("generic_degrees[{i}]"))))
        .collect::<Result<Vec<_>, _>>()?;
    let rank_identity: CycloPolynomial =
        (&crate::exactpoly::Polynomial::one_minus_q_pow(1).pow(t.rank() as u32)).into();
    let identity_class = (0..k)
        .find(|&i| {
            class_info[i].word.as_ref().is_some_and(|w| w.is_empty())
                || class_info[i].charpoly.as_ref() == Some(&rank_identity)
        })
        .ok_or_else(|| corrupt(Invariant::Dimensions, "no identity class".into()))?;
    let table = CharacterTable {
        ctype: t,
        class_labels: raw
            .classes
            .iter()
            .map(|c| match t {
                // G2 classes are dihedral classes and keep those labels
                CoxeterType::G2 | CoxeterType::I(_) => {
                    ConjClassLabel::parse(&t, &c.name).unwrap_or_else(|_| ConjClassLabel::Named(c.name.clone()))
                }
                _ => ConjClassLabel::Named(c.name.clone()),
            })
            .collect(),
        class_sizes: raw.classes.iter().map(|c| BigInt::from(c.size)).collect(),
        char_labels: raw
            .characters
            .iter()
            .map(|c| CharLabel::Named(c.name.clone()))
            .collect(),
        values,
        identity_class,
        class_info,
    };
    let names: HashSet<&str> = raw.classes.iter().map(|c| c.name.as_str()).collect();
    let chars: HashSet<&str> = raw.characters.iter().map(|c| c.name.as_str()).collect();
    if names.len() != k || chars.len() != k {
        return Err(corrupt(Invariant::Dimensions, "duplicate class or character names".into()));
    }
    table.validate().map_err(|e| {
        let inv = match e {
            TableError::RowOrthogonality(..) => Invariant::RowOrthogonality,
            TableError::ColumnOrthogonality(..) => Invariant::ColumnOrthogonality,
            TableError::ClassSizes { .. } => Invariant::ClassSizes,
            TableError::NotReal(_) => Invariant::RealValues,
            TableError::BadDegree(_) => Invariant::CharacterDegrees,
            _ => Invariant::Dimensions,
        };
        corrupt(inv, e.to_string())
    })?;
    for (i, c) in raw.characters.iter().enumerate() {
        if BigInt::from(c.degree) != table.degree(i) {
            return Err(corrupt(
                Invariant::CharacterDegrees,
                format!("{} has degree {} but chi(e) = {}", c.name, c.degree, table.degree(i)),
            ));
        }
    }
    let mut seen = HashSet::new();
    for (i, info) in table.class_info.iter().enumerate() {
        let key = (
            raw.classes[i].size,
            info.charpoly.as_ref().map(|p| format!("{p:?}")),
            info.commuting_reflections.clone(),
            // classes swapped by a diagram automorphism (the two G2 reflection
            // classes) differ only in their representative words
            info.word.clone(),
        );
        if !seen.insert(key) {
            return Err(corrupt(
                Invariant::DistinctFingerprints,
                format!("class {} repeats a fingerprint", raw.classes[i].name),
            ));
        }
    }
    if t.is_enumerable() {
        let group = enumerate_group(&t).map_err(|e| corrupt(Invariant::GroupFingerprints, e.to_string()))?;
        let classes = group.conjugacy_classes();
        match_classes(&group, &classes, &table)
            .map_err(|e| corrupt(Invariant::GroupFingerprints, e.to_string()))?;
    }
    let degrees = GenericDegreeTable {
        ctype: t,
        labels: table.char_labels.clone(),
        entries: degrees,
    };
    degrees.validate(&table).map_err(|e| {
        let inv = match e {
            GenDegError::TrivialNotOne => Invariant::TrivialDegree,
            GenDegError::SignNotTopPower => Invariant::SignDegree,
            GenDegError::PoincareSum => Invariant::PoincareSum,
            GenDegError::EpsilonTwist(_) => Invariant::EpsilonTwist,
            GenDegError::NotDivisibleByQ(_) => Invariant::QDivides,
            _ => Invariant::Dimensions,
        };
        corrupt(inv, e.to_string())
    })?;
    Ok(ExceptionalData { table, degrees })
}

pub fn load_golden(file: &str, text: &str) -> Result<GoldenFile, DataError> {
    parse_json(file, text)
}

pub fn exceptional_file_name(t: CoxeterType) -> String {
    format!("{t}.json")
}

/// Source of data files: a directory, or the copies compiled into the library.
#[derive(Debug, Default)]
pub struct DataStore {
    dir: Option<PathBuf>,
    cache: Mutex<HashMap<CoxeterType, Arc<ExceptionalData>>>,
}

impl DataStore {
    pub fn bundled() -> Self {
        Self::default()
    }

    pub fn with_dir(dir: impl Into<PathBuf>) -> Self {
        DataStore {
            dir: Some(dir.into()),
            cache: Mutex::default(),
        }
    }

    /// Directory from `GPOLY_DATA_DIR` if set, else bundled data.
    pub fn from_env() -> Self {
        match std::env::var_os(DATA_DIR_ENV) {
            Some(d) if !d.is_empty() => Self::with_dir(d),
            _ => Self::bundled(),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn read(&self, name: &str) -> Result<String, DataError> {
        match &self.dir {
            Some(dir) => std::fs::read_to_string(dir.join(name))
                .map_err(|_| DataError::DataMissing(dir.join(name).display().to_string())),
            None => BUNDLED
                .iter()
                .find(|(n, _)| *n == name)
                .map(|(_, text)| text.to_string())
                .ok_or_else(|| DataError::DataMissing(name.into())),
        }
    }

    pub fn exceptional(&self, t: CoxeterType) -> Result<Arc<ExceptionalData>, DataError> {
        if let Some(d) = self.cache.lock().expect("cache lock").get(&t) {
            return Ok(d.clone());
        }
        let name = exceptional_file_name(t);
        let data = Arc::new(load_exceptional(&name, &self.read(&name)?, t)?);
        Ok(self
            .cache
            .lock()
            .expect("cache lock")
            .entry(t)
            .or_insert(data)
            .clone())
    }

    pub fn golden(&self, name: &str) -> Result<GoldenFile, DataError> {
        let file = format!("golden_{name}.json");
        load_golden(&file, &self.read(&file)?)
    }
}
