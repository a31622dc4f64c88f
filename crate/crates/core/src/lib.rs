//! Exact computation of the class polynomials `g_w(q) = sum_chi chi(w) d_chi(q)`
//! and `h_w(q) = g_w(q) / (1-q)^(l - m(w))` for finite Coxeter groups.

pub mod chartab;
pub mod combinatorics;
pub mod cyclotomic;
pub mod datastore;
pub mod engine;
pub mod exactpoly;
pub mod gendeg;
pub mod groups;

pub use datastore::{DataError, DataStore};
pub use engine::{
    ClassRow, ConjectureReport, ConjectureRow, Engine, EngineError, GPolyResult, Scope,
    TableReport, Verifier, VerifyReport,
};
pub use exactpoly::{Polynomial, Rational, Sign};
pub use groups::{ConjClassLabel, CoxeterType};
