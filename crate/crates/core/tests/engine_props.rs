use std::sync::OnceLock;

use gpoly_core::engine::{parabolic_components, supported_types, ConjectureReport, TableReport};
use gpoly_core::groups::{charpoly_multiplicity_of_one, ConjClassLabel, CoxeterType};
use gpoly_core::{DataStore, Engine, Polynomial, Sign};
use proptest::prelude::*;

fn engine() -> &'static Engine {
    static E: OnceLock<Engine> = OnceLock::new();
    E.get_or_init(|| Engine::new(DataStore::bundled()))
}

#[test]
fn labels_and_multiplicities_agree_with_enumeration() {
    let e = engine();
    for t in supported_types().into_iter().filter(|t| t.is_enumerable()) {
        let map = e.class_map(t).unwrap();
        for (cl, &col) in map.classes.iter().zip(&map.column) {
            let rep = map.group.element(cl.representative);
            if let Some(label) = map.group.class_label(cl) {
                assert_eq!(e.class_index(t, &label).unwrap(), col, "{t} {label}");
            }
            assert_eq!(
                e.eigenvalue_one_multiplicity(t, col).unwrap(),
                charpoly_multiplicity_of_one(&rep.charpoly),
                "{t} column {col}"
            );
            // g through a representative word equals g through the label
            assert_eq!(e.class_of_word(t, &rep.word).unwrap(), col);
        }
    }
}

#[test]
fn large_rank_cuspidal_rule() {
    let e = engine();
    let count = |t| e.cuspidal_flags(t).unwrap().into_iter().filter(|&b| b).count();
    assert_eq!(count(CoxeterType::B(5)), 7);
    assert_eq!(count(CoxeterType::B(6)), 11);
    assert_eq!(count(CoxeterType::D(5)), 3);
    assert_eq!(count(CoxeterType::D(6)), 6);
    assert_eq!(count(CoxeterType::A(7)), 1);
}

#[test]
fn components_of_parabolics() {
    let types = |t: CoxeterType, mask| -> Vec<CoxeterType> {
        parabolic_components(&t, mask).unwrap().into_iter().map(|c| c.ctype).collect()
    };
    assert_eq!(types(CoxeterType::F4, 0b0111), vec![CoxeterType::B(3)]);
    assert_eq!(types(CoxeterType::F4, 0b1110), vec![CoxeterType::B(3)]);
    assert_eq!(types(CoxeterType::F4, 0b0011), vec![CoxeterType::A(2)]);
    assert_eq!(types(CoxeterType::H(3), 0b110), vec![CoxeterType::I(5)]);
    assert_eq!(types(CoxeterType::D(4), 0b1101), vec![CoxeterType::A(1); 3]);
    assert_eq!(types(CoxeterType::B(4), 0b1011), vec![CoxeterType::A(2), CoxeterType::A(1)]);
    assert_eq!(types(CoxeterType::D(5), 0b11110), vec![CoxeterType::D(4)]);
    assert_eq!(types(CoxeterType::D(5), 0b01111), vec![CoxeterType::A(4)]);
    assert_eq!(types(CoxeterType::D(5), 0b11101), vec![CoxeterType::A(1), CoxeterType::A(3)]);
}

#[test]
fn small_examples() {
    let e = engine();
    let a3 = CoxeterType::A(3);
    let g = e.g_poly(a3, &ConjClassLabel::parse(&a3, "(4)").unwrap()).unwrap().g;
    let want: Polynomial = (1..=3).map(Polynomial::one_minus_q_pow).product();
    assert_eq!(g, want);

    let b3 = CoxeterType::B(3);
    let c = e.class_index(b3, &ConjClassLabel::parse(&b3, "(2,1),(-)").unwrap()).unwrap();
    let map = e.class_map(b3).unwrap();
    let w = map.brute_class(c).representative;
    assert!(e.verify_type_a_theorem(b3, w).unwrap());

    let w0 = e.g_poly_at(b3, e.longest_class(b3).unwrap()).unwrap();
    assert_eq!(w0.epsilon, Sign::Minus);
    assert_eq!(w0.class_label.to_string(), "(-),(1^3)");
}

#[test]
fn unsupported_and_unknown() {
    let e = engine();
    assert!(matches!(
        e.tables(CoxeterType::E(6)),
        Err(gpoly_core::EngineError::UnsupportedType(_))
    ));
    assert!(matches!(
        e.g_poly(CoxeterType::F4, &ConjClassLabel::Named("nope".into())),
        Err(gpoly_core::EngineError::UnknownClass { .. })
    ));
}

fn type_strategy() -> impl Strategy<Value = CoxeterType> {
    let all = supported_types();
    (0..all.len()).prop_map(move |i| all[i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn result_invariants(t in type_strategy(), pick in any::<prop::sample::Index>()) {
        let e = engine();
        let k = e.tables(t).unwrap().table.num_classes();
        let r = e.g_poly_at(t, pick.index(k)).unwrap();
        prop_assert_eq!(r.g.coeff(0), Polynomial::one().coeff(0));
        prop_assert_eq!(r.g.degree(), r.n as isize);
        prop_assert!(r.g.is_palindromic(r.n, r.epsilon));
        prop_assert!(r.g.is_integral());
        let h = r.h.clone().expect("conjecture holds in the supported range");
        prop_assert_eq!(h.degree(), (r.n - (t.rank() - r.m)) as isize);
        prop_assert!(h.is_palindromic(r.n - (t.rank() - r.m), Sign::Plus));
        prop_assert_eq!(&h * &Polynomial::one_minus_q_pow(1).pow((t.rank() - r.m) as u32), r.g);
    }

    #[test]
    fn dihedral_rotations_factor(n in 3u32..40, k in 1u32..20) {
        prop_assume!(k <= n / 2);
        prop_assert!(engine().verify_dihedral_theorem(n, k).unwrap());
    }

    #[test]
    fn product_with_identity_is_poincare(t in type_strategy()) {
        let e = engine();
        let id = e.tables(t).unwrap().table.identity_class;
        let a1 = CoxeterType::A(1);
        let id1 = e.tables(a1).unwrap().table.identity_class;
        prop_assert!(e.verify_product_formula(t, id, a1, id1).unwrap());
    }

    #[test]
    fn reports_round_trip_through_json(t in type_strategy(), cusp in any::<bool>()) {
        let e = engine();
        let table = e.table(t, cusp).unwrap();
        let back: TableReport = serde_json::from_str(&serde_json::to_string(&table).unwrap()).unwrap();
        prop_assert_eq!(back, table);
        let conj = e.check_conjecture(t, cusp).unwrap();
        let back: ConjectureReport = serde_json::from_str(&serde_json::to_string(&conj).unwrap()).unwrap();
        prop_assert_eq!(back, conj);
    }
}
