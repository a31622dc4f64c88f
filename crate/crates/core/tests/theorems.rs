use gpoly_core::datastore::DataStore;
use gpoly_core::engine::{supported_types, Engine};
use gpoly_core::exactpoly::Polynomial;
use gpoly_core::groups::CoxeterType;

fn engine() -> Engine {
    Engine::new(DataStore::bundled())
}

#[test]
fn coxeter_elements() {
    let e = engine();
    for t in supported_types() {
        assert!(e.verify_coxeter_theorem(t).unwrap(), "{t}");
    }
}

#[test]
fn dihedral_rotations() {
    let e = engine();
    for n in 3..=30 {
        for k in 1..=n / 2 {
            assert!(e.verify_dihedral_theorem(n, k).unwrap(), "I2({n}) k={k}");
        }
    }
}

#[test]
fn identity_and_reflection() {
    let e = engine();
    for t in supported_types() {
        let p = t.poincare_polynomial();
        let tables = e.tables(t).unwrap();
        assert_eq!(e.g_poly_at(t, tables.table.identity_class).unwrap().g, p, "{t}");
        let s = e.reflection_classes(t).unwrap();
        assert!(!s.is_empty());
        let want = (&Polynomial::one_minus_q_pow(1) * &p).div_exact(&Polynomial::one_plus_q_pow(1)).unwrap();
        for c in s {
            assert_eq!(e.g_poly_at(t, c).unwrap().g, want, "{t}");
        }
    }
}

#[test]
fn type_a_parabolic_classes() {
    let e = engine();
    for t in supported_types().into_iter().filter(|t| t.is_enumerable()) {
        let sweep = e.sweep_type_a(t).unwrap();
        assert!(sweep.passed(), "{t}: {:?}", sweep.failures);
        assert!(sweep.checked > 0);
    }
}

#[test]
fn palindromy_everywhere() {
    let e = engine();
    for t in supported_types() {
        let sweep = e.verify_palindromy(t).unwrap();
        assert!(sweep.passed(), "{t}: {:?}", sweep.failures);
    }
}

#[test]
fn parabolic_recursion() {
    let e = engine();
    let mut total = 0;
    for t in [CoxeterType::B(3), CoxeterType::B(4), CoxeterType::D(4), CoxeterType::F4, CoxeterType::H(3)] {
        let sweep = e.sweep_parabolic_recursion(t).unwrap();
        assert!(sweep.passed(), "{t}: {:?}", sweep.failures);
        assert!(sweep.checked > 0, "{t}");
        total += sweep.checked;
    }
    assert!(total >= 20);
}

#[test]
fn products() {
    let e = engine();
    let pairs = [
        (CoxeterType::A(1), CoxeterType::A(2)),
        (CoxeterType::B(2), CoxeterType::A(1)),
        (CoxeterType::A(2), CoxeterType::I(5)),
        (CoxeterType::B(3), CoxeterType::G2),
        (CoxeterType::H(3), CoxeterType::A(1)),
        (CoxeterType::D(4), CoxeterType::A(2)),
    ];
    let sweep = e.sweep_product_formula(&pairs).unwrap();
    assert!(sweep.passed(), "{:?}", sweep.failures);
}

#[test]
fn round_trip() {
    let e = engine();
    for t in supported_types() {
        e.recover_generic_degrees(t).unwrap();
    }
}

#[test]
fn conjecture() {
    let e = engine();
    for t in supported_types() {
        let r = e.check_conjecture(t, false).unwrap();
        let bad: Vec<_> = r.counterexamples().map(|r| r.class.clone()).collect();
        assert!(r.passed, "{t}: {bad:?}");
    }
}
