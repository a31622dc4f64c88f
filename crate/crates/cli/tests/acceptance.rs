//! End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit if
//! any fails. Criteria 1-4 go through the `gpoly` binary; the rest call the library.

use std::process::Command;
use std::time::{Duration, Instant};

use gpoly_core::combinatorics::{verify_gauss_alternating_instance, verify_gauss_shifted_instance};
use gpoly_core::cyclotomic::verify_root_of_unity_sum_identity;
use gpoly_core::datastore::{load_exceptional, DataError};
use gpoly_core::engine::{supported_types, Sweep};
use gpoly_core::groups::enumerate_group;
use gpoly_core::{ConjClassLabel, CoxeterType, DataStore, Engine, Polynomial, TableReport};
use serde_json::Value;

type Outcome = Result<String, String>;
type Check<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn gpoly(args: &[&str]) -> Result<(String, Duration), String> {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_gpoly"))
        .args(args)
        .env_remove("GPOLY_DATA_DIR")
        .output()
        .map_err(|e| e.to_string())?;
    let took = start.elapsed();
    if !out.status.success() {
        return Err(format!(
            "gpoly {} exited with {}: {}",
            args.join(" "),
            out.status,
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok((String::from_utf8_lossy(&out.stdout).into_owned(), took))
}

/// Cuspidal table from the binary against the reference rows, in the printed order.
fn reference_table(args: &[&str], golden: &str, limit: Duration) -> Outcome {
    let (json, took) = gpoly(args)?;
    let report: TableReport = serde_json::from_str(&json).map_err(|e| e.to_string())?;
    let want = DataStore::bundled().golden(golden).map_err(|e| e.to_string())?;
    if report.rows.len() != want.rows.len() {
        return Err(format!("{} rows, expected {}", report.rows.len(), want.rows.len()));
    }
    for w in &want.rows {
        let row = report
            .rows
            .iter()
            .find(|r| r.class == w.class)
            .ok_or_else(|| format!("no row for {}", w.class))?;
        let h = row.h_coeffs.as_ref().ok_or_else(|| format!("{}: h undefined", w.class))?;
        let ok = if w.truncated {
            h.starts_with(&w.h_coeffs)
        } else {
            *h == w.h_coeffs
        };
        if !ok {
            return Err(format!("{}: got {h:?}, expected {:?}", w.class, w.h_coeffs));
        }
    }
    if took > limit {
        return Err(format!("took {took:?}, limit {limit:?}"));
    }
    Ok(format!("{} rows in {took:.2?}", want.rows.len()))
}

fn sweep_result(s: Sweep) -> Outcome {
    if s.passed() {
        Ok(format!("{} checked", s.checked))
    } else {
        Err(format!("{} of {} failed, first {}", s.failures.len(), s.checked, s.failures[0]))
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn c5_factorizations(e: &Engine) -> Outcome {
    let t = CoxeterType::B(3);
    let cube = Polynomial::one_minus_q_pow(1).pow(3);
    let cases = [
        ("(-),(2,1)", [1, 2, 1, 2, 1]),
        ("(-),(1^3)", [1, 1, 4, 1, 1]),
    ];
    for (class, tail) in cases {
        let label = ConjClassLabel::parse(&t, class).map_err(err)?;
        let g = e.g_poly(t, &label).map_err(err)?.g;
        let want = &(&cube * &Polynomial::from_ints(&[1, 1, 1])) * &Polynomial::from_ints(&tail);
        if g != want {
            return Err(format!("{class}: g = {g}"));
        }
    }
    Ok("both factorizations exact".into())
}

fn c6_coxeter(e: &Engine) -> Outcome {
    let mut s = Sweep::default();
    for t in supported_types() {
        let ok = e.verify_coxeter_theorem(t).map_err(err)?;
        s.checked += 1;
        if !ok {
            s.failures.push(t.to_string());
        }
    }
    if s.checked != 47 {
        return Err(format!("{} types, expected 47", s.checked));
    }
    sweep_result(s)
}

fn c7_dihedral(e: &Engine) -> Outcome {
    let mut s = Sweep::default();
    for n in 3..=30 {
        for k in 1..=n / 2 {
            s.checked += 1;
            if !e.verify_dihedral_theorem(n, k).map_err(err)? {
                s.failures.push(format!("n={n} k={k}"));
            }
        }
    }
    sweep_result(s)
}

fn c8_type_a(e: &Engine) -> Outcome {
    let mut s = Sweep::default();
    for t in supported_types().into_iter().filter(|t| t.is_enumerable()) {
        let part = e.sweep_type_a(t).map_err(err)?;
        s.checked += part.checked;
        s.failures.extend(part.failures);
    }
    sweep_result(s)
}

fn c9_identity_reflection(e: &Engine) -> Outcome {
    let mut checked = 0;
    for t in supported_types() {
        let p = t.poincare_polynomial();
        let id = e.tables(t).map_err(err)?.table.identity_class;
        if e.g_poly_at(t, id).map_err(err)?.g != p {
            return Err(format!("{t}: g_e != P"));
        }
        let gs = (&Polynomial::one_minus_q_pow(1) * &p)
            .div_exact(&Polynomial::one_plus_q_pow(1))
            .map_err(err)?;
        let refl = e.reflection_classes(t).map_err(err)?;
        if refl.is_empty() {
            return Err(format!("{t}: no reflection class"));
        }
        for c in refl {
            if e.g_poly_at(t, c).map_err(err)?.g != gs {
                return Err(format!("{t}: g_s wrong on a reflection class"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} reflection classes and 47 identity classes"))
}

fn c10_properties(e: &Engine) -> Outcome {
    let mut s = Sweep::default();
    for t in supported_types() {
        let part = e.verify_palindromy(t).map_err(err)?;
        s.checked += part.checked;
        s.failures.extend(part.failures);
    }
    sweep_result(s)
}

fn c11_recursion(e: &Engine) -> Outcome {
    let mut s = Sweep::default();
    for t in [CoxeterType::B(3), CoxeterType::B(4), CoxeterType::D(4), CoxeterType::F4, CoxeterType::H(3)] {
        let part = e.sweep_parabolic_recursion(t).map_err(err)?;
        if part.checked == 0 {
            return Err(format!("{t}: no triples"));
        }
        s.checked += part.checked;
        s.failures.extend(part.failures);
    }
    if s.checked < 20 {
        return Err(format!("only {} triples", s.checked));
    }
    sweep_result(s)
}

fn c12_products(e: &Engine) -> Outcome {
    let pairs = [
        (CoxeterType::A(1), CoxeterType::A(1)),
        (CoxeterType::A(2), CoxeterType::A(1)),
        (CoxeterType::B(2), CoxeterType::A(2)),
        (CoxeterType::A(2), CoxeterType::I(5)),
        (CoxeterType::B(3), CoxeterType::G2),
        (CoxeterType::H(3), CoxeterType::A(1)),
        (CoxeterType::D(4), CoxeterType::A(2)),
    ];
    let s = e.sweep_product_formula(&pairs).map_err(err)?;
    sweep_result(s).map(|m| format!("{} products, {m} class pairs", pairs.len()))
}

fn c13_round_trip(e: &Engine) -> Outcome {
    let mut entries = 0;
    for t in supported_types() {
        entries += e.recover_generic_degrees(t).map_err(err)?.entries.len();
    }
    Ok(format!("{entries} generic degrees recovered"))
}

fn c14_root_sum() -> Outcome {
    let mut n_checked = 0;
    for n in 3..=16u32 {
        for a in 0..n as i64 {
            if !verify_root_of_unity_sum_identity(n, a).map_err(err)? {
                return Err(format!("n={n} a={a}"));
            }
            n_checked += 1;
        }
    }
    Ok(format!("{n_checked} instances"))
}

fn c15_gauss() -> Outcome {
    for l in 1..=12 {
        if !verify_gauss_alternating_instance(l) || !verify_gauss_shifted_instance(l) {
            return Err(format!("l={l}"));
        }
    }
    Ok("24 instances".into())
}

fn c16_poincare() -> Outcome {
    let mut n = 0;
    for t in supported_types().into_iter().filter(|t| t.is_enumerable()) {
        let g = enumerate_group(&t).map_err(err)?;
        let mut counts = vec![0i64; t.num_positive_roots() + 1];
        let mut max_len = 0;
        for w in 0..g.order() {
            let l = g.element(w).length();
            max_len = max_len.max(l);
            if l >= counts.len() {
                return Err(format!("{t}: length {l} exceeds N"));
            }
            counts[l] += 1;
        }
        if Polynomial::from_ints(&counts) != t.poincare_polynomial() || max_len != t.num_positive_roots() {
            return Err(t.to_string());
        }
        n += 1;
    }
    Ok(format!("{n} enumerable types"))
}

fn c17_conjecture(e: &Engine) -> Outcome {
    let mut rows = 0;
    let mut bad = Vec::new();
    for t in supported_types() {
        let r = e.check_conjecture(t, false).map_err(err)?;
        rows += r.rows.len();
        bad.extend(r.counterexamples().map(|c| format!("{t} {}", c.class)));
    }
    let mut open = Vec::new();
    for t in [CoxeterType::B(5), CoxeterType::B(6), CoxeterType::D(5), CoxeterType::D(6)] {
        let r = e.check_conjecture(t, true).map_err(err)?;
        open.push(format!("{t}:{}", r.rows.len()));
        bad.extend(r.counterexamples().map(|c| format!("{t} {}", c.class)));
    }
    if bad.is_empty() {
        Ok(format!("{rows} classes; cuspidal {}", open.join(" ")))
    } else {
        Err(format!("counterexamples: {}", bad.join("; ")))
    }
}

/// Every integer in the file bumped by one, except denominators of `[num, den]`
/// pairs (bumping those can leave the value unchanged, e.g. 0/1 -> 0/2).
fn corruptions(v: &Value, path: &mut Vec<String>, out: &mut Vec<Vec<String>>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if k == "schema_version" {
                    continue;
                }
                path.push(k.clone());
                corruptions(x, path, out);
                path.pop();
            }
        }
        Value::Array(a) => {
            let pairs = !a.is_empty() && a.len() % 2 == 0 && a.iter().all(Value::is_i64);
            for (i, x) in a.iter().enumerate() {
                if pairs && i % 2 == 1 {
                    continue;
                }
                path.push(i.to_string());
                corruptions(x, path, out);
                path.pop();
            }
        }
        Value::Number(n) if n.is_i64() => out.push(path.clone()),
        _ => {}
    }
}

fn bump(v: &mut Value, path: &[String]) {
    let mut cur = v;
    for p in path {
        cur = match cur {
            Value::Object(m) => m.get_mut(p).expect("path"),
            Value::Array(a) => &mut a[p.parse::<usize>().expect("index")],
            _ => unreachable!(),
        };
    }
    *cur = Value::from(cur.as_i64().expect("integer") + 1);
}

fn c18_corruption() -> Outcome {
    let store = DataStore::bundled();
    let mut total = 0;
    let mut invariants = std::collections::BTreeMap::new();
    for t in [CoxeterType::F4, CoxeterType::H(3)] {
        let name = format!("{t}.json");
        let text = store.read(&name).map_err(err)?;
        load_exceptional(&name, &text, t).map_err(err)?;
        let base: Value = serde_json::from_str(&text).map_err(err)?;
        let mut paths = Vec::new();
        corruptions(&base, &mut Vec::new(), &mut paths);
        for p in &paths {
            let mut v = base.clone();
            bump(&mut v, p);
            match load_exceptional(&name, &v.to_string(), t) {
                Err(DataError::DataCorrupt { invariant, .. }) => {
                    *invariants.entry(invariant.to_string()).or_insert(0) += 1;
                }
                Err(other) => return Err(format!("{name} {}: {other}", p.join("."))),
                Ok(_) => return Err(format!("{name} {}: accepted", p.join("."))),
            }
        }
        total += paths.len();
    }
    let named: Vec<String> = invariants.iter().map(|(k, n)| format!("{k}: {n}")).collect();
    Ok(format!("{total} corruptions rejected ({})", named.join(", ")))
}

fn main() {
    let e = Engine::new(DataStore::bundled());
    let criteria: Vec<Check> = vec![
        ("B3 cuspidal table exact", Box::new(|| {
            reference_table(&["table", "--type", "B", "--rank", "3", "--cuspidal", "--format", "json"], "B3", Duration::from_secs(1))
        })),
        ("D4 cuspidal prefixes", Box::new(|| {
            reference_table(&["table", "--type", "D", "--rank", "4", "--cuspidal", "--format", "json"], "D4", Duration::from_secs(5))
        })),
        ("F4 cuspidal prefixes", Box::new(|| {
            reference_table(&["table", "--type", "F", "--rank", "4", "--cuspidal", "--format", "json"], "F4", Duration::from_secs(30))
        })),
        ("H3 cuspidal prefixes", Box::new(|| {
            reference_table(&["table", "--type", "H", "--rank", "3", "--cuspidal", "--format", "json"], "H3", Duration::from_secs(5))
        })),
        ("B3 factorizations", Box::new(|| c5_factorizations(&e))),
        ("Coxeter element sweep", Box::new(|| c6_coxeter(&e))),
        ("dihedral rotation sweep", Box::new(|| c7_dihedral(&e))),
        ("type-A parabolic classes", Box::new(|| c8_type_a(&e))),
        ("identity and reflection classes", Box::new(|| c9_identity_reflection(&e))),
        ("palindromy, degree, g(0), leading coefficient, integrality", Box::new(|| c10_properties(&e))),
        ("parabolic recursion", Box::new(|| c11_recursion(&e))),
        ("product formula", Box::new(|| c12_products(&e))),
        ("generic degree round trip", Box::new(|| c13_round_trip(&e))),
        ("root-of-unity sum identity", Box::new(c14_root_sum)),
        ("Gauss q-binomial identities", Box::new(c15_gauss)),
        ("Poincare polynomial from enumeration", Box::new(c16_poincare)),
        ("conjecture report", Box::new(|| c17_conjecture(&e))),
        ("corrupted data rejected", Box::new(c18_corruption)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        match outcome {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg} [{took:.2?}]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg} [{took:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
