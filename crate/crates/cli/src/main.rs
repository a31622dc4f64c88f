use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gpoly_core::datastore::DATA_DIR_ENV;
use gpoly_core::engine::{conjecture_checks, ClassRow, ConjectureReport, Scope, VerifyReport};
use gpoly_core::groups::{parse_word, GroupError};
use gpoly_core::{CoxeterType, DataStore, Engine, EngineError, Polynomial, TableReport, Verifier};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_UNSUPPORTED: u8 = 3;
const EXIT_DATA: u8 = 4;

#[derive(Parser)]
#[command(name = "gpoly", version, about = "Class polynomials g_w(q), h_w(q) of finite Coxeter groups")]
struct Cli {
    /// Directory holding the exceptional data files (default: bundled copies).
    #[arg(long, global = true, env = DATA_DIR_ENV)]
    data_dir: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args, Clone)]
struct TypeArgs {
    /// Family letter (A, B, C, D, E, F, G, H, I) or a full name such as B3 or I2(7).
    #[arg(long = "type")]
    ctype: String,
    #[arg(long)]
    rank: Option<u32>,
    /// Dihedral parameter n of I2(n).
    #[arg(long)]
    param: Option<u32>,
}

impl TypeArgs {
    fn resolve(&self) -> Result<CoxeterType, GroupError> {
        let s = self.ctype.trim();
        if s.len() > 1 {
            if self.rank.is_some() || self.param.is_some() {
                return Err(GroupError::InvalidType(format!(
                    "{s} already names a rank; drop --rank/--param"
                )));
            }
            return s.parse();
        }
        let family = s.chars().next().unwrap_or('?').to_ascii_uppercase();
        let rank = match (self.rank, family) {
            (Some(r), _) => r,
            (None, 'G' | 'I') => 2,
            (None, 'F') => 4,
            (None, _) => return Err(GroupError::InvalidType(format!("{s} needs --rank"))),
        };
        CoxeterType::new(family, rank, self.param)
    }
}

#[derive(Subcommand)]
enum Command {
    /// g, m, h, epsilon and N for one class.
    Compute {
        #[command(flatten)]
        ty: TypeArgs,
        /// Class label, e.g. "(-),(1^3)", "(3)", "k=3", "F_4(a_1)".
        #[arg(long, conflicts_with = "word", required_unless_present = "word")]
        class: Option<String>,
        /// Generator word of a representative, e.g. "rst" (enumerable types only).
        #[arg(long)]
        word: Option<String>,
    },
    /// One row per class, the Coxeter class first and the longest element's class last.
    Table {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        cuspidal: bool,
    },
    /// Run theorem and identity verifiers.
    Verify {
        #[arg(long, value_enum, default_value_t = Which::All)]
        which: Which,
        /// Restrict to one type (default: every supported type).
        #[arg(long = "type")]
        ctype: Option<String>,
        #[arg(long)]
        rank: Option<u32>,
        #[arg(long)]
        param: Option<u32>,
        /// Sweep every supported type (the default when no type is given).
        #[arg(long, conflicts_with = "ctype")]
        all_supported: bool,
        /// Largest n for the dihedral sweep.
        #[arg(long, default_value_t = 30)]
        max_n: u32,
    },
    /// Per-class check that h_w exists, is palindromic, integral and nonnegative.
    Conjecture {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        cuspidal: bool,
    },
    /// Load every data file and compare against the printed reference tables.
    Selfcheck,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    All,
    #[value(name = "typeA")]
    TypeA,
    Dihedral,
    Coxeter,
    Palindromy,
    Recursion,
    Product,
    Roundtrip,
}

impl Which {
    fn verifiers(self) -> Vec<Verifier> {
        match self {
            Which::All => Verifier::ALL.to_vec(),
            Which::TypeA => vec![Verifier::TypeA],
            Which::Dihedral => vec![Verifier::Dihedral],
            Which::Coxeter => vec![Verifier::Coxeter],
            Which::Palindromy => vec![Verifier::Palindromy],
            Which::Recursion => vec![Verifier::Recursion],
            Which::Product => vec![Verifier::Product],
            Which::Roundtrip => vec![Verifier::Roundtrip],
        }
    }
}

/// Failure carrying its exit code.
struct Fail(u8, String);

impl From<EngineError> for Fail {
    fn from(e: EngineError) -> Self {
        let code = match &e {
            EngineError::UnsupportedType(_) | EngineError::UnknownClass { .. } => EXIT_UNSUPPORTED,
            EngineError::Group(GroupError::TooLarge { .. }) => EXIT_UNSUPPORTED,
            EngineError::Group(_) => EXIT_USAGE,
            EngineError::IntegralityViolated { .. }
            | EngineError::RoundTripMismatch { .. }
            | EngineError::CuspidalRuleMismatch(_) => EXIT_FAILED,
            _ => EXIT_DATA,
        };
        Fail(code, e.to_string())
    }
}

impl From<GroupError> for Fail {
    fn from(e: GroupError) -> Self {
        EngineError::Group(e).into()
    }
}

impl From<io::Error> for Fail {
    fn from(e: io::Error) -> Self {
        Fail(EXIT_DATA, e.to_string())
    }
}

impl From<csv::Error> for Fail {
    fn from(e: csv::Error) -> Self {
        Fail(EXIT_DATA, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let store = match &cli.data_dir {
        Some(d) => DataStore::with_dir(d),
        None => DataStore::bundled(),
    };
    let engine = Engine::new(store);
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(&engine, &cli, &mut out) {
        Ok(code) => {
            let _ = out.flush();
            ExitCode::from(code)
        }
        Err(Fail(code, msg)) => {
            let _ = out.flush();
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(engine: &Engine, cli: &Cli, out: &mut impl Write) -> Result<u8, Fail> {
    match &cli.command {
        Command::Compute { ty, class, word } => {
            let t = ty.resolve()?;
            let c = match (class, word) {
                (Some(text), _) => engine.resolve_class(t, text)?,
                (None, Some(w)) => engine.class_of_word(t, &parse_word(&t, w)?)?,
                (None, None) => unreachable!("clap requires one of them"),
            };
            let r = engine.g_poly_at(t, c)?;
            let row = ClassRow::from(&r);
            match cli.format {
                Format::Text => {
                    writeln!(out, "type     {t}")?;
                    writeln!(out, "class    {}", row.class)?;
                    writeln!(out, "epsilon  {}", row.epsilon)?;
                    writeln!(out, "N        {}", row.n)?;
                    writeln!(out, "m        {}", row.m)?;
                    writeln!(out, "g        {}", r.g)?;
                    match &r.h {
                        Some(h) => writeln!(out, "h        {h}")?,
                        None => writeln!(
                            out,
                            "h        undefined: (1-q)^{} does not divide g",
                            t.rank() - r.m
                        )?,
                    }
                }
                Format::Csv => write_csv(out, std::slice::from_ref(&row))?,
                Format::Json => write_json(out, &row)?,
            }
            Ok(0)
        }
        Command::Table { ty, cuspidal } => {
            let t = ty.resolve()?;
            let report = engine.table(t, *cuspidal)?;
            match cli.format {
                Format::Text => write_table_text(out, &report)?,
                Format::Csv => write_csv(out, &report.rows)?,
                Format::Json => write_json(out, &report)?,
            }
            Ok(0)
        }
        Command::Verify {
            which,
            ctype,
            rank,
            param,
            max_n,
            ..
        } => {
            let scope = match ctype {
                Some(s) => {
                    let t = TypeArgs {
                        ctype: s.clone(),
                        rank: *rank,
                        param: *param,
                    }
                    .resolve()?;
                    let scope = Scope::single(t);
                    if *which == Which::Dihedral && !matches!(t, CoxeterType::I(_)) {
                        return Err(Fail(EXIT_USAGE, "the dihedral sweep takes --type I or no type".into()));
                    }
                    scope
                }
                None => {
                    if *max_n < 3 {
                        return Err(Fail(EXIT_USAGE, "--max-n must be at least 3".into()));
                    }
                    Scope::all_supported(*max_n)
                }
            };
            let report = engine.verify(&which.verifiers(), &scope)?;
            match cli.format {
                Format::Text => write_verify_text(out, &report)?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut *out);
                    w.write_record(["check", "checked", "passed", "first_failure"])?;
                    for c in &report.checks {
                        let first = c.failures.first().cloned().unwrap_or_default();
                        w.write_record([c.name.clone(), c.checked.to_string(), c.passed.to_string(), first])?;
                    }
                    w.flush()?;
                }
                Format::Json => write_json(out, &report)?,
            }
            Ok(if report.passed { 0 } else { EXIT_FAILED })
        }
        Command::Conjecture { ty, cuspidal } => {
            let t = ty.resolve()?;
            let report = engine.check_conjecture(t, *cuspidal)?;
            match cli.format {
                Format::Text => write_conjecture_text(out, &report)?,
                Format::Csv => {
                    let rows: Vec<ClassRow> = report
                        .rows
                        .iter()
                        .map(|r| ClassRow {
                            class: r.class.clone(),
                            epsilon: r.epsilon,
                            m: r.m,
                            n: t.num_positive_roots(),
                            g_coeffs: r.g_coeffs.clone(),
                            h_coeffs: r.h_coeffs.clone(),
                        })
                        .collect();
                    write_csv(out, &rows)?
                }
                Format::Json => write_json(out, &report)?,
            }
            Ok(if report.passed { 0 } else { EXIT_FAILED })
        }
        Command::Selfcheck => selfcheck(engine, cli.format, out),
    }
}

fn coeff_list(c: &[i64]) -> String {
    c.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}

fn write_csv(out: &mut impl Write, rows: &[ClassRow]) -> Result<(), Fail> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["class", "epsilon", "m", "g_coeffs", "h_coeffs"])?;
    for r in rows {
        w.write_record([
            r.class.clone(),
            r.epsilon.to_string(),
            r.m.to_string(),
            coeff_list(&r.g_coeffs),
            r.h_coeffs.as_deref().map(coeff_list).unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn write_json<T: serde::Serialize>(out: &mut impl Write, value: &T) -> Result<(), Fail> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| Fail(EXIT_DATA, e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn poly(c: &[i64]) -> Polynomial {
    Polynomial::from_ints(c)
}

fn write_table_text(out: &mut impl Write, report: &TableReport) -> Result<(), Fail> {
    let width = report.rows.iter().map(|r| r.class.len()).max().unwrap_or(5).max(5);
    writeln!(out, "{:<width$}  eps  m  h_w(q)", "class")?;
    for r in &report.rows {
        let h = match &r.h_coeffs {
            Some(h) => poly(h).to_string(),
            None => format!("undefined; g = {}", poly(&r.g_coeffs)),
        };
        writeln!(out, "{:<width$}  {:>3}  {}  {h}", r.class, r.epsilon, r.m)?;
    }
    Ok(())
}

fn write_conjecture_text(out: &mut impl Write, report: &ConjectureReport) -> Result<(), Fail> {
    let width = report.rows.iter().map(|r| r.class.len()).max().unwrap_or(5).max(5);
    for r in &report.rows {
        let verdict = if r.passed {
            "pass".to_string()
        } else {
            let failed: Vec<&str> = conjecture_checks(r)
                .into_iter()
                .filter(|(_, ok)| !ok)
                .map(|(name, _)| name)
                .collect();
            format!("COUNTEREXAMPLE ({})", failed.join(", "))
        };
        writeln!(out, "{:<width$}  m={}  {verdict}", r.class, r.m)?;
    }
    let bad = report.counterexamples().count();
    writeln!(
        out,
        "{}: {} classes checked{}, {}",
        report.ctype,
        report.rows.len(),
        if report.cuspidal_only { " (cuspidal)" } else { "" },
        if bad == 0 {
            "all pass".to_string()
        } else {
            format!("{bad} counterexample(s)")
        }
    )?;
    Ok(())
}

fn write_verify_text(out: &mut impl Write, report: &VerifyReport) -> Result<(), Fail> {
    for c in &report.checks {
        if c.passed {
            writeln!(out, "{:<11} PASS ({} checked)", c.name, c.checked)?;
        } else {
            writeln!(
                out,
                "{:<11} FAIL ({} of {} failed; first: {})",
                c.name,
                c.failures.len(),
                c.checked,
                c.failures[0]
            )?;
        }
    }
    Ok(())
}

fn selfcheck(engine: &Engine, format: Format, out: &mut impl Write) -> Result<u8, Fail> {
    #[derive(serde::Serialize)]
    struct Item {
        name: String,
        ok: bool,
        detail: String,
    }
    let mut items = Vec::new();
    for t in [CoxeterType::F4, CoxeterType::H(3)] {
        match engine.tables(t) {
            Ok(_) => items.push(Item {
                name: format!("data {t}"),
                ok: true,
                detail: "loaded and validated".into(),
            }),
            Err(e) => return Err(e.into()),
        }
    }
    for (name, t) in [
        ("B3", CoxeterType::B(3)),
        ("D4", CoxeterType::D(4)),
        ("F4", CoxeterType::F4),
        ("H3", CoxeterType::H(3)),
    ] {
        let golden = engine.store().golden(name).map_err(EngineError::from)?;
        let mut mismatches = Vec::new();
        for row in &golden.rows {
            let c = engine.resolve_class(t, &row.class)?;
            let got = engine.g_poly_at(t, c)?.h.and_then(|h| h.i64_coeffs());
            let ok = match &got {
                Some(h) if row.truncated => h.starts_with(&row.h_coeffs),
                Some(h) => *h == row.h_coeffs,
                None => false,
            };
            if !ok {
                mismatches.push(row.class.clone());
            }
        }
        items.push(Item {
            name: format!("reference {name}"),
            ok: mismatches.is_empty(),
            detail: if mismatches.is_empty() {
                format!("{} rows match", golden.rows.len())
            } else {
                format!("mismatch: {}", mismatches.join(", "))
            },
        });
    }
    let passed = items.iter().all(|i| i.ok);
    match format {
        Format::Json => write_json(out, &items)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["check", "ok", "detail"])?;
            for i in &items {
                w.write_record([i.name.clone(), i.ok.to_string(), i.detail.clone()])?;
            }
            w.flush()?;
        }
        Format::Text => {
            for i in &items {
                writeln!(out, "{:<13} {}  {}", i.name, if i.ok { "ok  " } else { "FAIL" }, i.detail)?;
            }
        }
    }
    Ok(if passed { 0 } else { EXIT_FAILED })
}
