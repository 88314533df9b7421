//! Command-line front end. Exit codes: 0 success or passing check, 1 failing
//! check, 2 usage error.

use std::collections::BTreeSet;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qcoh::gw::{base_count, one_point_literal};
use qcoh::lattice::{
    anticanonical_degree, classes_of_anticanonical_degree, is_effective, minus_one_curves,
    q_name, GENERATORS,
};
use qcoh::moduli::{dictionary_image, keel_vanishing_pairs_5, pic_basis};
use qcoh::presentation::{check_corollary1, qclass_json, relations_for};
use qcoh::quantum::{check_associativity_strict, qmul_divisors};
use qcoh::report::{check_grading, discrepancy_report};
use qcoh::threefold::{cord_anticanonical_degree, cords, exceptional_fiber_invariant};
use qcoh::{BoundaryIndex, Insertion, Mode, SurfaceClass};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "qcoh", about = "Quantum cohomology of M_{0,5} and friends")]
struct Cli {
    /// Which product to use
    #[arg(long, value_enum, default_value_t = ModeArg::Literal, global = true)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Literal,
    Strict,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Literal => Mode::Literal,
            ModeArg::Strict => Mode::Strict,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the quantum presentation with its five relations
    Present {
        #[arg(long)]
        n: u8,
    },
    /// Quantum product of two divisor classes, e.g. `H-E1-E4` or `d{2,3}`
    Qmul {
        left: String,
        right: String,
        #[arg(long, default_value_t = 5)]
        n: u8,
    },
    /// Print the inductive Picard basis of M_{0,n}
    Basis {
        #[arg(long)]
        n: u8,
    },
    /// Dump the literal one-point table and the strict count table
    Invariants,
    /// Threefold computations
    Threefold {
        #[arg(value_enum)]
        what: ThreefoldWhat,
    },
    /// Run a named consistency check
    Check {
        #[arg(value_enum)]
        name: CheckName,
    },
    /// Print a structured report
    Report {
        #[arg(value_enum)]
        what: ReportWhat,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ThreefoldWhat {
    Cords,
    Fibres,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportWhat {
    Discrepancies,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CheckName {
    Corollary1,
    Associativity,
    Grading,
    Keel,
    Cone,
}

/// Runs the CLI with process stdio.
pub fn run(argv: &[String]) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

struct Output<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    format: Format,
}

impl Output<'_> {
    fn line(&mut self, s: impl AsRef<str>) {
        let _ = writeln!(self.out, "{}", s.as_ref());
    }

    fn text(&mut self, s: impl AsRef<str>) {
        let _ = write!(self.out, "{}", s.as_ref());
    }

    fn json(&mut self, v: &Value) {
        let _ = writeln!(
            self.out,
            "{}",
            serde_json::to_string_pretty(v).expect("JSON values serialize")
        );
    }

    fn diag(&mut self, s: impl AsRef<str>) {
        let _ = writeln!(self.err, "{}", s.as_ref());
    }

    fn verdict(&mut self, passed: bool) -> i32 {
        if passed {
            EXIT_OK
        } else {
            EXIT_FAIL
        }
    }
}

pub fn run_with(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let mode: Mode = cli.mode.into();
    let mut o = Output {
        out,
        err,
        format: cli.format,
    };
    match cli.command {
        Command::Present { n } => present(&mut o, n, mode),
        Command::Qmul { left, right, n } => qmul(&mut o, &left, &right, n, mode),
        Command::Basis { n } => basis(&mut o, n),
        Command::Invariants => invariants(&mut o),
        Command::Threefold { what: ThreefoldWhat::Cords } => threefold_cords(&mut o),
        Command::Threefold { what: ThreefoldWhat::Fibres } => threefold_fibres(&mut o),
        Command::Check { name } => match name {
            CheckName::Corollary1 => check_corollary(&mut o),
            CheckName::Associativity => check_assoc(&mut o),
            CheckName::Grading => check_grade(&mut o),
            CheckName::Keel => check_keel(&mut o),
            CheckName::Cone => check_cone(&mut o),
        },
        Command::Report { what: ReportWhat::Discrepancies } => report(&mut o),
    }
}

fn present(o: &mut Output, n: u8, mode: Mode) -> i32 {
    let p = match relations_for(n, mode) {
        Ok(p) => p,
        Err(e) => {
            o.diag(format!("error: {e}"));
            return EXIT_USAGE;
        }
    };
    match o.format {
        Format::Text => o.text(p.to_canonical_text()),
        Format::Json => o.json(&serde_json::to_value(p.to_json()).expect("serializable")),
    }
    EXIT_OK
}

/// A divisor literal, or `d{i,j}` resolved through the `n = 5` dictionary.
fn parse_class(s: &str, n: u8) -> Result<SurfaceClass, String> {
    if s.starts_with("d{") {
        if n != 5 {
            return Err(format!("boundary classes need --n 5, got --n {n}"));
        }
        let delta = BoundaryIndex::parse(5, s).map_err(|e| e.to_string())?;
        return dictionary_image(&delta).map_err(|e| e.to_string());
    }
    s.parse::<SurfaceClass>().map_err(|e| e.to_string())
}

fn qmul(o: &mut Output, left: &str, right: &str, n: u8, mode: Mode) -> i32 {
    let (a, b) = match (parse_class(left, n), parse_class(right, n)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            o.diag(format!("error: {e}"));
            return EXIT_USAGE;
        }
    };
    let product = qmul_divisors(mode, &a, &b);
    match o.format {
        Format::Text => o.text(product.to_string()),
        Format::Json => o.json(&json!({
            "mode": mode.to_string(),
            "left": a.to_string(),
            "right": b.to_string(),
            "terms": qclass_json(&product),
        })),
    }
    EXIT_OK
}

fn basis(o: &mut Output, n: u8) -> i32 {
    let b = match pic_basis(n) {
        Ok(b) => b,
        Err(e) => {
            o.diag(format!("error: {e}"));
            return EXIT_USAGE;
        }
    };
    let names: Vec<String> = b.elements.iter().map(ToString::to_string).collect();
    match o.format {
        Format::Text => {
            for name in &names {
                o.line(name);
            }
        }
        Format::Json => o.json(&json!({ "n": n, "basis": names })),
    }
    EXIT_OK
}

fn literal_support() -> Vec<SurfaceClass> {
    let mut classes: BTreeSet<SurfaceClass> = (1..=4).map(SurfaceClass::exceptional).collect();
    for a in 1..=2 {
        for mask in 0u8..16 {
            let eps = std::array::from_fn(|i| i64::from((mask >> i) & 1));
            classes.insert(SurfaceClass::new(a, eps));
        }
    }
    classes.into_iter().filter(is_effective).collect()
}

fn invariants(o: &mut Output) -> i32 {
    let insertions: Vec<(&str, Insertion)> = vec![
        ("1", Insertion::Fundamental),
        ("H", Insertion::Divisor(SurfaceClass::H)),
        ("E1", Insertion::Divisor(SurfaceClass::exceptional(1))),
        ("E2", Insertion::Divisor(SurfaceClass::exceptional(2))),
        ("E3", Insertion::Divisor(SurfaceClass::exceptional(3))),
        ("E4", Insertion::Divisor(SurfaceClass::exceptional(4))),
        ("pt", Insertion::Point),
    ];
    let mut literal = Vec::new();
    for beta in literal_support() {
        for (name, t) in &insertions {
            let v = one_point_literal(&beta, t).expect("support classes are effective");
            if v != num_zero() {
                literal.push((beta, *name, v));
            }
        }
    }
    let mut strict = Vec::new();
    for k in 1..=4 {
        for beta in classes_of_anticanonical_degree(k) {
            let v = base_count(&beta, (k - 1) as u32).expect("dimension-matched query");
            if v != num_zero() {
                strict.push((beta, k - 1, v));
            }
        }
    }
    let q = |b: &SurfaceClass| q_name(b).expect("effective");
    match o.format {
        Format::Text => {
            o.line("# literal one-point invariants I_beta(T)");
            for (beta, name, v) in &literal {
                o.line(format!("{} {} {}", q(beta), name, v));
            }
            o.line("# strict counts N_beta through -K.beta - 1 points");
            for (beta, m, v) in &strict {
                o.line(format!("{} {} {}", q(beta), m, v));
            }
        }
        Format::Json => o.json(&json!({
            "literal": literal.iter().map(|(b, n, v)| json!({
                "q": q(b), "insertion": n, "value": v.to_string(),
            })).collect::<Vec<_>>(),
            "strict": strict.iter().map(|(b, m, v)| json!({
                "q": q(b), "points": m, "count": v.to_string(),
            })).collect::<Vec<_>>(),
        })),
    }
    EXIT_OK
}

fn num_zero() -> qcoh::Rational {
    qcoh::Rational::from_integer(0.into())
}

fn threefold_cords(o: &mut Output) -> i32 {
    let mut rows = Vec::new();
    for (a, b) in cords() {
        match cord_anticanonical_degree(a, b) {
            Ok(d) => rows.push((a, b, d)),
            Err(e) => {
                o.diag(format!("error: cord {a}{b}: {e}"));
                return EXIT_FAIL;
            }
        }
    }
    match o.format {
        Format::Text => {
            for (a, b, d) in &rows {
                o.line(format!("l{{{a},{b}}} {d}"));
            }
        }
        Format::Json => o.json(&json!(rows
            .iter()
            .map(|(a, b, d)| json!({ "pair": [a, b], "degree": d }))
            .collect::<Vec<_>>())),
    }
    let passed = rows.iter().all(|r| r.2 == 0);
    if !passed {
        o.diag("some cord has nonzero anticanonical degree");
    }
    o.verdict(passed)
}

fn threefold_fibres(o: &mut Output) -> i32 {
    let rows: Vec<(u32, i64)> = (1..=3)
        .map(|d| (d, exceptional_fiber_invariant(d).expect("positive multiplicity")))
        .collect();
    match o.format {
        Format::Text => {
            for (d, v) in &rows {
                o.line(format!("I_{{{d}F}} {v}"));
            }
        }
        Format::Json => o.json(&json!(rows
            .iter()
            .map(|(d, v)| json!({ "d": d, "invariant": v }))
            .collect::<Vec<_>>())),
    }
    EXIT_OK
}

fn check_corollary(o: &mut Output) -> i32 {
    let checks = check_corollary1();
    for c in &checks {
        if c.matches() {
            o.line(format!("{} MATCH", c.name));
        } else {
            o.line(format!("{} MISMATCH", c.name));
            o.diag(format!("expected:\n{}actual:\n{}", c.expected, c.actual));
        }
    }
    o.verdict(checks.iter().all(|c| c.matches()))
}

fn check_assoc(o: &mut Output) -> i32 {
    let report = check_associativity_strict();
    o.line(format!("{}/{} triples associative", report.passed(), report.checked));
    for f in &report.failures {
        let names: Vec<&str> = f.triple.iter().map(|b| b.name()).collect();
        o.diag(format!("associator ({}):\n{}", names.join(", "), f.difference));
    }
    o.verdict(report.is_associative())
}

fn check_grade(o: &mut Output) -> i32 {
    let strict = check_grading(Mode::Strict);
    o.line(format!(
        "strict: {} pairs, {} violations",
        strict.pairs_checked,
        strict.violations.len()
    ));
    for v in &strict.violations {
        o.diag(format!("strict violation: {v}"));
    }
    let literal = check_grading(Mode::Literal);
    o.line(format!(
        "literal: {} pairs, {} violations (expected)",
        literal.pairs_checked,
        literal.violations.len()
    ));
    for v in &literal.violations {
        o.line(format!("  {v}"));
    }
    let flagged = literal.violations.iter().any(|v| {
        v.left == "d{2,3}" && v.right == "d{3,4}" && v.exponent == SurfaceClass::H
    });
    if !flagged {
        o.diag("literal report does not flag q^{1,(0,0,0,0)} on d{2,3} * d{3,4}");
    }
    o.verdict(strict.violations.is_empty() && flagged)
}

fn check_keel(o: &mut Output) -> i32 {
    let mut passed = true;
    for (a, b) in keel_vanishing_pairs_5() {
        let (x, y) = (
            dictionary_image(&a).expect("pair in B_5"),
            dictionary_image(&b).expect("pair in B_5"),
        );
        let v = qcoh::lattice::intersect(&x, &y);
        passed &= v == 0;
        o.line(format!("{a} . {b} = ({x}).({y}) = {v}"));
    }
    o.verdict(passed)
}

fn check_cone(o: &mut Output) -> i32 {
    let generators: BTreeSet<SurfaceClass> = GENERATORS.iter().copied().collect();
    let mut passed = true;
    let mut report = |o: &mut Output, name: &str, ok: bool, detail: String| {
        passed &= ok;
        o.line(format!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" }));
    };
    let minus_one = minus_one_curves();
    report(o, "(-1)-curves = generators", minus_one == generators, format!("{} classes", minus_one.len()));
    let deg1 = classes_of_anticanonical_degree(1);
    report(o, "degree 1 classes = generators", deg1 == generators, format!("{} classes", deg1.len()));
    let deg2 = classes_of_anticanonical_degree(2).len();
    report(o, "degree 2 class count = 15", deg2 == 15, format!("found {deg2}"));

    // every c in N^10 with sum c <= 6
    let mut checked = 0usize;
    let mut bad = 0usize;
    let mut c = [0i64; 10];
    fn walk(c: &mut [i64; 10], idx: usize, left: i64, f: &mut dyn FnMut(&[i64; 10])) {
        if idx == 10 {
            f(c);
            return;
        }
        for k in 0..=left {
            c[idx] = k;
            walk(c, idx + 1, left - k, f);
        }
        c[idx] = 0;
    }
    walk(&mut c, 0, 6, &mut |c| {
        let beta: SurfaceClass = c.iter().zip(GENERATORS).map(|(k, g)| g.scale(*k)).sum();
        let total: i64 = c.iter().sum();
        let lines: i64 = c[..6].iter().sum();
        checked += 1;
        if anticanonical_degree(&beta) != total || beta.d != lines {
            bad += 1;
        }
    });
    report(o, "degree identities for sum c <= 6", bad == 0, format!("{checked} combinations, {bad} failures"));
    if !passed {
        o.diag("cone check failed");
    }
    o.verdict(passed)
}

fn report(o: &mut Output) -> i32 {
    let report = discrepancy_report();
    match o.format {
        Format::Text => {
            for d in &report {
                o.text(d.to_text());
            }
        }
        Format::Json => o.json(&Value::Array(report.iter().map(|d| d.to_json()).collect())),
    }
    EXIT_OK
}
