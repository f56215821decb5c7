use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use bezout_core::codec::{matrix_from_json, matrix_to_json, parse_ring, AnyRing, ElementCodec};
use bezout_core::factor::FactorDomain;
use bezout_core::matrix::{diagonal_reduce, reduce_2x2_triangular, verify_reduction, DiagonalReduction, Side, TriangularTrace};
use bezout_core::par::Execution;
use bezout_core::report::{classify, run_split, ClassifyRequest};
use bezout_core::structure::{comaximal_refinement, SplitKind};
use bezout_core::sweep::{run_sweep, SweepConfig, Theorem};
use bezout_core::{with_domain, Caps, FactorBudget, Ring, RingError};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "bezout", version, about = "Diagonal reduction and element structure over Bezout domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Enumeration cap for finite quotient rings.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    cap: u64,
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Emit an indented text rendering instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Run batch work on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Engine,
    #[value(name = "thm21")]
    Triangular,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Adequate,
    Avoidable,
    Gelfand,
    Semipotent,
}

impl From<Kind> for SplitKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Adequate => SplitKind::Adequate,
            Kind::Avoidable => SplitKind::Avoidable,
            Kind::Gelfand => SplitKind::Gelfand,
            Kind::Semipotent => SplitKind::Semipotent,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a matrix read from a JSON file {"ring": ..., "matrix": [[...]]}.
    Reduce {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "engine")]
        method: Method,
        /// Override the ring named in the file.
        #[arg(long)]
        ring: Option<String>,
    },
    /// Classify an element and report its quotient ring.
    #[command(allow_negative_numbers = true)]
    Classify {
        ring: String,
        element: String,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        c: Option<String>,
    },
    /// Factor an element into pairwise comaximal prime powers.
    #[command(allow_negative_numbers = true)]
    Comax { ring: String, element: String },
    /// Split an element relative to b (and c).
    #[command(allow_negative_numbers = true)]
    Split {
        ring: String,
        element: String,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: Option<String>,
    },
    /// Brute-force structure analysis of a finite quotient ring.
    AnalyzeRing { ring: String },
    /// Check the element/quotient equivalences over Z/a for a in a range.
    Verify {
        /// Comma-separated selectors; defaults to all.
        #[arg(long, value_delimiter = ',')]
        theorems: Vec<String>,
        /// Inclusive range lo..hi of moduli.
        #[arg(long, default_value = "2..200")]
        range: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Samples per randomized suite and per modulus for triple checks.
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
}

enum Failure {
    Input(String),
    Verification(String),
}

impl From<RingError> for Failure {
    fn from(e: RingError) -> Self {
        match e {
            RingError::TraceInvariantViolation(m) => Failure::Verification(m),
            e => Failure::Input(e.to_string()),
        }
    }
}

/// A report plus whether it records a theorem violation.
struct Outcome {
    report: Value,
    violation: bool,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome { report, violation: false }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = Caps::with_enumeration(cli.cap);
    let exec = if cli.sequential { Execution::Sequential } else { Execution::default() };
    let result = match &cli.command {
        Command::Reduce { file, method, ring } => cmd_reduce(file, *method, ring.as_deref()),
        Command::Classify { ring, element, b, c } => cmd_classify(ring, element, b.as_deref(), c.as_deref(), &caps),
        Command::Comax { ring, element } => cmd_comax(ring, element),
        Command::Split { ring, element, kind, b, c } => cmd_split(ring, element, (*kind).into(), b, c.as_deref(), &caps),
        Command::AnalyzeRing { ring } => cmd_analyze(ring, &caps),
        Command::Verify { theorems, range, seed, samples } => cmd_verify(theorems, range, *seed, *samples, caps, exec),
    };
    match result {
        Ok(out) => {
            let text = if cli.pretty { render_pretty(&out.report) } else { format!("{}\n", out.report) };
            let written = match &cli.out {
                Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if out.violation {
                eprintln!("theorem violations found");
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(2)
        }
    }
}

fn domain_only(what: &str, ring: &AnyRing) -> Failure {
    Failure::Input(format!("{what} needs a domain (Z, F<p>[x], Q[x]), got {}", ring.describe()))
}

fn parse_opt<R: ElementCodec>(ring: &R, s: Option<&str>) -> Result<Option<R::Elem>, Failure> {
    s.map(|s| ring.parse_elem(s).map(|x| ring.canonicalize(&x))).transpose().map_err(Failure::from)
}

fn cmd_reduce(file: &PathBuf, method: Method, ring_override: Option<&str>) -> Result<Outcome, Failure> {
    let text = std::fs::read_to_string(file).map_err(|e| Failure::Input(format!("cannot read {}: {e}", file.display())))?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| Failure::Input(format!("invalid JSON: {e}")))?;
    let desc = match ring_override {
        Some(r) => r.to_string(),
        None => doc.get("ring").and_then(Value::as_str).unwrap_or("Z").to_string(),
    };
    let matrix = doc.get("matrix").ok_or_else(|| Failure::Input("missing \"matrix\" field".into()))?;
    let any = parse_ring(&desc)?;
    with_domain!(&any, r => reduce_in(r, matrix, method), q => Err(domain_only("reduce", q)))
}

fn reduce_in<R: FactorDomain + ElementCodec>(ring: &R, matrix: &Value, method: Method) -> Result<Outcome, Failure> {
    let a = matrix_from_json(ring, matrix)?;
    let (red, trace, name) = match method {
        Method::Engine => {
            let red = diagonal_reduce(ring, &a)?;
            let cert = certificate_json(ring, &red);
            (red, cert, "engine")
        }
        Method::Triangular => {
            if a.rows() != 2 || a.cols() != 2 || !ring.is_zero(a.get(0, 1)) {
                return Err(Failure::Input("the triangular method expects a 2x2 matrix [[a, 0], [b, c]]".into()));
            }
            let (red, trace) = reduce_2x2_triangular(ring, a.get(0, 0), a.get(1, 0), a.get(1, 1))?;
            let bad = trace.violations(ring);
            if !bad.is_empty() {
                return Err(Failure::Verification(bad.join("; ")));
            }
            (red, trace_json(ring, &trace), "thm21")
        }
    };
    let bad = verify_reduction(ring, &a, &red);
    if !bad.is_empty() {
        return Err(Failure::Verification(bad.join("; ")));
    }
    Ok(Outcome::ok(json!({
        "schema": 1,
        "ring": ring.describe(),
        "method": name,
        "A": matrix_to_json(ring, &a),
        "P": matrix_to_json(ring, &red.p),
        "P_inv": matrix_to_json(ring, &red.p_inv),
        "D": matrix_to_json(ring, &red.d),
        "Q": matrix_to_json(ring, &red.q),
        "Q_inv": matrix_to_json(ring, &red.q_inv),
        "diagonal": red.d.diagonal().iter().map(|x| ring.elem_to_json(x)).collect::<Vec<_>>(),
        "verified": true,
        "trace": trace,
    })))
}

fn certificate_json<R: ElementCodec>(ring: &R, red: &DiagonalReduction<R::Elem>) -> Value {
    Value::Array(
        red.certificate
            .iter()
            .map(|t| {
                json!({
                    "side": if t.side == Side::Left { "left" } else { "right" },
                    "i": t.i,
                    "j": t.j,
                    "op": t.label,
                    "m": t.m.iter().map(|x| ring.elem_to_json(x)).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

fn trace_json<R: ElementCodec>(ring: &R, t: &TriangularTrace<R::Elem>) -> Value {
    let e = |x: &R::Elem| ring.elem_to_json(x);
    json!({
        "a": e(&t.a), "b": e(&t.b), "c": e(&t.c), "d": e(&t.d), "u": e(&t.u), "v": e(&t.v),
        "t": e(&t.t), "k": e(&t.k), "r": e(&t.r), "s": e(&t.s), "p": e(&t.p), "l": e(&t.l),
        "q": e(&t.q), "delta": e(&t.delta), "p1": e(&t.p1), "q1": e(&t.q1), "x": e(&t.x),
        "witness_gcd": e(&t.witness_gcd), "engine_agrees": t.engine_agrees,
    })
}

fn cmd_classify(ring: &str, element: &str, b: Option<&str>, c: Option<&str>, caps: &Caps) -> Result<Outcome, Failure> {
    if c.is_some() && b.is_none() {
        return Err(Failure::Input("--c requires --b".into()));
    }
    let any = parse_ring(ring)?;
    with_domain!(&any, r => {
        let req = ClassifyRequest { a: r.canonicalize(&r.parse_elem(element)?), b: parse_opt(r, b)?, c: parse_opt(r, c)? };
        let rep = classify(r, &req, caps, &FactorBudget::default())?;
        let violation = !rep.implication_violations().is_empty();
        Ok(Outcome { report: serde_json::to_value(&rep).expect("serializable"), violation })
    }, q => Err(domain_only("classify", q)))
}

fn cmd_comax(ring: &str, element: &str) -> Result<Outcome, Failure> {
    let any = parse_ring(ring)?;
    with_domain!(&any, r => {
        let a = r.canonicalize(&r.parse_elem(element)?);
        let budget = FactorBudget::default();
        let f = comaximal_refinement(r, &a, &budget)?;
        let bad = f.violations(r, &budget);
        if !bad.is_empty() {
            return Err(Failure::Verification(bad.join("; ")));
        }
        Ok(Outcome::ok(json!({
            "schema": 1,
            "ring": r.describe(),
            "element": r.format(&a),
            "unit": r.format(&f.unit),
            "factors": f.factors.iter().map(|x| r.format(x)).collect::<Vec<_>>(),
        })))
    }, q => Err(domain_only("comax", q)))
}

fn cmd_split(ring: &str, element: &str, kind: SplitKind, b: &str, c: Option<&str>, caps: &Caps) -> Result<Outcome, Failure> {
    let any = parse_ring(ring)?;
    with_domain!(&any, r => {
        let a = r.canonicalize(&r.parse_elem(element)?);
        let b = r.canonicalize(&r.parse_elem(b)?);
        let c = parse_opt(r, c)?;
        let w = run_split(r, kind, &a, &b, c.as_ref(), caps)?;
        let mut v = serde_json::to_value(&w).expect("serializable");
        v.as_object_mut().expect("object").insert("schema".into(), json!(1));
        v.as_object_mut().expect("object").insert("ring".into(), json!(r.describe()));
        Ok(Outcome::ok(v))
    }, q => Err(domain_only("split", q)))
}

fn cmd_analyze(ring: &str, caps: &Caps) -> Result<Outcome, Failure> {
    let any = parse_ring(ring)?;
    let fr = match &any {
        AnyRing::Zn(q) => q.finite_ring(caps),
        AnyRing::FpMod(q) => q.finite_ring(caps),
        AnyRing::QxMod(q) => q.finite_ring(caps),
        other => return Err(Failure::Input(format!("analyze-ring needs a quotient ring, got {}", other.describe()))),
    }?;
    let rep = fr.with_quadratic_cap(caps.quadratic).analyze();
    let bad = rep.implication_violations();
    let mut v = serde_json::to_value(&rep).expect("serializable");
    let obj = v.as_object_mut().expect("object");
    obj.insert("schema".into(), json!(1));
    obj.insert("implication_violations".into(), json!(bad));
    Ok(Outcome { report: v, violation: !bad.is_empty() })
}

fn parse_range(s: &str) -> Result<(u64, u64), Failure> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| Failure::Input(format!("range must look like lo..hi, got {s:?}")))?;
    let num = |x: &str| x.trim().parse::<u64>().map_err(|_| Failure::Input(format!("invalid range bound {x:?}")));
    let (lo, hi) = (num(lo)?, num(hi)?);
    if lo > hi {
        return Err(Failure::Input(format!("empty range {lo}..{hi}")));
    }
    Ok((lo, hi))
}

fn cmd_verify(theorems: &[String], range: &str, seed: u64, samples: usize, caps: Caps, execution: Execution) -> Result<Outcome, Failure> {
    let (lo, hi) = parse_range(range)?;
    let theorems = if theorems.is_empty() {
        Theorem::ALL.to_vec()
    } else {
        theorems.iter().map(|t| Theorem::parse(t)).collect::<Result<Vec<_>, _>>()?
    };
    let cfg = SweepConfig { theorems, lo, hi, caps, seed, samples, execution };
    let rep = run_sweep(&cfg)?;
    Ok(Outcome { violation: rep.total_violations > 0, report: serde_json::to_value(&rep).expect("serializable") })
}

fn render_pretty(v: &Value) -> String {
    let mut out = String::new();
    render_into(&mut out, v, 0);
    out
}

fn render_into(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if is_scalar(x) {
                    let _ = writeln!(out, "{pad}{k}: {}", scalar(x));
                } else {
                    let _ = writeln!(out, "{pad}{k}:");
                    render_into(out, x, depth + 1);
                }
            }
        }
        Value::Array(items) if items.iter().all(is_scalar) => {
            let _ = writeln!(out, "{pad}[{}]", items.iter().map(scalar).collect::<Vec<_>>().join(", "));
        }
        Value::Array(items) => {
            for x in items {
                if x.is_array() && x.as_array().is_some_and(|r| r.iter().all(is_scalar)) {
                    let _ = writeln!(out, "{pad}- [{}]", x.as_array().expect("array").iter().map(scalar).collect::<Vec<_>>().join(", "));
                } else {
                    let _ = writeln!(out, "{pad}-");
                    render_into(out, x, depth + 1);
                }
            }
        }
        x => {
            let _ = writeln!(out, "{pad}{}", scalar(x));
        }
    }
}

fn is_scalar(v: &Value) -> bool {
    match v {
        Value::Object(m) => m.is_empty(),
        Value::Array(a) => a.is_empty(),
        _ => true,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(_) => "[]".into(),
        Value::Object(_) => "{}".into(),
        x => x.to_string(),
    }
}
