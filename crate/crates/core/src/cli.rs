//! Command-line front end. Every subcommand parses its inputs, calls the
//! library and prints the library's own text formats, one item per line.
//!
//! Exit codes: 0 success, 1 usage or malformed input, 2 domain error
//! (including uncorrectable words), 3 budget exceeded.

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::codec::{self, EncodeMethod, MeggittMode, SyndromeTable, TABLE_BUDGET};
use crate::codes::{LinearCode, ModuleThetaCode, ProductTCode, DISTANCE_BUDGET};
use crate::construct::{self, SCAN_BUDGET};
use crate::duals::{self, HermitianContext};
use crate::embed::EmbeddingData;
use crate::error::{Error, Result};
use crate::field::{Automorphism, Elem, Field};
use crate::matrix::{Matrix, Vector};
use crate::replicate;
use crate::semilinear::SemiLinearMap;
use crate::skew_poly::SkewPoly;

/// Environment variable overriding every default enumeration budget.
pub const BUDGET_ENV: &str = "SKEWCODES_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "skewcodes", version, about = "Skew polynomial codes invariant under semilinear maps")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Enumeration budget; overrides the SKEWCODES_BUDGET variable.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Write the output to a file instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args, Debug, Clone)]
struct Ring {
    /// Field spec, e.g. `p=2,s=2,mod=x^2+x+1,gen=a`.
    #[arg(long)]
    field: String,
    /// Automorphism exponent: theta(a) = a^(p^t).
    #[arg(long, default_value_t = 0)]
    t: u32,
}

#[derive(clap::Args, Debug, Clone)]
struct CodeArg {
    /// Code descriptor file (`-` for stdin).
    #[arg(long)]
    code: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Euclidean,
    Quasi,
    Hermitian,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Poly,
    Matrix,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    PerComponent,
    Literal,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Period m of f with X^m - 1 = f q_f.
    Period {
        #[command(flatten)]
        ring: Ring,
        #[arg(long)]
        poly: String,
    },
    /// The matrix Q of the embedding for one polynomial.
    Qmatrix {
        #[command(flatten)]
        ring: Ring,
        #[arg(long)]
        poly: String,
    },
    /// The form B for one or more components and an optional C.
    Bmatrix {
        #[command(flatten)]
        ring: Ring,
        #[arg(long = "poly", required = true)]
        polys: Vec<String>,
        #[arg(long)]
        c: Option<String>,
    },
    /// Monic right divisors of a given degree.
    Divisors {
        #[command(flatten)]
        ring: Ring,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        degree: usize,
        /// Also list divisors with zero constant term.
        #[arg(long)]
        all: bool,
    },
    /// Builds a code descriptor from components `f=...; g=...`.
    Mkcode {
        #[command(flatten)]
        ring: Ring,
        #[arg(long = "comp", required = true)]
        comps: Vec<String>,
        #[arg(long)]
        c: Option<String>,
    },
    /// Systematic generator and parity-check matrices per component.
    Pcheck {
        #[command(flatten)]
        code: CodeArg,
    },
    /// Dual code with a report of the identities verified on it.
    Dual {
        #[command(flatten)]
        code: CodeArg,
        #[arg(long, value_enum)]
        kind: Kind,
    },
    /// Encodes comma-separated message lines.
    Encode {
        #[command(flatten)]
        code: CodeArg,
        #[arg(long, value_enum, default_value = "poly")]
        method: Method,
        /// Input file (default stdin).
        #[arg(long)]
        input: Option<String>,
    },
    /// Corrects received lines and prints the messages.
    Decode {
        #[command(flatten)]
        code: CodeArg,
        #[arg(long, value_enum, default_value = "per-component")]
        mode: Mode,
        /// Print corrected codewords instead of messages.
        #[arg(long)]
        codeword: bool,
        #[arg(long)]
        input: Option<String>,
    },
    /// Minimum distance of the code and of each component.
    Distance {
        #[command(flatten)]
        code: CodeArg,
    },
    /// Table of the best distance over all generators, `n,k,D` rows.
    Dtable {
        #[command(flatten)]
        ring: Ring,
        #[arg(long)]
        nmax: usize,
    },
    /// Scans the zero locus of F_h for seeds of invariant codes. The scan
    /// uses seeds over the fixed subfield and need not find every code.
    Construct {
        #[command(flatten)]
        ring: Ring,
        /// The matrix A of T = Theta ∘ A.
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        h: usize,
    },
    /// Recomputes the pinned worked examples and prints a pass/fail table.
    Replicate,
}

struct Out {
    text: String,
    json: Value,
    status: i32,
}

impl Out {
    fn ok(text: String, json: Value) -> Out {
        Out { text, json, status: 0 }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Budget { .. } => 3,
        Error::Parse(_) | Error::InvalidField(_) => 1,
        _ => 2,
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit status.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if code == 0 { write!(out, "{}", e.render()) } else { write!(err, "{}", e.render()) };
            return code;
        }
    };
    let budget = cli.budget.or_else(|| std::env::var(BUDGET_ENV).ok().and_then(|v| v.parse().ok()));
    let result = dispatch(&cli.cmd, budget, stdin);
    let res = match result {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    let body = if cli.json { format!("{}\n", serde_json::to_string_pretty(&res.json).unwrap_or_default()) } else { res.text };
    let written = match &cli.output {
        Some(p) => fs::write(p, body.as_bytes()).map_err(|e| e.to_string()),
        None => out.write_all(body.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return 2;
    }
    res.status
}

fn ring(r: &Ring) -> Result<(Field, Automorphism)> {
    let f = Field::parse_spec(&r.field)?;
    let th = Automorphism::new(&f, r.t);
    Ok((f, th))
}

fn read_source(path: &str, stdin: &mut dyn Read) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s).map_err(|e| Error::parse(e.to_string()))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Error::parse(format!("{path}: {e}")))
    }
}

fn load_code(c: &CodeArg, stdin: &mut dyn Read) -> Result<ProductTCode> {
    ProductTCode::parse_descriptor(&read_source(&c.code, stdin)?)
}

/// Comma-separated field elements.
pub fn format_vector(f: &Field, v: &[Elem]) -> String {
    v.iter().map(|&e| f.format(e)).collect::<Vec<_>>().join(",")
}

pub fn parse_vector(f: &Field, s: &str) -> Result<Vector> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| f.parse_element(x.trim())).collect()
}

fn lines(s: &str) -> impl Iterator<Item = &str> {
    s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn dispatch(cmd: &Cmd, budget: Option<u64>, stdin: &mut dyn Read) -> Result<Out> {
    let b = |d: u64| budget.unwrap_or(d);
    match cmd {
        Cmd::Period { ring: r, poly } => period(r, poly),
        Cmd::Qmatrix { ring: r, poly } => {
            let (_, th) = ring(r)?;
            let pd = SkewPoly::parse(&th, poly)?.monic()?.period()?;
            let q = crate::embed::q_matrix(&pd)?;
            Ok(Out::ok(format!("{}\n", q.to_text()), json!({"m": pd.m, "q": q.to_text()})))
        }
        Cmd::Bmatrix { ring: r, polys, c } => {
            let (f, th) = ring(r)?;
            let fs = polys.iter().map(|p| SkewPoly::parse(&th, p)).collect::<Result<Vec<_>>>()?;
            let n: usize = fs.iter().map(|p| p.degree().unwrap_or(0)).sum();
            let c = match c {
                Some(t) => Matrix::parse(&f, t)?,
                None => Matrix::identity(&f, n),
            };
            let ed = EmbeddingData::new(&fs, &c)?;
            let text = format!("{}\nrank={}\n", ed.b().to_text(), ed.rank());
            Ok(Out::ok(text, json!({"b": ed.b().to_text(), "rank": ed.rank()})))
        }
        Cmd::Divisors { ring: r, poly, degree, all } => {
            let (_, th) = ring(r)?;
            let f = SkewPoly::parse(&th, poly)?;
            let divs = f.right_divisors(*degree, *all, b(1 << 24))?;
            let mut text = String::new();
            let mut js = Vec::new();
            for (g, q) in &divs {
                text.push_str(&format!("g={g}; q={q}\n"));
                js.push(json!({"g": g.to_text(), "q": q.to_text()}));
            }
            Ok(Out::ok(text, json!({ "divisors": js })))
        }
        Cmd::Mkcode { ring: r, comps, c } => {
            let (f, th) = ring(r)?;
            let mut ms = Vec::new();
            for comp in comps {
                let (fp, gp) = split_component(comp)?;
                ms.push(ModuleThetaCode::new(&SkewPoly::parse(&th, &fp)?, &SkewPoly::parse(&th, &gp)?)?);
            }
            let n: usize = ms.iter().map(|m| m.n()).sum();
            let c = match c {
                Some(t) => Matrix::parse(&f, t)?,
                None => Matrix::identity(&f, n),
            };
            let code = ProductTCode::new(ms, c)?;
            let d = code.to_descriptor();
            Ok(Out::ok(d.clone(), json!({"descriptor": d, "n": code.n(), "k": code.k()})))
        }
        Cmd::Pcheck { code } => pcheck(&load_code(code, stdin)?),
        Cmd::Dual { code, kind } => dual(&load_code(code, stdin)?, *kind),
        Cmd::Encode { code, method, input } => {
            let code = load_code(code, stdin)?;
            let src = read_source(input.as_deref().unwrap_or("-"), stdin)?;
            let method = match method {
                Method::Poly => EncodeMethod::Polynomial,
                Method::Matrix => EncodeMethod::Matrix,
            };
            let f = code.field().clone();
            let mut text = String::new();
            let mut js = Vec::new();
            for l in lines(&src) {
                let cw = codec::encode(&parse_vector(&f, l)?, &code, method)?;
                let s = format_vector(&f, &cw);
                text.push_str(&s);
                text.push('\n');
                js.push(Value::String(s));
            }
            Ok(Out::ok(text, json!({ "codewords": js })))
        }
        Cmd::Decode { code, mode, codeword, input } => {
            let code = load_code(code, stdin)?;
            let src = read_source(input.as_deref().unwrap_or("-"), stdin)?;
            decode(&code, &src, *mode, *codeword, b(TABLE_BUDGET))
        }
        Cmd::Distance { code } => {
            let code = load_code(code, stdin)?;
            let d = code.linear_code()?.min_distance(b(DISTANCE_BUDGET))?;
            let comps = code
                .components()
                .iter()
                .map(|m| m.min_distance(b(DISTANCE_BUDGET)))
                .collect::<Result<Vec<_>>>()?;
            let cs = comps.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
            let text = format!("n={} k={} d={d}\ncomponents={cs}\n", code.n(), code.k());
            Ok(Out::ok(text, json!({"n": code.n(), "k": code.k(), "d": d, "components": comps})))
        }
        Cmd::Dtable { ring: r, nmax } => {
            let (_, th) = ring(r)?;
            let t = construct::distance_table(&th, *nmax, b(DISTANCE_BUDGET))?;
            let cells: Vec<Value> = t.cells.iter().map(|(&(n, k), d)| json!({"n": n, "k": k, "d": d})).collect();
            // Unknown cells are printed as `?`; the status still reports the budget.
            let status = if t.cells.values().any(Option::is_none) { 3 } else { 0 };
            Ok(Out { text: t.to_csv(), json: json!({"q": t.q, "t": t.theta_exponent, "cells": cells}), status })
        }
        Cmd::Construct { ring: r, matrix, h } => {
            let (f, th) = ring(r)?;
            let a = Matrix::parse(&f, matrix)?;
            construct_scan(&th, a, *h, b(SCAN_BUDGET))
        }
        Cmd::Replicate => {
            let checks = replicate::run_all();
            let mut text = String::new();
            let mut js = Vec::new();
            for c in &checks {
                text.push_str(&format!("{} {} {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail));
                js.push(json!({"name": c.name, "passed": c.passed, "detail": c.detail}));
            }
            let passed = checks.iter().all(|c| c.passed);
            Ok(Out { text, json: json!({ "checks": js }), status: if passed { 0 } else { 2 } })
        }
    }
}

fn split_component(s: &str) -> Result<(String, String)> {
    let mut f = None;
    let mut g = None;
    for part in s.split(';') {
        let part = part.trim();
        if let Some(v) = part.strip_prefix("f=") {
            f = Some(v.trim().to_string());
        } else if let Some(v) = part.strip_prefix("g=") {
            g = Some(v.trim().to_string());
        } else if !part.is_empty() {
            return Err(Error::parse(format!("expected f=...; g=..., got {part:?}")));
        }
    }
    match (f, g) {
        (Some(f), Some(g)) => Ok((f, g)),
        _ => Err(Error::parse("component needs both f= and g=")),
    }
}

fn period(r: &Ring, poly: &str) -> Result<Out> {
    let (_, th) = ring(r)?;
    let f = SkewPoly::parse(&th, poly)?.monic()?;
    let pd = f.period()?;
    let m_star = f.period_star()?;
    let cor = SkewPoly::corollary_checks(&pd)?;
    let text = format!(
        "m={}\nq_f={}\nm_star={m_star}\nq_f_fixed={}\norder_divides_m={}\n",
        pd.m, pd.q_f, cor.q_fixed, cor.order_divides_m
    );
    Ok(Out::ok(
        text,
        json!({
            "m": pd.m,
            "q_f": pd.q_f.to_text(),
            "m_star": m_star,
            "q_f_fixed": cor.q_fixed,
            "order_hypothesis": cor.m_hypothesis,
            "order_divides_m": cor.order_divides_m,
        }),
    ))
}

fn pcheck(code: &ProductTCode) -> Result<Out> {
    let mut text = String::new();
    let mut js = Vec::new();
    for (i, m) in code.components().iter().enumerate() {
        let pc = m.parity_check()?;
        let zero = pc.h.rows() == 0 || pc.g.mul(&pc.h.transpose())?.is_zero();
        let same = LinearCode::from_generator(&pc.g) == m.linear_code()?;
        text.push_str(&format!(
            "component {}\nG={}\nH={}\northogonal={zero}\nsame_code={same}\n",
            i + 1,
            pc.g.to_text(),
            pc.h.to_text()
        ));
        js.push(json!({"g": pc.g.to_text(), "h": pc.h.to_text(), "orthogonal": zero, "same_code": same}));
    }
    Ok(Out::ok(text, json!({ "components": js })))
}

fn dual(code: &ProductTCode, kind: Kind) -> Result<Out> {
    let lin = code.linear_code()?;
    let mut report: Vec<(&str, bool)> = Vec::new();
    let d = match kind {
        Kind::Euclidean => {
            let pd = duals::euclidean_dual_product(code)?;
            report.push(("product formula equals the orthogonal complement", pd.code == duals::euclidean_dual(&lin)));
            let t2 = duals::dual_invariance_map(&code.semilinear_map()?)?;
            report.push(("dual invariant under the transposed map", t2.is_invariant(pd.code.generator())?));
            pd.code
        }
        Kind::Quasi => {
            let ed = EmbeddingData::for_code(code)?;
            let d = duals::quasi_euclidean_dual(&lin, &ed)?;
            let perp = duals::euclidean_dual(&lin);
            let ker = ed.kernel_b();
            let inter = crate::matrix::intersect(lin.generator(), ker.generator())?.rows();
            report.push(("dim C* = dim C^perp + dim(C ∩ Ker B)", d.dim() == perp.dim() + inter));
            let dd = duals::quasi_euclidean_dual(&d, &ed)?;
            let ck = LinearCode::from_generator(&crate::matrix::sum(lin.generator(), ker.generator())?);
            report.push(("C** = C + Ker B", dd == ck));
            if ed.hermitian_condition() {
                let g = duals::quasi_dual_generator(code, &ed);
                report.push(("dual generator matches", g.is_ok()));
            }
            d
        }
        Kind::Hermitian => {
            let ed = EmbeddingData::for_code(code)?;
            let ctx = HermitianContext::new(ed.clone())?;
            let d = duals::hermitian_dual(code, &ctx)?;
            report.push(("equals the quasi-Euclidean dual", d == duals::quasi_euclidean_dual(&lin, &ed)?));
            d
        }
    };
    let mut text = format!("{}\n", d.generator().to_text());
    for (name, ok) in &report {
        text.push_str(&format!("{} {name}\n", if *ok { "verified" } else { "FAILED" }));
    }
    let rel: Vec<Value> = report.iter().map(|(n, ok)| json!({"identity": n, "holds": ok})).collect();
    let status = if report.iter().all(|r| r.1) { 0 } else { 2 };
    Ok(Out { text, json: json!({"generator": d.generator().to_text(), "dim": d.dim(), "relations": rel}), status })
}

fn decode(code: &ProductTCode, src: &str, mode: Mode, codeword: bool, budget: u64) -> Result<Out> {
    let f = code.field().clone();
    let table = SyndromeTable::build(code, budget)?;
    let mode = match mode {
        Mode::PerComponent => MeggittMode::PerComponent,
        Mode::Literal => MeggittMode::Literal,
    };
    let mut text = String::new();
    let mut js = Vec::new();
    for l in lines(src) {
        let (cw, e) = codec::meggitt_decode(&parse_vector(&f, l)?, code, &table, mode)?;
        let s = if codeword { format_vector(&f, &cw) } else { format_vector(&f, &codec::decode_plain(&cw, code)?) };
        text.push_str(&s);
        text.push('\n');
        js.push(json!({"output": s, "error": format_vector(&f, &e)}));
    }
    Ok(Out::ok(text, json!({ "decoded": js })))
}

fn construct_scan(th: &Automorphism, a: Matrix, h: usize, budget: u64) -> Result<Out> {
    let f = th.field().clone();
    let t = SemiLinearMap::new(th, a.clone())?;
    let zs = construct::zero_locus_scan(&a, th, h, budget)?;
    let mut text = String::new();
    let mut js = Vec::new();
    for z in &zs {
        let dims = z
            .fixed_kernel
            .row_vectors()
            .iter()
            .map(|v| construct::code_from_point(&t, v, h).map(|c| c.dim()))
            .collect::<Result<Vec<_>>>()?;
        let ds = dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
        text.push_str(&format!(
            "point=({}) kernel=[{}] seeds=[{}] dims=[{ds}]\n",
            format_vector(&f, &z.point),
            z.kernel.to_text(),
            z.fixed_kernel.to_text()
        ));
        js.push(json!({
            "point": format_vector(&f, &z.point),
            "kernel": z.kernel.to_text(),
            "seeds": z.fixed_kernel.to_text(),
            "dims": dims,
        }));
    }
    Ok(Out::ok(text, json!({ "zeros": js })))
}
