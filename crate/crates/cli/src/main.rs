//! `linpow`: Betti numbers of powers of monomial ideals, Rees ideal
//! generator degrees, and graph utilities.
//!
//! Exit codes: 0 success, 2 mathematical refutation (a check came out
//! false), 3 resource cap exceeded, 4 input error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use linpow::betti_oracle::{
    certification_jmax, koszul_betti_with, kpoly_betti, BettiTable, BettiVector, OracleConfig, DEFAULT_STRAND_CAP,
};
use linpow::families::{discrepancies, FamilySpec};
use linpow::graphs::{
    chordality, complement, edge_ideal, ferrers_check, froberg_linear, BipartiteGraph, Chordality, FerrersCheck,
    SimpleGraph,
};
use linpow::monomials::MonomialIdeal;
use linpow::rees::{
    default_bound, minimal_generator_degrees_with, parse_degree_set, BiDegree, ReesConfig,
    DEFAULT_COMPONENT_CAP,
};
use linpow::Error;

#[derive(Parser, Debug)]
#[command(name = "linpow", version, about = "Betti numbers of powers of monomial ideals and Rees ideal generators")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Compute every rank exactly instead of modulo two large primes.
    #[arg(long, global = true)]
    verify_exact: bool,

    /// Budget of nonzero entries per Koszul strand.
    #[arg(long, global = true, env = "LINPOW_STRAND_CAP", default_value_t = DEFAULT_STRAND_CAP)]
    strand_cap: usize,

    /// Maximum number of monomials in one Rees component.
    #[arg(long, global = true, env = "LINPOW_COMPONENT_CAP", default_value_t = DEFAULT_COMPONENT_CAP)]
    component_cap: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Hilbert numerator, with linearity certified by Koszul homology.
    Oracle,
    /// Full graded Betti table from Koszul homology.
    Koszul,
    /// Closed form for a recognized family.
    Family,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Betti numbers of S/I^k.
    Betti {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, value_enum, default_value_t = Mode::Oracle)]
        mode: Mode,
        /// Top degree for the Koszul computation (default: generator degree + n).
        #[arg(long)]
        jmax: Option<u32>,
        /// Skip the Koszul linearity certificate in oracle mode.
        #[arg(long)]
        no_certify: bool,
    },
    /// Betti numbers of a family as polynomials in k.
    BettiPoly {
        #[arg(long)]
        family: FamilySpec,
        /// Only this homological degree.
        #[arg(long)]
        i: Option<usize>,
        /// Fit through k = kmin..=kmax and check at kmax + 1 (default 1..=n).
        #[arg(long)]
        kmin: Option<u32>,
        #[arg(long)]
        kmax: Option<u32>,
    },
    /// Minimal generator bidegrees of the Rees ideal inside a box.
    Rees {
        #[command(flatten)]
        src: Source,
        /// Box `a,b` (default: twice the generator degree, 4).
        #[arg(long)]
        bound: Option<BiDegree>,
        /// Degree set to test, e.g. `(0,2),(1,1)`.
        #[arg(long)]
        check: Option<String>,
    },
    /// Test a predicate: polymatroidal, sep, linear, linear-powers:K, fiber-type[:A,B].
    Check {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        predicate: String,
    },
    /// Graph utilities.
    Graph {
        #[command(subcommand)]
        op: GraphOp,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// Built-in family, e.g. `squarefree:n=4,d=2` or `transversal:n=4,s=2`.
    #[arg(long)]
    family: Option<FamilySpec>,
    /// Ideal file (text or JSON).
    #[arg(long)]
    ideal: Option<PathBuf>,
    /// Graph file (edge list or JSON); its edge ideal is used.
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum GraphOp {
    /// Complementary graph.
    Complement {
        #[arg(long)]
        input: PathBuf,
    },
    /// Chordality with a certificate; exits 2 when not chordal.
    Chordal {
        #[arg(long)]
        input: PathBuf,
    },
    /// Ferrers recognition of a bipartite graph; exits 2 when not Ferrers.
    Ferrers {
        #[arg(long, required_unless_present = "rows")]
        input: Option<PathBuf>,
        /// Build the Ferrers graph with these row lengths instead, e.g. `3,2,1`.
        #[arg(long, value_delimiter = ',', conflicts_with = "input")]
        rows: Option<Vec<usize>>,
    },
    /// Edge ideal, with the linearity prediction from the complement.
    EdgeIdeal {
        #[arg(long)]
        input: PathBuf,
    },
}

/// Settings shared by every command.
struct RunConfig {
    format: Format,
    oracle: OracleConfig,
    rees: ReesConfig,
}

enum Failure {
    Input(String),
    Math(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Math(e)
    }
}

struct Outcome {
    json: Value,
    text: String,
    refuted: bool,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Self {
        Outcome { json, text, refuted: false }
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_graph(path: &PathBuf) -> Result<SimpleGraph, Failure> {
    SimpleGraph::parse_any(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Base ideal and a label for it.
fn load(src: &Source) -> Result<(MonomialIdeal, String), Failure> {
    if let Some(spec) = src.family {
        return Ok((spec.ideal()?, spec.to_string()));
    }
    if let Some(path) = &src.ideal {
        let text = read(path)?;
        let parsed = if text.trim_start().starts_with('{') {
            MonomialIdeal::parse_json(&text)
        } else {
            MonomialIdeal::parse_text(&text)
        };
        let ideal = parsed.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        return Ok((ideal.clone(), ideal.to_string()));
    }
    let path = src.graph.as_ref().expect("clap enforces one source");
    let ideal = edge_ideal(&load_graph(path)?);
    Ok((ideal.clone(), ideal.to_string()))
}

fn betti_json(v: &BettiVector) -> Value {
    json!(v.values())
}

fn cmd_betti(cfg: &RunConfig, src: &Source, k: u32, mode: Mode, jmax: Option<u32>, no_certify: bool) -> Result<Outcome, Failure> {
    if k == 0 {
        return Err(Failure::Input("--k must be positive".into()));
    }
    let (base, label) = load(src)?;
    let power = base.power(k)?;
    let d = power.max_gen_degree();
    let koszul = |jmax: Option<u32>| -> Result<BettiTable, Failure> {
        Ok(koszul_betti_with(&power, jmax.unwrap_or_else(|| certification_jmax(&power)), &cfg.oracle)?)
    };
    let (beta, linear, table, method) = match mode {
        Mode::Family => {
            let spec = src.family.ok_or_else(|| Failure::Input("--mode family needs --family".into()))?;
            let v = spec
                .closed_form_checked(k)?
                .ok_or_else(|| Failure::Input(format!("no closed form is known for {spec}")))?;
            (v, Some(true), None, "closed form")
        }
        Mode::Koszul => {
            let t = koszul(jmax)?;
            let lin = power.is_equigenerated().is_some() && t.is_linear_in(d);
            (t.totals(), Some(lin), Some(t), "Koszul homology")
        }
        Mode::Oracle => {
            let v = kpoly_betti(&power)?;
            let lin = if no_certify { None } else { Some(koszul(jmax)?.is_linear_in(d)) };
            (v, lin, None, "Hilbert numerator")
        }
    };
    let refuted = linear == Some(false) && mode == Mode::Oracle;
    let mut json = json!({
        "ideal": label,
        "k": k,
        "mode": format!("{mode:?}").to_lowercase(),
        "method": method,
        "betti": betti_json(&beta),
        "linear": linear,
    });
    let mut text = format!("ideal: {label}\nk: {k}\nmethod: {method}\nbetti: {beta}\n");
    match linear {
        Some(true) => text.push_str("linear resolution: yes\n"),
        Some(false) => text.push_str("linear resolution: no\n"),
        None => text.push_str("linear resolution: not certified\n"),
    }
    if refuted {
        text.push_str("the numerator has linear shape but the resolution is not linear; the betti line is not valid\n");
    }
    if let Some(t) = table {
        json["table"] = serde_json::to_value(&t).expect("table serializes");
        text.push_str(&t.to_string());
    }
    Ok(Outcome { json, text, refuted })
}

fn cmd_betti_poly(spec: FamilySpec, i: Option<usize>, kmin: Option<u32>, kmax: Option<u32>) -> Result<Outcome, Failure> {
    let n = spec.nvars();
    if let Some(i) = i {
        if i == 0 || i > n {
            return Err(Failure::Input(format!("--i must be in 1..={n}")));
        }
    }
    let lo = kmin.unwrap_or(1);
    let hi = kmax.unwrap_or(lo + n as u32 - 1);
    if lo == 0 || hi < lo {
        return Err(Failure::Input("k range must be nonempty and start at 1 or more".into()));
    }
    let fitted = linpow::betti_oracle::betti_fit_all(move |k| spec.power(k), lo..=hi)?;
    let closed = spec.closed_form_poly()?;
    let agrees = closed.as_ref().map(|c| *c == fitted);
    let wanted: Vec<usize> = match i {
        Some(i) => vec![i],
        None => (1..=n).collect(),
    };
    let polys: Vec<Value> = wanted.iter().map(|&i| json!({"i": i, "poly": fitted[i - 1].to_string()})).collect();
    let flags = discrepancies(&spec)?;
    let json = json!({
        "family": spec.to_string(),
        "fit_range": [lo, hi],
        "held_out": hi + 1,
        "polys": polys,
        "closed_form_agrees": agrees,
        "discrepancies": flags,
    });
    let mut text = format!("family: {spec}\nfitted on k = {lo}..={hi}, checked at k = {}\n", hi + 1);
    for &i in &wanted {
        text.push_str(&format!("beta_{i}(k) = {}\n", fitted[i - 1]));
    }
    match agrees {
        Some(true) => text.push_str("closed form: agrees\n"),
        Some(false) => text.push_str("closed form: DISAGREES\n"),
        None => text.push_str("closed form: none known\n"),
    }
    for f in &flags {
        text.push_str(&format!("note: {} printed {} adopted {} ({})\n", f.quantity, f.printed, f.adopted, f.evidence));
    }
    Ok(Outcome { json, text, refuted: agrees == Some(false) })
}

fn cmd_rees(cfg: &RunConfig, src: &Source, bound: Option<BiDegree>, check: Option<&str>) -> Result<Outcome, Failure> {
    let (ideal, label) = load(src)?;
    let set = check.map(parse_degree_set).transpose().map_err(|e| Failure::Input(e.to_string()))?;
    let bound = bound.unwrap_or_else(|| default_bound(&ideal));
    let mut report = minimal_generator_degrees_with(&ideal, bound, &cfg.rees)?;
    report.ideal = label;
    let refuted = match &set {
        Some(s) => !report.check(s).pass,
        None => false,
    };
    let json = serde_json::to_value(&report).expect("report serializes");
    Ok(Outcome { json, text: report.to_string(), refuted })
}

fn cmd_check(cfg: &RunConfig, src: &Source, predicate: &str) -> Result<Outcome, Failure> {
    let (ideal, label) = load(src)?;
    let (name, arg) = match predicate.split_once(':') {
        Some((a, b)) => (a, Some(b)),
        None => (predicate, None),
    };
    let (holds, diagnostic): (bool, Option<String>) = match (name, arg) {
        ("polymatroidal", None) => match ideal.polymatroidal_violation() {
            None if ideal.is_equigenerated().is_some() => (true, None),
            None => (false, Some("generators have different degrees".into())),
            Some(v) => (false, Some(v.to_string())),
        },
        ("sep", None) => match ideal.sep_violation() {
            None if ideal.is_equigenerated().is_some() => (true, None),
            None => (false, Some("generators have different degrees".into())),
            Some(v) => (false, Some(v.to_string())),
        },
        ("linear", None) => linear_check(cfg, &ideal, 1)?,
        ("linear-powers", Some(k)) => {
            let k: u32 = k.parse().ok().filter(|&k| k >= 1).ok_or_else(|| Failure::Input(format!("bad K in {predicate:?}")))?;
            let mut out = (true, None);
            for j in 1..=k {
                let (ok, diag) = linear_check(cfg, &ideal, j)?;
                if !ok {
                    out = (false, Some(format!("power {j}: {}", diag.unwrap_or_default())));
                    break;
                }
            }
            out
        }
        ("fiber-type", b) => {
            let bound = match b {
                Some(b) => b.parse().map_err(|e: Error| Failure::Input(e.to_string()))?,
                None => default_bound(&ideal),
            };
            let r = minimal_generator_degrees_with(&ideal, bound, &cfg.rees)?;
            match r.generator_degrees.keys().find(|d| d.a != 0 && d.b != 1) {
                None => (true, Some(format!("up to bound {bound}"))),
                Some(d) => (false, Some(format!("minimal generator at {d}, bound {bound}"))),
            }
        }
        _ => return Err(Failure::Input(format!("unknown predicate {predicate:?}"))),
    };
    let json = json!({"ideal": label, "predicate": predicate, "holds": holds, "diagnostic": diagnostic});
    let mut text = format!("ideal: {label}\n{predicate}: {}\n", if holds { "true" } else { "false" });
    if let Some(d) = &diagnostic {
        text.push_str(&format!("{d}\n"));
    }
    Ok(Outcome { json, text, refuted: !holds })
}

fn linear_check(cfg: &RunConfig, ideal: &MonomialIdeal, k: u32) -> Result<(bool, Option<String>), Failure> {
    let p = ideal.power(k)?;
    let Some(d) = p.is_equigenerated() else {
        return Ok((false, Some("generators have different degrees".into())));
    };
    let t = koszul_betti_with(&p, certification_jmax(&p), &cfg.oracle)?;
    if t.is_linear_in(d) {
        return Ok((true, None));
    }
    let (i, j) = t
        .entries()
        .map(|(key, _)| key)
        .find(|&(i, j)| i >= 1 && j != d + i as u32 - 1)
        .expect("a nonlinear entry exists");
    Ok((false, Some(format!("beta_{{{i},{j}}} = {} is off the linear strand", t.get(i, j)))))
}

fn cmd_graph(op: &GraphOp) -> Result<Outcome, Failure> {
    let one_based = |v: &[usize]| v.iter().map(|x| x + 1).collect::<Vec<_>>();
    match op {
        GraphOp::Complement { input } => {
            let g = complement(&load_graph(input)?);
            Ok(Outcome::ok(serde_json::to_value(g.to_json()).expect("graph serializes"), g.to_text()))
        }
        GraphOp::Chordal { input } => {
            let g = load_graph(input)?;
            let c = chordality(&g);
            let (json, text) = match &c {
                Chordality::Chordal { peo } => (
                    json!({"chordal": true, "peo": one_based(peo)}),
                    format!("chordal: true\nperfect elimination ordering: {:?}\n", one_based(peo)),
                ),
                Chordality::NotChordal { cycle } => (
                    json!({"chordal": false, "chordless_cycle": one_based(cycle)}),
                    format!("chordal: false\nchordless cycle: {:?}\n", one_based(cycle)),
                ),
            };
            Ok(Outcome { json, text, refuted: !c.is_chordal() })
        }
        GraphOp::Ferrers { input, rows } => {
            let b = match (input, rows) {
                (_, Some(rows)) => BipartiteGraph::ferrers(rows).map_err(|e| Failure::Input(e.to_string()))?,
                (Some(path), None) => {
                    BipartiteGraph::parse_text(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
                }
                (None, None) => unreachable!("clap requires one of them"),
            };
            let c = ferrers_check(&b);
            let (json, text) = match &c {
                FerrersCheck::Ferrers { left_order, rows } => (
                    json!({"ferrers": true, "left_order": one_based(left_order), "rows": rows}),
                    format!("ferrers: true\nleft order: {:?}\nrow lengths: {rows:?}\n", one_based(left_order)),
                ),
                FerrersCheck::Incomparable { u, v } => (
                    json!({"ferrers": false, "incomparable": [u + 1, v + 1]}),
                    format!("ferrers: false\nneighbourhoods of left vertices {} and {} are incomparable\n", u + 1, v + 1),
                ),
            };
            Ok(Outcome { json, text, refuted: !c.is_ferrers() })
        }
        GraphOp::EdgeIdeal { input } => {
            let g = load_graph(input)?;
            let i = edge_ideal(&g);
            let lin = froberg_linear(&g);
            let json = json!({"ideal": i.to_json(), "generators": i.to_string(), "linear_by_complement": lin});
            let text = format!("{}# linear resolution (complement chordal): {lin}\n", i.to_text());
            Ok(Outcome::ok(json, text))
        }
    }
}

fn failure_code(e: &Error) -> u8 {
    match e {
        Error::ResourceCap { .. } => 3,
        Error::Parse(_) | Error::InvalidArgument(_) | Error::InconsistentLength { .. } => 4,
        Error::NotLinearShape(_) | Error::HeldOutMismatch { .. } | Error::ClosedFormMismatch(_) => 2,
        _ => 1,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::ResourceCap { .. } => "resource_cap",
        Error::Parse(_) | Error::InvalidArgument(_) | Error::InconsistentLength { .. } => "input",
        Error::NotLinearShape(_) => "not_linear_shape",
        Error::HeldOutMismatch { .. } => "held_out_mismatch",
        Error::ClosedFormMismatch(_) => "closed_form_mismatch",
        _ => "internal",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.strand_cap == 0 || cli.component_cap == 0 {
        eprintln!("caps must be positive");
        return ExitCode::from(4);
    }
    let cfg = RunConfig {
        format: cli.format,
        oracle: OracleConfig { strand_cap: cli.strand_cap, verify_exact: cli.verify_exact },
        rees: ReesConfig { component_cap: cli.component_cap },
    };
    let result = match &cli.command {
        Command::Betti { src, k, mode, jmax, no_certify } => cmd_betti(&cfg, src, *k, *mode, *jmax, *no_certify),
        Command::BettiPoly { family, i, kmin, kmax } => cmd_betti_poly(*family, *i, *kmin, *kmax),
        Command::Rees { src, bound, check } => cmd_rees(&cfg, src, *bound, check.as_deref()),
        Command::Check { src, predicate } => cmd_check(&cfg, src, predicate),
        Command::Graph { op } => cmd_graph(op),
    };
    match result {
        Ok(out) => {
            match cfg.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json")),
                Format::Table => print!("{}", out.text),
            }
            ExitCode::from(if out.refuted { 2 } else { 0 })
        }
        Err(Failure::Input(msg)) => {
            report_error(cfg.format, "input", &msg);
            ExitCode::from(4)
        }
        Err(Failure::Math(e)) => {
            report_error(cfg.format, error_kind(&e), &e.to_string());
            ExitCode::from(failure_code(&e))
        }
    }
}

fn report_error(format: Format, kind: &str, msg: &str) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&json!({"error": {"kind": kind, "message": msg}})).expect("json")),
        Format::Table => eprintln!("error ({kind}): {msg}"),
    }
}
