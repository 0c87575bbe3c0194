//! Command runner behind the `sigmagb` binary.

mod parse;

pub use parse::{parse_poly, render, render_monomial, MAX_EXPONENT};

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebraic::{isolate_complex_roots, isolate_real_roots};
use crate::error::{Error, Result};
use crate::ipsearch::{complex_lower_bound, find_witness_with, quadratic_min_degree, series_lower_bound_with};
use crate::phi::{compute_fstar, in_phi0, membership_phi1, minimal_delta, normalize, polya_exponent, VerdictKind};
use crate::sigma::{finite_gb, infinite_gb_stream, BinomialBasis, DiffBinomial, FiniteGb};
use crate::zx::IntPoly;
use crate::zx_ideal::{finite_sgb_criterion, multi_finite_gb, zx_groebner, CriterionKind};

#[derive(Parser, Debug)]
#[command(name = "sigmagb", version, about = "Finite difference Gröbner bases of binomial difference ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print one JSON document per input.
    #[arg(long, global = true)]
    json: bool,
    /// Include the decision path.
    #[arg(long, global = true)]
    trace: bool,
    /// Report wall-clock time.
    #[arg(long, global = true)]
    timing: bool,
    /// Read one input per line from FILE.
    #[arg(long, global = true, value_name = "FILE")]
    batch: Option<PathBuf>,
    /// Degree cap for cofactor searches on conjectural inputs.
    #[arg(long, global = true, default_value_t = crate::sigma::CONJECTURE_CAP)]
    cap: usize,
    /// Horizon for the power-series bound (default 4·deg²).
    #[arg(long, global = true)]
    horizon: Option<usize>,
    /// Node budget for the integer search.
    #[arg(long, global = true, default_value_t = crate::ipsearch::NODE_CAP)]
    nodes: usize,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// Is the only positive coefficient the leading one?
    Phi0 {
        #[arg(allow_hyphen_values = true)]
        poly: Option<String>,
    },
    /// Decide membership in Φ₁, with a witness cofactor.
    Phi1 {
        #[arg(allow_hyphen_values = true)]
        poly: Option<String>,
    },
    /// Generator of (f) ∩ Z[x^δ].
    Fstar {
        #[arg(allow_hyphen_values = true)]
        poly: Option<String>,
        #[arg(long)]
        delta: usize,
    },
    /// Least δ making all on-circle root ratios δ-th roots of unity.
    Delta {
        #[arg(allow_hyphen_values = true)]
        poly: Option<String>,
    },
    /// Finite difference Gröbner basis.
    Gb {
        #[arg(allow_hyphen_values = true)]
        poly: Option<String>,
        /// Comma-separated generators of an ideal of Z[x].
        #[arg(long, allow_hyphen_values = true)]
        ideal: Option<String>,
    },
    /// Least-degree monic cofactor g with f·g in Φ₀.
    Witness {
        #[arg(allow_hyphen_values = true)]
        poly: Option<String>,
        #[arg(long, default_value_t = 12)]
        max: usize,
    },
    /// Degree bounds.
    Bound {
        kind: BoundKind,
        #[arg(allow_hyphen_values = true)]
        poly: Option<String>,
    },
    /// Elements of an infinite basis.
    Stream {
        #[arg(allow_hyphen_values = true)]
        poly: Option<String>,
        #[arg(long, default_value_t = 3)]
        count: usize,
    },
    /// Finiteness criterion for an ideal given by comma-separated generators.
    Criterion {
        #[arg(allow_hyphen_values = true)]
        polys: Option<String>,
    },
    /// Isolate complex roots.
    Roots {
        #[arg(allow_hyphen_values = true)]
        poly: Option<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum BoundKind {
    Series,
    Complex,
    Quadratic,
    Polya,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Phi0 { .. } => "phi0",
            Command::Phi1 { .. } => "phi1",
            Command::Fstar { .. } => "fstar",
            Command::Delta { .. } => "delta",
            Command::Gb { ideal: Some(_), .. } => "gb-ideal",
            Command::Gb { .. } => "gb",
            Command::Witness { .. } => "witness",
            Command::Bound { .. } => "bound",
            Command::Stream { .. } => "stream",
            Command::Criterion { .. } => "criterion",
            Command::Roots { .. } => "roots",
        }
    }

    fn input(&self) -> Option<&str> {
        match self {
            Command::Gb { ideal: Some(s), .. } => Some(s),
            Command::Phi0 { poly }
            | Command::Phi1 { poly }
            | Command::Fstar { poly, .. }
            | Command::Delta { poly }
            | Command::Gb { poly, .. }
            | Command::Witness { poly, .. }
            | Command::Bound { poly, .. }
            | Command::Stream { poly, .. }
            | Command::Roots { poly } => poly.as_deref(),
            Command::Criterion { polys } => polys.as_deref(),
        }
    }
}

/// Exponent pair of a basis element, coefficients lowest degree first.
#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
struct ExpPair {
    plus: Vec<Value>,
    minus: Vec<Value>,
}

#[derive(Serialize, Debug, Default, Clone)]
struct Payload {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    basis: Option<Vec<ExpPair>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bounds: Option<BTreeMap<String, Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<Value>,
    #[serde(skip)]
    basis_text: Vec<String>,
}

#[derive(Serialize, Debug, Clone)]
struct OutputDoc {
    command: String,
    input: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<Payload>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<String>>,
    exit: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<f64>,
}

struct Settings {
    trace: bool,
    timing: bool,
    cap: usize,
    horizon: Option<usize>,
    nodes: usize,
}

fn int_value(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(v) => json!(v),
        None => json!(c.to_string()),
    }
}

fn coeff_list(p: &IntPoly) -> Vec<Value> {
    p.coeffs().iter().map(int_value).collect()
}

fn rat_text(r: &BigRational) -> String {
    r.to_string()
}

fn binomial_text(b: &DiffBinomial) -> String {
    format!("{} - {}", render_monomial(&b.plus), render_monomial(&b.minus))
}

fn basis_payload(p: &mut Payload, b: &BinomialBasis) {
    p.basis = Some(b.elements.iter().map(|e| ExpPair { plus: coeff_list(&e.plus), minus: coeff_list(&e.minus) }).collect());
    p.basis_text = b.elements.iter().map(binomial_text).collect();
    let bounds = p.bounds.get_or_insert_with(BTreeMap::new);
    bounds.insert("D".into(), json!(b.d));
    bounds.insert("certified".into(), json!(b.certified));
}

fn compact(s: String) -> String {
    s.replace(' ', "")
}

fn list(input: &str) -> Result<Vec<IntPoly>> {
    input.split(',').map(parse_poly).collect()
}

fn positive_root(f: &IntPoly) -> Result<crate::algebraic::RealAlgebraic> {
    isolate_real_roots(f)?
        .into_iter()
        .map(|(r, _)| r)
        .find(|r| r.sign() > 0)
        .ok_or_else(|| Error::Precondition("no positive root".into()))
}

/// Run one command on one input; returns the payload, trace and exit code.
fn execute(cmd: &Command, input: &str, s: &Settings) -> Result<(Payload, Option<Vec<String>>, i32)> {
    let mut p = Payload::default();
    let mut trace = None;
    let mut exit = 0;
    match cmd {
        Command::Phi0 { .. } => {
            let f = parse_poly(input)?;
            p.kind = if in_phi0(&f) { "InPhi0" } else { "NotInPhi0" }.into();
        }
        Command::Phi1 { .. } => {
            let f = parse_poly(input)?;
            let v = membership_phi1(&f)?;
            p.kind = v.kind.as_str().into();
            p.witness = v.witness.as_ref().map(render);
            p.reason = v.reason.map(|r| r.as_str().to_string());
            if s.trace {
                trace = Some(v.trace.iter().map(|t| compact(t.to_string())).collect());
            }
            if v.kind == VerdictKind::ConjecturalYes {
                exit = 2;
            }
        }
        Command::Fstar { delta, .. } => {
            let f = parse_poly(input)?;
            let core = normalize(&f)?.core;
            p.kind = "Fstar".into();
            p.value = Some(json!(render(&compute_fstar(&core, *delta)?)));
        }
        Command::Delta { .. } => {
            let f = parse_poly(input)?;
            let core = normalize(&f)?.core;
            let x = positive_root(&core)?;
            match minimal_delta(&core, &x)? {
                Some(d) => {
                    p.kind = "Delta".into();
                    p.value = Some(json!(d));
                }
                None => {
                    p.kind = "NonUnityRatio".into();
                }
            }
        }
        Command::Gb { ideal: Some(_), .. } => {
            let basis = zx_groebner(&list(input)?)?;
            let r = finite_sgb_criterion(&basis, s.cap)?;
            p.kind = r.kind.as_str().into();
            p.witness = r.witness.as_ref().map(render);
            p.value = Some(json!(basis.elements().iter().map(render).collect::<Vec<_>>()));
            match (&r.kind, &r.witness) {
                (CriterionKind::Finite, Some(w)) => {
                    let b = multi_finite_gb(&basis, w)?;
                    if !b.certified {
                        exit = 2;
                    }
                    basis_payload(&mut p, &b);
                }
                (CriterionKind::Unknown, _) => exit = 2,
                _ => {}
            }
        }
        Command::Gb { .. } => {
            let f = parse_poly(input)?;
            if s.trace {
                let g = if f.lc_ref() < &BigInt::from(0) { -&f } else { f.clone() };
                trace = Some(membership_phi1(&g)?.trace.iter().map(|t| compact(t.to_string())).collect());
            }
            match finite_gb(&f, Some(s.cap))? {
                FiniteGb::Basis(b) => {
                    p.kind = "Basis".into();
                    if !b.certified {
                        exit = 2;
                    }
                    basis_payload(&mut p, &b);
                }
                FiniteGb::Infinite => p.kind = "Infinite".into(),
                FiniteGb::Undecided => {
                    p.kind = "Undecided".into();
                    exit = 2;
                }
            }
        }
        Command::Witness { max, .. } => {
            let f = parse_poly(input)?;
            let core = normalize(&f)?.core;
            let w = find_witness_with(&core, *max, s.nodes)?;
            let bounds = p.bounds.get_or_insert_with(BTreeMap::new);
            bounds.insert("start".into(), json!(w.start));
            bounds.insert("open".into(), json!(w.open));
            match &w.witness {
                Some((g, m)) => {
                    p.kind = "Found".into();
                    p.witness = Some(render(g));
                    bounds.insert("m".into(), json!(m));
                    bounds.insert("minimal".into(), json!(w.is_minimal()));
                }
                None => {
                    p.kind = "NotFound".into();
                    exit = 2;
                }
            }
        }
        Command::Bound { kind, .. } => {
            let f = parse_poly(input)?;
            let core = normalize(&f)?.core;
            let mut b = BTreeMap::new();
            match kind {
                BoundKind::Series => {
                    let h = s.horizon.unwrap_or((4 * core.deg() * core.deg()).max(1));
                    let r = series_lower_bound_with(&core, h)?;
                    b.insert("series".into(), json!(r.bound));
                    b.insert("conclusive".into(), json!(r.conclusive));
                    b.insert("horizon".into(), json!(r.horizon));
                }
                BoundKind::Complex => {
                    b.insert("complex".into(), json!(complex_lower_bound(&core)?));
                }
                BoundKind::Quadratic => {
                    b.insert("quadratic".into(), json!(quadratic_min_degree(&core)?));
                }
                BoundKind::Polya => {
                    let d = polya_exponent(&core)?;
                    b.insert("lambda".into(), json!(rat_text(&d.lambda_lower)));
                    b.insert("lambda_exact".into(), json!(d.lambda_exact));
                    b.insert("L".into(), json!(rat_text(&d.l)));
                    b.insert("N_f".into(), json!(d.n_f));
                }
            }
            p.kind = "Bound".into();
            p.bounds = Some(b);
        }
        Command::Stream { count, .. } => {
            let f = parse_poly(input)?;
            let core = normalize(&f)?.core;
            p.kind = "Stream".into();
            p.value = Some(json!(infinite_gb_stream(&core, *count)?.iter().map(render).collect::<Vec<_>>()));
        }
        Command::Criterion { .. } => {
            let basis = zx_groebner(&list(input)?)?;
            let r = finite_sgb_criterion(&basis, s.cap)?;
            p.kind = r.kind.as_str().into();
            p.witness = r.witness.as_ref().map(render);
            p.value = Some(json!(basis.elements().iter().map(render).collect::<Vec<_>>()));
            if let Some(c) = r.bound_used {
                p.bounds = Some(BTreeMap::from([("cap".to_string(), json!(c))]));
            }
            if r.kind == CriterionKind::Unknown {
                exit = 2;
            }
        }
        Command::Roots { .. } => {
            let f = parse_poly(input)?;
            let w = BigRational::new(1.into(), 1024.into());
            let mut roots = Vec::new();
            for b in isolate_complex_roots(&f)? {
                let b = b.refine_to_width(&w)?;
                let r = b.rect();
                roots.push(json!({
                    "re": [rat_text(&r.re_lo), rat_text(&r.re_hi)],
                    "im": [rat_text(&r.im_lo), rat_text(&r.im_hi)],
                    "real": b.is_real(),
                    "multiplicity": b.multiplicity(),
                }));
            }
            p.kind = "Roots".into();
            p.value = Some(Value::Array(roots));
        }
    }
    Ok((p, trace, exit))
}

fn value_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(value_text).collect::<Vec<_>>().join(", ")),
        Value::Object(o) => {
            format!("{{{}}}", o.iter().map(|(k, v)| format!("{k}: {}", value_text(v))).collect::<Vec<_>>().join(", "))
        }
        other => other.to_string(),
    }
}

impl OutputDoc {
    fn text(&self) -> String {
        let mut out = String::new();
        match (&self.result, &self.error) {
            (_, Some(e)) => out.push_str(&format!("error: {e}")),
            (Some(p), None) => {
                out.push_str(&p.kind);
                if let Some(w) = &p.witness {
                    out.push_str(&format!(" witness={w}"));
                }
                if let Some(r) = &p.reason {
                    out.push_str(&format!(" reason={r}"));
                }
                if !p.basis_text.is_empty() {
                    out.push_str(&format!(" {{{}}}", p.basis_text.join(", ")));
                }
                if let Some(b) = &p.bounds {
                    for (k, v) in b {
                        out.push_str(&format!(" {k}={}", value_text(v)));
                    }
                }
                if let Some(v) = &p.value {
                    out.push_str(&format!(" {}", value_text(v)));
                }
            }
            (None, None) => {}
        }
        if let Some(t) = &self.trace {
            out.push_str(&format!(" trace={}", t.join(">")));
        }
        if let Some(ms) = self.timing_ms {
            out.push_str(&format!(" time={ms:.3}ms"));
        }
        out
    }
}

fn run_doc(cmd: &Command, input: &str, s: &Settings) -> OutputDoc {
    let t = Instant::now();
    let r = execute(cmd, input.trim(), s);
    let timing_ms = s.timing.then(|| t.elapsed().as_secs_f64() * 1e3);
    let (result, error, trace, exit) = match r {
        Ok((p, tr, e)) => (Some(p), None, tr, e),
        Err(e) => (None, Some(e.to_string()), None, 1),
    };
    OutputDoc { command: cmd.name().into(), input: input.trim().into(), result, error, trace, exit, timing_ms }
}

/// Captured result of a command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub exit: i32,
    pub stdout: String,
    pub stderr: String,
}

fn combine(codes: impl Iterator<Item = i32>) -> i32 {
    codes.fold(0, |acc, c| match (acc, c) {
        (1, _) | (_, 1) => 1,
        (2, _) | (_, 2) => 2,
        _ => 0,
    })
}

/// Run a full command line (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let msg = e.render().to_string();
            return if e.use_stderr() {
                Outcome { exit: 1, stdout: String::new(), stderr: msg }
            } else {
                Outcome { exit: 0, stdout: msg, stderr: String::new() }
            };
        }
    };
    let settings =
        Settings { trace: cli.trace, timing: cli.timing, cap: cli.cap, horizon: cli.horizon, nodes: cli.nodes };
    let render_doc = |d: &OutputDoc| {
        if cli.json {
            serde_json::to_string(d).expect("serializable")
        } else {
            d.text()
        }
    };
    let mut stderr = String::new();
    if let Some(path) = &cli.batch {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                return Outcome { exit: 1, stdout: String::new(), stderr: format!("cannot read {}: {e}\n", path.display()) }
            }
        };
        let lines: Vec<&str> = text.lines().collect();
        let docs: Vec<Option<OutputDoc>> = lines
            .par_iter()
            .map(|l| {
                let t = l.trim();
                (!t.is_empty() && !t.starts_with('#')).then(|| run_doc(&cli.command, t, &settings))
            })
            .collect();
        let mut stdout = String::new();
        for (line, doc) in lines.iter().zip(&docs) {
            match doc {
                Some(d) => {
                    if let Some(e) = &d.error {
                        stderr.push_str(&format!("{}: {e}\n", d.input));
                    }
                    stdout.push_str(&render_doc(d));
                }
                None if cli.json => stdout.push_str(&json!({ "comment": line }).to_string()),
                None => stdout.push_str(line),
            }
            stdout.push('\n');
        }
        let exit = combine(docs.iter().flatten().map(|d| d.exit));
        return Outcome { exit, stdout, stderr };
    }
    let Some(input) = cli.command.input() else {
        return Outcome { exit: 1, stdout: String::new(), stderr: "missing input (or use --batch FILE)\n".into() };
    };
    let d = run_doc(&cli.command, input, &settings);
    if let Some(e) = &d.error {
        stderr.push_str(&format!("error: {e}\n"));
    }
    let stdout = if d.error.is_some() && !cli.json { String::new() } else { format!("{}\n", render_doc(&d)) };
    Outcome { exit: d.exit, stdout, stderr }
}

/// Entry point of the binary; returns the process exit code.
pub fn main_entry() -> i32 {
    let o = run(std::env::args_os());
    print!("{}", o.stdout);
    eprint!("{}", o.stderr);
    o.exit
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        run(std::iter::once("sigmagb").chain(args.iter().copied()))
    }

    #[test]
    fn phi1_examples() {
        let o = go(&["phi1", "x^2+x+1"]);
        assert_eq!((o.exit, o.stdout.as_str()), (0, "Yes witness=x-1\n"));
        let o = go(&["phi1", "x^3-x^2+x-2"]);
        assert_eq!(o.exit, 2);
        assert!(o.stdout.starts_with("ConjecturalYes"));
        let o = go(&["phi1", "x^(-1)"]);
        assert_eq!(o.exit, 1);
    }

    #[test]
    fn gb_rendering() {
        let o = go(&["gb", "x^2+x+1"]);
        assert_eq!(o.exit, 0);
        assert!(o.stdout.starts_with("Basis {y^[x^2+x+1] - 1, y^[x^3] - y}"), "{}", o.stdout);
    }

    #[test]
    fn json_shape() {
        let o = go(&["phi1", "x^2+x+1", "--json", "--trace"]);
        let v: Value = serde_json::from_str(o.stdout.trim()).unwrap();
        assert_eq!(v["command"], "phi1");
        assert_eq!(v["result"]["kind"], "Yes");
        assert_eq!(v["trace"], json!(["2"]));
        assert_eq!(v["exit"], 0);
        let o = go(&["gb", "x-2", "--json"]);
        let v: Value = serde_json::from_str(o.stdout.trim()).unwrap();
        assert_eq!(v["result"]["basis"], json!([{"plus": [0, 1], "minus": [2]}]));
    }
}
