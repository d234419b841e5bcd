//! Command-line front end: argument grammar and output rendering.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bernoulli::{pb2, pb_poly, pbn, Pb2Route, X};
use crate::identities::{r_function, run_suite, CatalogConfig, Suite, SuiteReport};
use crate::poly::MPoly;
use crate::rat::Rat;
use crate::stirling::{gsn_symbolic, stirling1_unsigned, stirling2};

/// What a finished invocation hands back to the process: the exit status
/// and the bytes destined for each stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dispatch {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Dispatch {
    fn ok(stdout: String) -> Dispatch {
        Dispatch {
            status: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: impl Into<String>) -> Dispatch {
        let mut stderr = message.into();
        stderr.push('\n');
        Dispatch {
            status: 1,
            stdout: String::new(),
            stderr,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "polybern",
    version,
    about = "Exact generalized Stirling numbers and poly-Bernoulli polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generalized Stirling numbers S(p1,k) of the symbolic pair (1,x1), (1,x2)
    Gsn {
        #[arg(long)]
        p1: u32,
        #[arg(long)]
        p2: u32,
        /// Omit to print every k from 0 to p1+p2
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Stirling numbers of the first (unsigned) or second kind
    Stirling {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
        kind: u8,
        #[arg(long)]
        p: u32,
        /// Omit to print the whole row
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// One-variable poly-Bernoulli polynomial, or its value at --y
    Pb {
        #[arg(long)]
        p: u32,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long, allow_hyphen_values = true)]
        y: Option<Rat>,
        #[command(flatten)]
        out: Output,
    },
    /// Bi-variate poly-Bernoulli polynomial
    Pb2 {
        #[arg(long)]
        p1: u32,
        #[arg(long)]
        p2: u32,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long, value_enum, default_value_t = RouteArg::Numbers)]
        route: RouteArg,
        /// Offset used by the stirling-m route
        #[arg(long, default_value_t = 0)]
        m: u32,
        /// Offset used by the stirling-n route
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Poly-Bernoulli polynomial in as many variables as degrees
    Pbn {
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[command(flatten)]
        out: Output,
    },
    /// The auxiliary rational function of the generalized recurrence
    Rfun {
        #[arg(long, allow_hyphen_values = true, value_parser = clap::value_parser!(i64).range(-1..))]
        mu: i64,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long, allow_hyphen_values = true)]
        y: Rat,
        #[command(flatten)]
        out: Output,
    },
    /// Check the identity catalog over a parameter grid
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: Suite,
    #[arg(long, default_value_t = 3)]
    max_p: u32,
    #[arg(long, allow_hyphen_values = true, default_value = "-1..2")]
    k: String,
    #[arg(long, default_value = "0..3")]
    q: String,
    #[arg(long, default_value = "0..2")]
    m: String,
    #[arg(long, default_value = "1..3")]
    n: String,
    #[arg(long, default_value = "0..3")]
    r: String,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Def,
    Explicit,
    Numbers,
    StirlingM,
    StirlingN,
}

/// Parses `Z`, `Z1,Z2,...` or the inclusive range `A..B`.
pub fn parse_int_list(flag: &str, s: &str) -> Result<Vec<i64>, String> {
    let bad = |what: &str| format!("error: invalid value '{s}' for '--{flag}': {what}");
    if let Some((a, b)) = s.split_once("..") {
        let a: i64 = a.trim().parse().map_err(|_| bad("range start is not an integer"))?;
        let b: i64 = b.trim().parse().map_err(|_| bad("range end is not an integer"))?;
        if a > b {
            return Err(bad("empty range"));
        }
        return Ok(RangeInclusive::new(a, b).collect());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| bad("expected an integer, a list or A..B"))
        })
        .collect()
}

fn parse_nat_list(flag: &str, s: &str) -> Result<Vec<u32>, String> {
    parse_int_list(flag, s)?
        .into_iter()
        .map(|v| u32::try_from(v).map_err(|_| format!("error: invalid value '{s}' for '--{flag}': negative entry {v}")))
        .collect()
}

#[derive(Serialize)]
struct TermJson<'a> {
    exp: &'a [u32],
    coeff: String,
}

#[derive(Serialize)]
struct PolyJson<'a> {
    vars: &'a [String],
    terms: Vec<TermJson<'a>>,
}

impl<'a> PolyJson<'a> {
    fn new(p: &'a MPoly) -> PolyJson<'a> {
        PolyJson {
            vars: p.vars(),
            terms: p
                .terms()
                .map(|(m, c)| TermJson {
                    exp: m.exps(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum ValueJson<'a> {
    Rat(String),
    Poly(PolyJson<'a>),
}

#[derive(Serialize)]
struct Labelled<'a> {
    k: i64,
    value: ValueJson<'a>,
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

/// Deterministic JSON for a rational: the string `"num/den"`.
pub fn rat_json(r: &Rat) -> String {
    to_json(&r.to_string())
}

/// Deterministic JSON for a polynomial, terms in canonical order.
pub fn poly_json(p: &MPoly) -> String {
    to_json(&PolyJson::new(p))
}

pub fn report_json(r: &SuiteReport) -> String {
    r.to_json()
}

/// A computed value ready for either output format.
enum Rendered {
    Rat(Rat),
    Poly(MPoly),
}

impl Rendered {
    fn text(&self) -> String {
        match self {
            Rendered::Rat(r) => r.to_string(),
            Rendered::Poly(p) => p.render(),
        }
    }

    fn json(&self) -> ValueJson<'_> {
        match self {
            Rendered::Rat(r) => ValueJson::Rat(r.to_string()),
            Rendered::Poly(p) => ValueJson::Poly(PolyJson::new(p)),
        }
    }
}

/// One value per `k`; a single `k` prints bare, several print labelled.
fn render_family(format: Format, items: Vec<(i64, Rendered)>) -> String {
    match (format, items.len()) {
        (Format::Text, 1) => format!("{}\n", items[0].1.text()),
        (Format::Text, _) => items.iter().fold(String::new(), |mut s, (k, v)| {
            let _ = writeln!(s, "k={k}: {}", v.text());
            s
        }),
        (Format::Json, 1) => format!("{}\n", to_json(&items[0].1.json())),
        (Format::Json, _) => {
            let arr: Vec<Labelled> = items.iter().map(|(k, v)| Labelled { k: *k, value: v.json() }).collect();
            format!("{}\n", to_json(&arr))
        }
    }
}

fn deliver(out: &Output, body: String) -> Dispatch {
    match &out.out {
        None => Dispatch::ok(body),
        Some(path) => match std::fs::write(path, body) {
            Ok(()) => Dispatch::ok(String::new()),
            Err(e) => Dispatch::usage(format!("error: cannot write '--out' {}: {e}", path.display())),
        },
    }
}

/// Single-line diagnostic from a clap error: its message lines before the
/// usage block, joined.
fn clap_diagnostic(e: &clap::Error) -> String {
    let text = e.render().to_string();
    text.lines()
        .take_while(|l| !l.starts_with("Usage:") && !l.starts_with("For more information"))
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with("tip:"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses `argv` (without the program name) and runs the command.
///
/// Exit statuses: `0` on success, `1` on a usage error or an evaluation
/// error such as an R-function pole, `2` when `verify` finds a failing
/// identity (the report is still produced).
pub fn cmd_dispatch<I, S>(argv: I) -> Dispatch
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args = std::iter::once("polybern".to_string()).chain(argv.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return Dispatch::ok(e.render().to_string())
        }
        Err(e) => return Dispatch::usage(clap_diagnostic(&e)),
    };
    match run(cli.command) {
        Ok(d) => d,
        Err(msg) => Dispatch::usage(msg),
    }
}

fn run(command: Command) -> Result<Dispatch, String> {
    Ok(match command {
        Command::Gsn { p1, p2, k, out } => {
            let ks = match k {
                Some(s) => parse_int_list("k", &s)?,
                None => (0..=(p1 + p2) as i64).collect(),
            };
            let items = ks
                .into_iter()
                .map(|k| (k, Rendered::Poly(gsn_symbolic(p1, p2, k))))
                .collect();
            deliver(&out, render_family(out.format, items))
        }
        Command::Stirling { kind, p, k, out } => {
            let ks = match k {
                Some(s) => parse_int_list("k", &s)?,
                None => (0..=p as i64).collect(),
            };
            let f = if kind == 1 { stirling1_unsigned } else { stirling2 };
            let items = ks.into_iter().map(|k| (k, Rendered::Rat(f(p, k)))).collect();
            deliver(&out, render_family(out.format, items))
        }
        Command::Pb { p, k, y, out } => {
            let items = parse_int_list("k", &k)?
                .into_iter()
                .map(|k| {
                    let poly = pb_poly(p, k);
                    let v = match &y {
                        Some(y) => Rendered::Rat(poly.eval(&[(X, y.clone())]).expect("single variable")),
                        None => Rendered::Poly(poly),
                    };
                    (k, v)
                })
                .collect();
            deliver(&out, render_family(out.format, items))
        }
        Command::Pb2 {
            p1,
            p2,
            k,
            route,
            m,
            n,
            out,
        } => {
            let route = match route {
                RouteArg::Def => Pb2Route::Definition,
                RouteArg::Explicit => Pb2Route::Explicit,
                RouteArg::Numbers => Pb2Route::Numbers,
                RouteArg::StirlingM => Pb2Route::StirlingM(m),
                RouteArg::StirlingN => Pb2Route::StirlingN(n),
            };
            let items = parse_int_list("k", &k)?
                .into_iter()
                .map(|k| (k, Rendered::Poly(pb2(p1, p2, k, route).poly)))
                .collect();
            deliver(&out, render_family(out.format, items))
        }
        Command::Pbn { degrees, k, out } => {
            if degrees.is_empty() {
                return Err("error: '--degrees' needs at least one entry".into());
            }
            let items = parse_int_list("k", &k)?
                .into_iter()
                .map(|k| (k, Rendered::Poly(pbn(&degrees, k).poly)))
                .collect();
            deliver(&out, render_family(out.format, items))
        }
        Command::Rfun { mu, k, y, out } => {
            let mut items = Vec::new();
            for k in parse_int_list("k", &k)? {
                let v = r_function(mu, k, &y).map_err(|e| format!("error: {e}"))?;
                items.push((k, Rendered::Rat(v.value)));
            }
            deliver(&out, render_family(out.format, items))
        }
        Command::Verify(v) => verify(v)?,
    })
}

fn verify(v: VerifyArgs) -> Result<Dispatch, String> {
    let config = CatalogConfig {
        max_p: Some(v.max_p),
        q_range: parse_nat_list("q", &v.q)?,
        k_set: parse_int_list("k", &v.k)?,
        m_set: parse_nat_list("m", &v.m)?,
        n_set: parse_nat_list("n", &v.n)?,
        r_set: parse_nat_list("r", &v.r)?,
        ..CatalogConfig::default()
    };
    let report = run_suite(v.suite, &config);
    let body = match v.out.format {
        Format::Json => format!("{}\n", report.to_json()),
        Format::Text => {
            let mut s = String::new();
            for f in report.failures() {
                let _ = writeln!(s, "{f}");
            }
            let total = report.summary.total();
            if report.all_passed() {
                let _ = writeln!(s, "all {total} checks passed");
            } else {
                let _ = writeln!(s, "{} of {total} checks failed", report.summary.failed);
            }
            s
        }
    };
    let mut d = deliver(&v.out, body);
    if d.status == 0 && !report.all_passed() {
        d.status = 2;
    }
    Ok(d)
}
