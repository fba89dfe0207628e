mod input;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};
use truncarr::analysis::{beta, check_main3, check_main4, check_main5, gamma};
use truncarr::graph::{
    count_colorings, count_flows, flow_polynomial, modular_chromatic_polynomial,
};
use truncarr::oracle::brute_count_complement;
use truncarr::{IntVector, Limits, DEFAULT_MAX_HYPERPLANES, DEFAULT_ORACLE_BUDGET};

const EXIT_USAGE: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_SIZE_LIMIT: u8 = 4;
const EXIT_ORACLE_BUDGET: u8 = 5;
const EXIT_ORACLE_MISMATCH: u8 = 6;

/// Exact point counts of truncated integral arrangements over Z_q.
#[derive(Parser)]
#[command(name = "truncarr", version, about)]
struct Cli {
    /// Emit a JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Largest number of hyperplanes whose subsets are enumerated.
    #[arg(long, global = true, env = "MAX_M", default_value_t = DEFAULT_MAX_HYPERPLANES)]
    max_m: usize,

    /// Largest number of points a brute-force check may visit.
    #[arg(long, global = true, env = "ORACLE_BUDGET", default_value_t = DEFAULT_ORACLE_BUDGET)]
    oracle_budget: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Period, threshold and constituents of the counting quasi-polynomial.
    Quasi { file: PathBuf },
    /// Size of the complement over Z_q.
    Count {
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        q: BigInt,
        /// Also count by enumeration and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Check one of the comparison theorems on the arrangement.
    Compare {
        file: PathBuf,
        #[command(subcommand)]
        which: Comparison,
    },
    /// Colorings and flows of a directed multigraph.
    Graph {
        file: PathBuf,
        #[command(subcommand)]
        which: GraphCommand,
    },
}

#[derive(Subcommand)]
enum Comparison {
    /// Coefficients at moduli a and b above the threshold.
    Main3 {
        #[arg(allow_negative_numbers = true)]
        a: BigInt,
        #[arg(allow_negative_numbers = true)]
        b: BigInt,
    },
    /// Coefficients at residues 1 <= a, b <= period.
    Main4 {
        #[arg(allow_negative_numbers = true)]
        a: BigInt,
        #[arg(allow_negative_numbers = true)]
        b: BigInt,
    },
    /// Complement counts at q and pq.
    Main5 {
        #[arg(allow_negative_numbers = true)]
        p: BigInt,
        #[arg(allow_negative_numbers = true)]
        q: BigInt,
    },
}

#[derive(Subcommand)]
enum GraphCommand {
    /// Number of (Z_q, w)-colorings.
    Color {
        #[arg(long, allow_negative_numbers = true)]
        q: BigInt,
    },
    /// Modular chromatic polynomial and q_w.
    Chromatic,
    /// Number of nowhere-zero (Z_q, b)-flows.
    Flow {
        #[arg(long, allow_negative_numbers = true)]
        q: BigInt,
    },
    /// Flow polynomial and q_b.
    Flowpoly,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
    Compute(truncarr::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use truncarr::Error as E;
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Input(_) => EXIT_INPUT,
            CliError::Compute(e) => match e {
                E::InvalidModulus(_)
                | E::InvalidResidue(_)
                | E::OutOfRange { .. }
                | E::Precondition(_) => EXIT_USAGE,
                E::Shape(_) => EXIT_INPUT,
                E::TooManyHyperplanes { .. } => EXIT_SIZE_LIMIT,
                E::EnumerationBudget { .. } => EXIT_ORACLE_BUDGET,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Input(msg) => write!(f, "{msg}"),
            CliError::Compute(e) => write!(f, "{e}"),
        }
    }
}

impl From<truncarr::Error> for CliError {
    fn from(e: truncarr::Error) -> Self {
        CliError::Compute(e)
    }
}

struct Output {
    text: String,
    json: Value,
    exit: u8,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Self {
            text,
            json,
            exit: 0,
        }
    }
}

fn quasi(file: &Path, limits: &Limits) -> Result<Output, CliError> {
    let qp = input::read_arrangement(file)?
        .profiles_with(limits)?
        .quasi_polynomial();
    Ok(Output::ok(qp.to_string(), report::quasi_polynomial(&qp)))
}

fn count(file: &Path, q: BigInt, oracle: bool, limits: &Limits) -> Result<Output, CliError> {
    let arr = input::read_arrangement(file)?;
    let n = arr.profiles_with(limits)?.count_complement(q.clone())?;
    let mut text = format!("count {n}");
    let mut out = json!({ "q": report::int(&q), "count": report::int(&n) });
    let mut exit = 0;
    if oracle {
        let brute = brute_count_complement(&arr, q, limits.oracle_budget)?;
        let matched = brute == n;
        text += &format!(
            "\noracle {brute}\n{}",
            if matched { "match" } else { "mismatch" }
        );
        out["oracle"] = report::int(&brute);
        out["match"] = Value::Bool(matched);
        if !matched {
            exit = EXIT_ORACLE_MISMATCH;
        }
    }
    Ok(Output {
        text,
        json: out,
        exit,
    })
}

fn compare(file: &Path, which: Comparison, limits: &Limits) -> Result<Output, CliError> {
    let table = input::read_arrangement(file)?.profiles_with(limits)?;
    let (name, verdict, details, detail_text) = match which {
        Comparison::Main3 { a, b } => {
            let v = check_main3(&table, a.clone(), b.clone())?;
            let (x, y) = (beta(&table, a.clone())?, beta(&table, b.clone())?);
            let text = format!("beta({a}) {x}\nbeta({b}) {y}");
            let details = json!({
                "a": report::int(&a), "b": report::int(&b),
                "beta_a": report::coefficients(&x), "beta_b": report::coefficients(&y),
            });
            ("main3", v, details, text)
        }
        Comparison::Main4 { a, b } => {
            let v = check_main4(&table, a.clone(), b.clone())?;
            let (x, y) = (gamma(&table, a.clone())?, gamma(&table, b.clone())?);
            let text = format!("gamma({a}) {x}\ngamma({b}) {y}");
            let details = json!({
                "a": report::int(&a), "b": report::int(&b),
                "gamma_a": report::coefficients(&x), "gamma_b": report::coefficients(&y),
            });
            ("main4", v, details, text)
        }
        Comparison::Main5 { p, q } => {
            let v = check_main5(&table, p.clone(), q.clone())?;
            let pq = &p * &q;
            let (x, y) = (
                table.count_complement(q.clone())?,
                table.count_complement(pq.clone())?,
            );
            let text = format!("count({q}) {x}\ncount({pq}) {y}");
            let details = json!({
                "p": report::int(&p), "q": report::int(&q),
                "count_q": report::int(&x), "count_pq": report::int(&y),
            });
            ("main5", v, details, text)
        }
    };
    let mut out = report::verdict(&verdict);
    out["theorem"] = json!(name);
    out["details"] = details;
    let text = format!("{name}\n{}\n{detail_text}", report::verdict_text(&verdict));
    Ok(Output::ok(text, out))
}

fn required<'a>(
    labels: &'a Option<IntVector>,
    key: &str,
    sub: &str,
) -> Result<&'a IntVector, CliError> {
    labels
        .as_ref()
        .ok_or_else(|| CliError::Usage(format!("graph {sub} needs \"{key}\" in the graph file")))
}

fn graph(file: &Path, which: GraphCommand, limits: &Limits) -> Result<Output, CliError> {
    let g = input::read_graph(file)?;
    match which {
        GraphCommand::Color { q } => {
            let w = required(&g.weights, "w", "color")?;
            let n = count_colorings(&g.graph, w, q.clone(), limits)?;
            Ok(Output::ok(
                format!("count {n}"),
                json!({ "q": report::int(&q), "count": report::int(&n) }),
            ))
        }
        GraphCommand::Flow { q } => {
            let b = required(&g.supplies, "b", "flow")?;
            let n = count_flows(&g.graph, b, q.clone(), limits)?;
            Ok(Output::ok(
                format!("count {n}"),
                json!({ "q": report::int(&q), "count": report::int(&n) }),
            ))
        }
        GraphCommand::Chromatic => {
            let w = required(&g.weights, "w", "chromatic")?;
            let (qp, poly, qw) = modular_chromatic_polynomial(&g.graph, w, limits)?;
            Ok(polynomial_output(&poly, "q_w", &qw, &qp))
        }
        GraphCommand::Flowpoly => {
            let b = required(&g.supplies, "b", "flowpoly")?;
            let (qp, poly, qb) = flow_polynomial(&g.graph, b, limits)?;
            Ok(polynomial_output(&poly, "q_b", &qb, &qp))
        }
    }
}

/// `<polynomial>, <label> <threshold>`, followed by the full quasi-polynomial
/// when its period exceeds 1.
fn polynomial_output(
    poly: &truncarr::Polynomial,
    label: &str,
    threshold: &BigInt,
    qp: &truncarr::QuasiPolynomial,
) -> Output {
    let mut text = format!("{poly}, {label} {threshold}");
    if *qp.period() != BigInt::from(1) {
        text += &format!("\n{qp}");
    }
    let mut out = report::polynomial(poly);
    out[label] = report::int(threshold);
    out["quasi_polynomial"] = report::quasi_polynomial(qp);
    Output::ok(text, out)
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let limits = Limits {
        max_hyperplanes: cli.max_m,
        oracle_budget: cli.oracle_budget,
    };
    match cli.command {
        Command::Quasi { file } => quasi(&file, &limits),
        Command::Count { file, q, oracle } => count(&file, q, oracle, &limits),
        Command::Compare { file, which } => compare(&file, which, &limits),
        Command::Graph { file, which } => graph(&file, which, &limits),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            if json {
                println!("{}", out.json);
            } else {
                println!("{}", out.text);
            }
            ExitCode::from(out.exit)
        }
        Err(e) => {
            if json {
                println!(
                    "{}",
                    json!({ "error": e.to_string(), "exit_code": e.exit_code() })
                );
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
