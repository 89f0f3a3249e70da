//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 when the input parameters are infeasible or
//! the analysis derives a contradiction, 1 for every other failure
//! (usage, unreadable or malformed input).

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::critical::critical_group;
use crate::error::Error;
use crate::graph::{Graph, SrgParams};
use crate::lattice::verify_lemma_dims;
use crate::linalg::{elem_divisor_profile, snf, IntMatrix};
use crate::moore::analyze;
use crate::prime::Prime;
use crate::report::{to_json, CritGroupReport, GraphInfo, MooreReport, ProfileReport, SandpileReport, SnfReport};
use crate::sandpile::{
    recurrent_count_with_limit, recurrent_identity, sandpile_group_structure_with_limit, DEFAULT_ENUMERATION_LIMIT,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "critlab", version, about = "Critical groups of graphs via exact Smith normal form")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for parallel computations (0 = one per core).
    #[arg(long, global = true, env = "CRITLAB_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Where the graph or matrix comes from. `-` reads standard input.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Builtin graph: petersen, hoffman-singleton, moore:K, cycle:N,
    /// complete:N, path:N, bipartite:A,B (also cN and kN).
    #[arg(long)]
    graph: Option<String>,

    /// Edge list file: "n m" then m lines "u v".
    #[arg(long)]
    edges: Option<PathBuf>,

    /// Integer matrix file: "rows cols" then the entries.
    #[arg(long)]
    matrix: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Graph inspection.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Critical group of a graph.
    Critgroup(Source),
    /// Smith normal form of a matrix (or of a graph Laplacian).
    Snf(Source),
    /// Elementary divisor multiplicities at one prime.
    Profile {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        prime: u64,
    },
    /// Residue dimensions of the p-adic filtrations, checked against the
    /// elementary divisors.
    Filtration {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        prime: u64,
    },
    /// Recurrent configurations of the chip-firing game.
    Sandpile {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 0)]
        sink: usize,
        /// Refuse to enumerate more stable configurations than this.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_LIMIT)]
        limit: u128,
    },
    /// Analysis of strongly regular parameter sets.
    #[command(subcommand)]
    Moore(MooreCommand),
}

impl Source {
    fn reads_stdin(&self) -> bool {
        [&self.edges, &self.matrix].into_iter().flatten().any(|p| p.as_os_str() == "-")
    }
}

impl Command {
    fn source(&self) -> Option<&Source> {
        match self {
            Command::Graph(GraphCommand::Info(s)) | Command::Critgroup(s) | Command::Snf(s) => Some(s),
            Command::Profile { source, .. } | Command::Filtration { source, .. } | Command::Sandpile { source, .. } => {
                Some(source)
            }
            Command::Moore(_) => None,
        }
    }
}

#[derive(Debug, Subcommand)]
enum GraphCommand {
    /// Basic invariants.
    Info(Source),
}

#[derive(Debug, Subcommand)]
enum MooreCommand {
    /// Divisor bound, forced multiplicities and admissible families.
    Analyze {
        /// Strongly regular parameters v,k,lambda,mu.
        #[arg(long, value_parser = parse_params)]
        params: SrgParams,
        /// Primes to enumerate families for; defaults to every prime whose
        /// higher powers are allowed.
        #[arg(long, value_delimiter = ',')]
        prime: Vec<u64>,
    },
}

fn parse_params(s: &str) -> std::result::Result<SrgParams, String> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|e| format!("{x:?}: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    match parts[..] {
        [v, k, l, m] => Ok(SrgParams { v, k, lambda: l, mu: m }),
        _ => Err(format!("expected v,k,lambda,mu, got {} values", parts.len())),
    }
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Builtin graph by name.
pub fn builtin_graph(name: &str) -> crate::Result<Graph> {
    let bad = || Error::Parse { line: 0, msg: format!("unknown builtin graph {name:?}") };
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    let lower = name.to_ascii_lowercase();
    let (kind, arg) = lower.split_once(':').unwrap_or((&lower, ""));
    match (kind, arg) {
        ("petersen", "") => Ok(Graph::petersen()),
        ("hoffman-singleton" | "hosi", "") => Ok(Graph::hoffman_singleton()),
        ("moore", k) => crate::graph::moore_graph(num(k)?),
        ("cycle", n) if num(n)? >= 3 => Ok(Graph::cycle(num(n)?)),
        ("complete", n) => Ok(Graph::complete(num(n)?)),
        ("path", n) => Ok(Graph::path(num(n)?)),
        ("bipartite", ab) => {
            let (a, b) = ab.split_once(',').ok_or_else(bad)?;
            Ok(Graph::complete_bipartite(num(a)?, num(b)?))
        }
        (s, "") if s.len() > 1 && s.starts_with('c') && num(&s[1..]).is_ok_and(|n| n >= 3) => {
            Ok(Graph::cycle(num(&s[1..])?))
        }
        (s, "") if s.len() > 1 && s.starts_with('k') && num(&s[1..]).is_ok() => Ok(Graph::complete(num(&s[1..])?)),
        _ => Err(bad()),
    }
}

fn read_text(path: &PathBuf, stdin: &mut dyn Read) -> CliResult<String> {
    let mut s = String::new();
    if path.as_os_str() == "-" {
        stdin.read_to_string(&mut s).map_err(Error::from)?;
    } else {
        s = std::fs::read_to_string(path).map_err(Error::from)?;
    }
    Ok(s)
}

enum Input {
    Graph(Graph),
    Matrix(IntMatrix),
}

fn load(src: &Source, stdin: &mut dyn Read) -> CliResult<Input> {
    if let Some(name) = &src.graph {
        return Ok(Input::Graph(builtin_graph(name)?));
    }
    if let Some(path) = &src.edges {
        return Ok(Input::Graph(Graph::parse_edge_list(&read_text(path, stdin)?)?));
    }
    if let Some(path) = &src.matrix {
        return Ok(Input::Matrix(IntMatrix::parse(&read_text(path, stdin)?)?));
    }
    Err(Failure::Usage("one of --graph, --edges, --matrix is required".into()))
}

fn load_graph(src: &Source, stdin: &mut dyn Read) -> CliResult<Graph> {
    match load(src, stdin)? {
        Input::Graph(g) => Ok(g),
        Input::Matrix(_) => Err(Failure::Usage("this command needs a graph (--graph or --edges), not --matrix".into())),
    }
}

/// The matrix itself, or the Laplacian of a graph.
fn load_matrix(src: &Source, stdin: &mut dyn Read) -> CliResult<IntMatrix> {
    Ok(match load(src, stdin)? {
        Input::Graph(g) => g.laplacian_matrix(),
        Input::Matrix(m) => m,
    })
}

fn prime(p: u64) -> CliResult<Prime> {
    Prime::new(p).map_err(|e| Failure::Usage(e.to_string()))
}

fn emit<T: Serialize + std::fmt::Display>(format: Format, report: &T) -> String {
    match format {
        Format::Text => report.to_string(),
        Format::Json => to_json(report),
    }
}

fn dispatch(cli: &Cli, stdin: &mut &[u8]) -> CliResult<String> {
    let f = cli.format;
    match &cli.command {
        Command::Graph(GraphCommand::Info(src)) => Ok(emit(f, &GraphInfo::of(&load_graph(src, stdin)?))),
        Command::Critgroup(src) => {
            let g = load_graph(src, stdin)?;
            Ok(emit(f, &CritGroupReport::of(&g, &critical_group(&g))))
        }
        Command::Snf(src) => {
            let m = load_matrix(src, stdin)?;
            Ok(emit(f, &SnfReport::of(m.rows(), m.cols(), &snf(&m, false))))
        }
        Command::Profile { source, prime: p } => {
            let p = prime(*p)?;
            let m = load_matrix(source, stdin)?;
            Ok(emit(f, &ProfileReport::of(&elem_divisor_profile(&m, p))))
        }
        Command::Filtration { source, prime: p } => {
            let p = prime(*p)?;
            let m = load_matrix(source, stdin)?;
            Ok(emit(f, &verify_lemma_dims(&m, p)))
        }
        Command::Sandpile { source, sink, limit } => {
            let g = load_graph(source, stdin)?;
            let count = recurrent_count_with_limit(&g, *sink, *limit)?;
            let structure = sandpile_group_structure_with_limit(&g, *sink, *limit)?;
            let identity = recurrent_identity(&g, *sink)?;
            Ok(emit(f, &SandpileReport::new(*sink, count, &structure, &identity)))
        }
        Command::Moore(MooreCommand::Analyze { params, prime: primes }) => {
            let primes = primes.iter().map(|&p| prime(p)).collect::<CliResult<Vec<_>>>()?;
            Ok(emit(f, &MooreReport::of(&analyze(params, &primes)?)))
        }
    }
}

/// Runs the tool on explicit streams and returns the exit code.
pub fn run_with<I, T>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_FAILURE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    // Standard input is buffered up front so the work can move to a pool.
    let mut buffered = String::new();
    if cli.command.source().is_some_and(Source::reads_stdin) && stdin.read_to_string(&mut buffered).is_err() {
        let _ = writeln!(stderr, "error: cannot read standard input");
        return EXIT_FAILURE;
    }
    let stdin = &mut buffered.as_bytes();
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli, stdin)),
            Err(e) => Err(Failure::Usage(format!("cannot start {n} threads: {e}"))),
        },
        None => dispatch(&cli, stdin),
    };
    match result {
        Ok(out) => match stdout.write_all(out.as_bytes()) {
            Ok(()) => EXIT_OK,
            Err(_) => EXIT_FAILURE,
        },
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_FAILURE
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            match e {
                Error::Contradiction(_) | Error::InfeasibleParameters(_) => EXIT_INFEASIBLE,
                _ => EXIT_FAILURE,
            }
        }
    }
}

/// Runs the tool on the process streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdin().lock(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
