mod format;
mod input;
mod jobs;
mod report;

use std::process::ExitCode;

use clap::parser::ValueSource;
use clap::{ArgMatches, CommandFactory, FromArgMatches, Parser, ValueEnum};
use ncdist_core::{OracleConfig, Path, SolveOptions};
use rayon::prelude::*;
use serde_json::{json, Value};

use input::InputError;
use jobs::{Mode, Outcome, Settings, EXIT_INVALID};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Noncommutative distance between the endpoints of a weighted path, with
/// a numerical oracle and geodesic bounds for general graphs.
#[derive(Debug, Parser)]
#[command(name = "ncdist", version)]
struct Cli {
    #[arg(value_enum)]
    mode: Mode,

    /// Path weights d_1,...,d_{n-1}, comma- or space-separated.
    #[arg(long, value_name = "CSV", allow_hyphen_values = true, conflicts_with_all = ["input", "matrix"])]
    weights: Option<String>,

    /// Batch file, one weight vector per line.
    #[arg(long, value_name = "FILE", conflicts_with = "matrix")]
    input: Option<String>,

    /// Graph Dirac matrix: n lines of n numbers (oracle and geodesic modes).
    #[arg(long, value_name = "FILE")]
    matrix: Option<String>,

    /// 1-based vertex pair.
    #[arg(long, value_name = "I,J")]
    pair: Option<String>,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// List every viable candidate, not only the maximizer.
    #[arg(long)]
    all_candidates: bool,

    /// Evaluate refinements of viable patterns as well.
    #[arg(long)]
    no_prune: bool,

    /// Oracle seed; restart r uses seed + r.
    #[arg(long, env = "NCDIST_SEED")]
    seed: Option<u64>,

    /// Oracle restarts.
    #[arg(long)]
    restarts: Option<usize>,

    /// Oracle tolerance.
    #[arg(long)]
    tol: Option<f64>,
}

enum Source {
    Single(Path),
    Batch(Vec<Path>),
    Graph(ncdist_core::Graph),
}

fn check_modes(cli: &Cli, matches: &ArgMatches) -> Result<(), String> {
    let path_only = matches!(cli.mode, Mode::Solve | Mode::Verify | Mode::Enumerate | Mode::Compare);
    let solver_mode = matches!(cli.mode, Mode::Solve | Mode::Verify | Mode::Enumerate);
    let oracle_mode = matches!(cli.mode, Mode::Oracle | Mode::Compare);
    let name = format!("{:?}", cli.mode).to_lowercase();
    if cli.weights.is_none() && cli.input.is_none() && cli.matrix.is_none() {
        return Err("one of --weights, --input or --matrix is required".into());
    }
    if path_only && cli.matrix.is_some() {
        return Err(format!("{name} works on path weights; --matrix is for oracle and geodesic"));
    }
    if path_only && cli.pair.is_some() {
        return Err(format!("{name} always measures the path endpoints; --pair is for oracle and geodesic"));
    }
    if cli.matrix.is_some() && cli.pair.is_none() {
        return Err("--matrix needs --pair i,j".into());
    }
    if !solver_mode && (cli.all_candidates || cli.no_prune) {
        return Err(format!("--all-candidates and --no-prune do not apply to {name}"));
    }
    let seed_flag = matches.value_source("seed") == Some(ValueSource::CommandLine);
    if !oracle_mode && (cli.restarts.is_some() || cli.tol.is_some() || seed_flag) {
        return Err(format!("--seed, --restarts and --tol do not apply to {name}"));
    }
    Ok(())
}

fn settings(cli: &Cli) -> Result<Settings, InputError> {
    let defaults = OracleConfig::default();
    let oracle = OracleConfig {
        seed: cli.seed.unwrap_or(defaults.seed),
        restarts: cli.restarts.unwrap_or(defaults.restarts),
        tolerance: cli.tol.unwrap_or(defaults.tolerance),
        ..defaults
    };
    oracle.validate()?;
    let pair = cli.pair.as_deref().map(input::parse_pair).transpose()?;
    let solve = SolveOptions { prune: !cli.no_prune, all_candidates: cli.all_candidates, ..Default::default() };
    Ok(Settings { solve, oracle, pair })
}

fn source(cli: &Cli) -> Result<Source, InputError> {
    if let Some(w) = &cli.weights {
        return Ok(Source::Single(input::parse_weights(w)?));
    }
    if let Some(f) = &cli.input {
        return Ok(Source::Batch(input::parse_batch(f, &input::read_file(f)?)?));
    }
    let f = cli.matrix.as_ref().expect("validated: one input source");
    Ok(Source::Graph(input::parse_matrix(&input::read_file(f)?)?))
}

fn failed(d: &Path, e: ncdist_core::Error) -> Outcome {
    Outcome { report: json!({"input": d.weights(), "error": e.to_string()}), code: EXIT_INVALID }
}

fn render(outcomes: &[Outcome], batch: bool, format: Format) -> String {
    match (format, batch) {
        (Format::Json, false) => serde_json::to_string_pretty(&outcomes[0].report).expect("serializable") + "\n",
        (Format::Json, true) => {
            let all: Vec<&Value> = outcomes.iter().map(|o| &o.report).collect();
            serde_json::to_string_pretty(&all).expect("serializable") + "\n"
        }
        (Format::Text, _) => outcomes.iter().map(|o| report::to_text(&o.report)).collect::<Vec<_>>().join("\n"),
    }
}

fn run(cli: &Cli, matches: &ArgMatches) -> Result<ExitCode, String> {
    check_modes(cli, matches)?;
    let s = settings(cli).map_err(|e| e.to_string())?;
    let src = source(cli).map_err(|e| e.to_string())?;
    if let (Source::Graph(g), Some((i, j))) = (&src, s.pair) {
        for v in [i, j] {
            if v >= g.order() {
                return Err(ncdist_core::Error::VertexOutOfRange { vertex: v + 1, n: g.order() }.to_string());
            }
        }
    }

    let (outcomes, batch) = match &src {
        Source::Single(d) => (vec![jobs::run_path(cli.mode, d, &s).map_err(|e| e.to_string())?], false),
        Source::Batch(paths) => {
            let out: Vec<Outcome> = paths
                .par_iter()
                .map(|d| jobs::run_path(cli.mode, d, &s).unwrap_or_else(|e| failed(d, e)))
                .collect();
            (out, true)
        }
        Source::Graph(g) => (vec![jobs::run_graph(cli.mode, g, &s).map_err(|e| e.to_string())?], false),
    };

    for (k, o) in outcomes.iter().enumerate() {
        if let Some(msg) = o.report.get("error") {
            eprintln!("error: vector {}: {}", k + 1, msg.as_str().unwrap_or_default());
        }
    }
    print!("{}", render(&outcomes, batch, cli.format));
    let code = outcomes.iter().map(|o| o.code).max().unwrap_or(0);
    if code == jobs::EXIT_VERIFICATION {
        eprintln!("error: verification failed");
    } else if code == jobs::EXIT_NOT_CONVERGED {
        eprintln!("error: oracle did not converge");
    }
    Ok(ExitCode::from(code))
}

fn main() -> ExitCode {
    let matches = Cli::command().get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(&cli, &matches) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}
