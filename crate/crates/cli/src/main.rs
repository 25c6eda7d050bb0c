use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rankit_core::catalog::{BBS_P, BBS_Q};
use rankit_core::funcs::DEFAULT_SINE_TERMS;
use rankit_core::FunctionId;

mod commands;
mod output;

use output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "rankit",
    version,
    about = "Rank, invert and size the functions of the catalog"
)]
struct Cli {
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Seed for the oracle generator (default 1) or the BBS generator (default 2).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Absolute tolerance for output matching.
    #[arg(long, global = true)]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

fn parse_fn(s: &str) -> Result<FunctionId, String> {
    s.parse().map_err(|e: rankit_core::Error| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ViewArg {
    Input,
    Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Bisect,
    Exhaustive,
    Table,
    Analytic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TspMode {
    /// Exhaustive minimum over tours starting at city 0.
    Shortest,
    /// Tour -> distance table over tours starting at city 0.
    Mapping,
    /// Tour -> distance table over tours from every start city.
    All,
    /// Distance of the tour given with --tour.
    Eval,
}

#[derive(Debug, clap::Args)]
pub struct Instance {
    /// Distance matrix, JSON `{"n":..,"d":[[..]]}` or headerless CSV.
    /// Defaults to the built-in 5-city instance.
    #[arg(long)]
    instance: Option<PathBuf>,

    #[arg(long)]
    allow_asymmetric: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a function forward.
    Eval {
        #[arg(long = "fn", value_parser = parse_fn)]
        function: FunctionId,
        /// Input value (degrees for sine, ratio for arcsine, integer for collatz).
        #[arg(long, allow_negative_numbers = true)]
        x: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_SINE_TERMS)]
        terms: usize,
        /// For collatz, return the whole trajectory, capped at this many steps.
        #[arg(long)]
        trajectory: Option<usize>,
        #[arg(long, default_value_t = BBS_P)]
        p: u64,
        #[arg(long, default_value_t = BBS_Q)]
        q: u64,
        /// Number of BBS output bits.
        #[arg(long, default_value_t = 8)]
        len: usize,
        /// Tour for gtd, e.g. 0,2,1,3,4,0.
        #[arg(long)]
        tour: Option<String>,
        #[command(flatten)]
        instance: Instance,
    },
    /// Build an input/output table.
    Table {
        #[arg(long = "fn", value_parser = parse_fn)]
        function: FunctionId,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        lo: i64,
        #[arg(long, default_value_t = 90, allow_negative_numbers = true)]
        hi: i64,
        #[arg(long, default_value_t = 1)]
        step: i64,
        #[arg(long, default_value_t = DEFAULT_SINE_TERMS)]
        terms: usize,
        /// Row order.
        #[arg(long, value_enum, default_value_t = ViewArg::Input)]
        by: ViewArg,
        /// Decimal places for real outputs.
        #[arg(long, default_value_t = 4)]
        decimals: usize,
        #[arg(long, default_value_t = BBS_P)]
        p: u64,
        #[arg(long, default_value_t = BBS_Q)]
        q: u64,
        #[arg(long, default_value_t = 8)]
        len: usize,
        #[command(flatten)]
        instance: Instance,
    },
    /// Find an input producing the target output.
    Invert {
        #[arg(long = "fn", value_parser = parse_fn)]
        function: FunctionId,
        #[arg(long, allow_negative_numbers = true)]
        target: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        lo: f64,
        #[arg(long, default_value_t = 90.0, allow_negative_numbers = true)]
        hi: f64,
        #[arg(long, default_value_t = 1.0)]
        step: f64,
        #[arg(long, value_enum, default_value_t = Method::Bisect)]
        method: Method,
        #[command(flatten)]
        instance: Instance,
    },
    /// Query the lazily sampled random oracle.
    Oracle {
        /// Comma-separated queries, answered in order.
        #[arg(long, value_delimiter = ',')]
        queries: Vec<u64>,
        /// Start from the ten reference notebook rows.
        #[arg(long)]
        table1: bool,
    },
    /// Travelling-salesman distance function.
    Tsp {
        #[command(flatten)]
        instance: Instance,
        #[arg(long, value_enum, default_value_t = TspMode::Shortest)]
        mode: TspMode,
        #[arg(long)]
        tour: Option<String>,
    },
    /// Flow-graph cycles and cyclomatic number.
    Cfg {
        /// Edge list with `entry k` and `exit k` lines.
        #[arg(long, conflicts_with_all = ["diamonds", "function"])]
        graph: Option<PathBuf>,
        /// Chain of this many if/else diamonds.
        #[arg(long, conflicts_with = "function")]
        diamonds: Option<usize>,
        /// Built-in instrumented function (collatz or sine).
        #[arg(long = "fn")]
        function: Option<String>,
        /// Cycle counts for diamond chains of depth 0..=N.
        #[arg(long, conflicts_with_all = ["graph", "diamonds", "function"])]
        doubling: Option<usize>,
        /// Execution path of --fn on this input.
        #[arg(long, requires = "function")]
        trace: Option<u64>,
    },
    /// Description size, mapping size and verdict.
    Complexity {
        /// One function; all of them when omitted.
        #[arg(long = "fn", value_parser = parse_fn)]
        function: Option<FunctionId>,
        /// City count used to size the gtd mapping.
        #[arg(long, default_value_t = 5)]
        cities: usize,
        /// Additive constant of the comparison, in bits.
        #[arg(long, default_value_t = 0)]
        c: u128,
    },
    /// Regenerate every reference number in one run.
    ReportAll,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = commands::run(&cli)
        .and_then(|doc| doc.render(cli.format))
        .and_then(|text| {
            match &cli.out {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
            Ok(())
        });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
