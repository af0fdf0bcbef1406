//! Command-line front end for the exact Riordan-array toolkit.
//!
//! Exit codes: 0 success / all checks pass, 1 check failure,
//! 2 usage or parse error.

mod output;
mod spec;

use clap::{Args, Parser, Subcommand};
use output::{matrix_doc, numerator_doc, poly_doc, render_doc, report_doc, series_doc};
use riordan_core::lagrange::lagrange_associate;
use riordan_core::rat::parse_rat;
use riordan_core::riordan::{
    default_order, euler_poly, narayana_b_poly, narayana_poly, numerator,
};
use riordan_core::transforms::{build, OpName};
use riordan_core::verify::{run_suite, CheckId, CheckParams, Verdict};
use riordan_core::{Flavor, Rat, SeriesPair};
use spec::SeriesSpec;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "riordan", about = "Exact Riordan arrays, numerator polynomials, and transformation matrices", disable_help_subcommand = true)]
struct Cli {
    /// Emit the canonical JSON document instead of human-readable text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Euler polynomial A_n
    Euler { n: usize },
    /// Narayana polynomial N_n
    Narayana { n: usize },
    /// Type-B Narayana polynomial
    NarayanaB { n: usize },
    /// Generalized Euler polynomial of (1, x a(x))
    Gep(PipelineArgs),
    /// Generalized Narayana polynomial of (1, x a(x)), exponential flavor
    Gnp(PipelineArgs),
    /// Numerator polynomial of (b, x a(x)) in either flavor
    Numerator(NumeratorArgs),
    /// One of the finite transformation matrices
    Matrix(MatrixArgs),
    /// Expand a series specification
    Series {
        spec: String,
        #[arg(long)]
        order: usize,
    },
    /// Generalized Lagrange series of a base series
    Lagrange {
        #[arg(long)]
        series: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        phi: String,
        #[arg(long)]
        order: usize,
    },
    /// Run identity checks (all by default)
    Check {
        ids: Vec<String>,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Comma-separated list of rationals
        #[arg(long, allow_hyphen_values = true)]
        beta_grid: Option<String>,
        #[arg(long, default_value_t = 4)]
        guard: usize,
    },
}

#[derive(Args)]
struct PipelineArgs {
    #[arg(long)]
    series: String,
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct NumeratorArgs {
    #[arg(long)]
    series: String,
    #[arg(long, default_value = "1")]
    b: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "ordinary")]
    flavor: String,
}

#[derive(Args)]
struct MatrixArgs {
    name: String,
    /// Size parameter; may also be given as --n
    #[arg(conflicts_with = "n_flag")]
    n_pos: Option<usize>,
    #[arg(long = "n")]
    n_flag: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
}

enum CliError {
    Usage(String),
    CheckFailure,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::CheckFailure) => ExitCode::from(1),
    }
}

fn parse_spec(text: &str) -> Result<SeriesSpec, CliError> {
    SeriesSpec::parse(text).map_err(|e| usage(e.to_string()))
}

fn resolve(text: &str, order: usize) -> Result<riordan_core::QSeries, CliError> {
    parse_spec(text)?.resolve(order).map_err(usage)
}

fn parse_beta(text: &str) -> Result<Rat, CliError> {
    parse_rat(text).ok_or_else(|| usage(format!("malformed rational '{text}'")))
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let doc = match &cli.cmd {
        Cmd::Euler { n } => poly_doc(&euler_poly(*n)),
        Cmd::Narayana { n } => poly_doc(&narayana_poly(*n)),
        Cmd::NarayanaB { n } => poly_doc(&narayana_b_poly(*n)),
        Cmd::Gep(args) => pipeline(&args.series, args.n, Flavor::Ordinary)?,
        Cmd::Gnp(args) => pipeline(&args.series, args.n, Flavor::Exponential)?,
        Cmd::Numerator(args) => {
            let flavor = match args.flavor.as_str() {
                "ordinary" => Flavor::Ordinary,
                "exponential" => Flavor::Exponential,
                other => return Err(usage(format!("unknown flavor '{other}'"))),
            };
            let order = default_order(args.n);
            let a = resolve(&args.series, order)?;
            let b = resolve(&args.b, order)?;
            let pair = SeriesPair::new(b, a).map_err(|e| usage(e.to_string()))?;
            let res = numerator(&pair, flavor, args.n).map_err(|e| usage(e.to_string()))?;
            numerator_doc(&res)
        }
        Cmd::Matrix(args) => {
            let op = OpName::parse(&args.name)
                .ok_or_else(|| usage(format!("unknown matrix name '{}'", args.name)))?;
            let n = args
                .n_pos
                .or(args.n_flag)
                .ok_or_else(|| usage("matrix size is required (positional or --n)"))?;
            let beta = match &args.beta {
                Some(b) => Some(parse_beta(b)?),
                None => None,
            };
            if op.takes_beta() && beta.is_none() {
                return Err(usage(format!("matrix {} requires --beta", op.token())));
            }
            let m = build(op, n, beta.as_ref()).map_err(|e| usage(e.to_string()))?;
            matrix_doc(&m)
        }
        Cmd::Series { spec, order } => series_doc(&resolve(spec, *order)?),
        Cmd::Lagrange {
            series,
            beta,
            phi,
            order,
        } => {
            let a = resolve(series, *order)?;
            let beta = parse_beta(beta)?;
            let phi = parse_beta(phi)?;
            let out = lagrange_associate(&a, &beta, &phi).map_err(|e| usage(e.to_string()))?;
            series_doc(&out)
        }
        Cmd::Check {
            ids,
            max_n,
            beta_grid,
            guard,
        } => {
            let mut params = CheckParams::default();
            params.max_n = *max_n;
            params.guard = *guard;
            if let Some(grid) = beta_grid {
                params.beta_grid = grid
                    .split(',')
                    .map(|t| parse_beta(t.trim()))
                    .collect::<Result<Vec<_>, _>>()?;
            }
            let ids = if ids.is_empty() {
                CheckId::all()
            } else {
                ids.iter()
                    .map(|t| {
                        CheckId::parse(t).ok_or_else(|| usage(format!("unknown check id '{t}'")))
                    })
                    .collect::<Result<Vec<_>, _>>()?
            };
            let reports = run_suite(&ids, &params);
            let all_pass = reports.iter().all(|r| r.verdict == Verdict::Pass);
            let rendered = render_doc(&report_doc(&reports), cli.json);
            if all_pass {
                return Ok(rendered);
            }
            println!("{rendered}");
            return Err(CliError::CheckFailure);
        }
    };
    Ok(render_doc(&doc, cli.json))
}

fn pipeline(series: &str, n: usize, flavor: Flavor) -> Result<output::OutputDoc, CliError> {
    let order = default_order(n);
    let a = resolve(series, order)?;
    let pair = SeriesPair::with_unit_b(a).map_err(|e| usage(e.to_string()))?;
    let res = numerator(&pair, flavor, n).map_err(|e| usage(e.to_string()))?;
    Ok(numerator_doc(&res))
}
