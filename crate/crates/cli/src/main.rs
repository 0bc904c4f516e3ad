//! `maya`: command-line front end for maya-core.

mod config;
mod dimer;
mod entropy;
mod kernel;
mod output;
mod sample;
mod shape;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{CommandFactory, Parser, Subcommand};

use maya_core::verify::{run_suite, Suite};
use output::{CliError, Ctx, Format};

#[derive(Debug, Parser)]
#[command(name = "maya", version, about = "Maya diagrams, m-TASEP entropy, dimer kernels and limit shapes")]
struct Cli {
    /// `key = value` file; explicit flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Write results here instead of stdout.
    #[arg(long, short = 'o', global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Worker threads for parameter sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form entropy against the numeric spectral radius.
    Entropy(entropy::EntropyArgs),
    /// Run an invariant suite: young, mtasep, dimer, shape or all.
    Verify { suite: String },
    /// Random tableaux, chain trajectories and frozen jump processes.
    #[command(subcommand)]
    Sample(sample::SampleKind),
    /// Correlation kernel tables.
    #[command(subcommand)]
    Kernel(kernel::KernelKind),
    /// Limit shape, the functional and sampled boundary curves.
    #[command(subcommand)]
    Shape(shape::ShapeKind),
    /// Cylinder graphs, matchings and the mirrored-graph check.
    #[command(subcommand)]
    Dimer(dimer::DimerKind),
}

fn verify(ctx: &Ctx, suite: &str) -> Result<bool, CliError> {
    let suite: Suite = suite.parse()?;
    let report = run_suite(suite);
    let failed = report.checks.iter().filter(|c| !c.passed).count();
    eprintln!("{}: {} checks, {failed} failed", report.suite, report.checks.len());
    match ctx.format(Format::Json, &[Format::Json, Format::Csv])? {
        Format::Csv => {
            let rows = report.checks.iter().map(|c| {
                vec![
                    c.suite.to_string(),
                    c.name.to_string(),
                    c.passed.to_string(),
                    format!("{:e}", c.value),
                    format!("{:e}", c.tolerance),
                    format!("{:.3}", c.seconds),
                ]
            });
            ctx.emit(&output::csv(&["suite", "name", "passed", "value", "tolerance", "seconds"], rows))?;
        }
        _ => ctx.emit_json(&report)?,
    }
    Ok(report.passed)
}

fn dispatch(cli: Cli) -> Result<bool, CliError> {
    let ctx = Ctx::new(cli.format, cli.output, cli.jobs)?;
    match cli.command {
        Command::Entropy(a) => entropy::run(&ctx, a),
        Command::Verify { suite } => verify(&ctx, &suite),
        Command::Sample(k) => sample::run(&ctx, k),
        Command::Kernel(k) => kernel::run(&ctx, k),
        Command::Shape(k) => shape::run(&ctx, k),
        Command::Dimer(k) => dimer::run(&ctx, k),
    }
}

fn main() -> ExitCode {
    let raw: Vec<String> = std::env::args_os().map(|a| a.to_string_lossy().into_owned()).collect();
    let args = match config::merge(raw, &Cli::command()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
