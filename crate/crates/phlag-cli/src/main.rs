//! Command-line driver for the batch pipeline.
//!
//! Every verb reads the same JSON run configuration, runs a prefix of
//! the pipeline, and writes CSV artifacts plus `run_manifest.json` into
//! the output directory. Exit codes: `0` full success, `2` when one or
//! more tasks or null-model groups failed (surviving outputs are still
//! written), `1` on configuration or input errors.

mod config;
mod emit;
mod ingest;
mod manifest;
mod pipeline;
mod task;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::config::{Overrides, RunConfig};
use crate::pipeline::{run_pipeline, Verb};

#[derive(Debug, Parser)]
#[command(
    name = "phlag",
    version,
    about = "Batch persistent-homology pipeline for co-occurrence networks",
    long_about = "Builds inverse-co-occurrence weighted networks from publication \
records, filters them into flag (clique) complexes, computes persistent homology \
over Z2, and compares Betti profiles across fields, periods, and matched \
random-graph baselines. All artifacts are CSV files plus a JSON manifest."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the weighted networks only.
    Build(RunArgs),
    /// Networks plus persistent homology: Betti tables, diagrams, time series.
    Persist(RunArgs),
    /// Persistence plus diagram-distance tables.
    Distances(RunArgs),
    /// Persistence plus matched random-graph baselines.
    Baselines(RunArgs),
    /// Networks plus classical network measures.
    Measures(RunArgs),
    /// The full pipeline, including topology-vs-measure correlations.
    All(RunArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Path to the JSON run configuration.
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Output directory (overrides the configuration).
    #[arg(long, value_name = "DIR")]
    output: Option<PathBuf>,
    /// Worker-thread count (overrides the configuration).
    #[arg(long, value_name = "N")]
    workers: Option<usize>,
    /// Run seed; offsets every null-model seed (overrides the configuration).
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
    /// Comma-separated fields to include (overrides the configuration).
    #[arg(long, value_name = "a,b,c", value_delimiter = ',')]
    fields: Option<Vec<String>>,
    /// Inclusive period range, e.g. 1976:2010 (overrides the configuration).
    #[arg(long, value_name = "START:END")]
    periods: Option<String>,
    /// Period granularity: yearly or monthly (overrides the configuration).
    #[arg(long, value_name = "GRAN")]
    granularity: Option<String>,
    /// Highest homology dimension to compute (overrides the configuration).
    #[arg(long, value_name = "K")]
    homology_cap: Option<usize>,
    /// Abort a task beyond this many enumerated cells (overrides the configuration).
    #[arg(long, value_name = "N")]
    cell_budget: Option<usize>,
    /// Drop degree-zero nodes before analysis.
    #[arg(long)]
    drop_isolates: bool,
}

impl RunArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            output: self.output.clone(),
            workers: self.workers,
            seed: self.seed,
            fields: self.fields.clone(),
            periods: self.periods.clone(),
            granularity: self.granularity.clone(),
            homology_cap: self.homology_cap,
            cell_budget: self.cell_budget,
            drop_isolates: self.drop_isolates,
        }
    }
}

fn main() -> ExitCode {
    // Argument errors are configuration errors (exit 1); help and
    // version requests exit 0.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1u8 } else { 0u8 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let (verb, args) = match &cli.command {
        Command::Build(a) => (Verb::Build, a),
        Command::Persist(a) => (Verb::Persist, a),
        Command::Distances(a) => (Verb::Distances, a),
        Command::Baselines(a) => (Verb::Baselines, a),
        Command::Measures(a) => (Verb::Measures, a),
        Command::All(a) => (Verb::All, a),
    };
    match run(verb, args) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(verb: Verb, args: &RunArgs) -> anyhow::Result<ExitCode> {
    let config = RunConfig::load(&args.config, &args.overrides())?;
    let report = run_pipeline(&config, verb)?;
    println!(
        "tasks: {} total, {} ok, {} empty, {} failed",
        report.tasks_total, report.tasks_ok, report.tasks_empty, report.tasks_failed
    );
    if report.null_groups > 0 {
        println!(
            "null groups: {} total, {} failed",
            report.null_groups, report.null_groups_failed
        );
    }
    println!(
        "wrote {} files; manifest at {}",
        report.output_files,
        report.manifest_path.display()
    );
    Ok(ExitCode::from(report.exit_code() as u8))
}
