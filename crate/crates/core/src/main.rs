use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use evokit::experiment::{run_experiment, Overrides};
use evokit::Error;

/// Run an evolutionary experiment described by a TOML config.
#[derive(Debug, Parser)]
#[command(name = "evokit", version)]
struct Cli {
    /// Experiment config file.
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Overrides the config's seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Overrides the config's generation limit.
    #[arg(long, value_name = "N")]
    max_generation: Option<usize>,
    /// Overrides the config's evaluation worker count.
    #[arg(long, value_name = "N")]
    max_workers: Option<usize>,
    /// Directory for stats.csv, best_tree.txt and summary.txt.
    #[arg(long, value_name = "DIR", default_value = "out")]
    out: PathBuf,
}

fn is_user_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Config(_)
            | Error::Dataset(_)
            | Error::Io { .. }
            | Error::MissingBinding(_)
            | Error::GenomeKind { .. }
            | Error::TreeSyntax { .. }
            | Error::UnknownSymbol { .. }
            | Error::ArityMismatch { .. }
            | Error::InvalidVector(_)
    )
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let overrides = Overrides {
        seed: cli.seed,
        max_generation: cli.max_generation,
        max_workers: cli.max_workers,
        out_dir: Some(cli.out),
    };
    match run_experiment(&cli.config, &overrides) {
        Ok(report) => {
            println!("best fitness: {}", report.best_fitness);
            println!("raw fitness: {}", report.best_raw);
            println!("generations: {}", report.generations);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if is_user_error(&e) { 1 } else { 2 })
        }
    }
}
