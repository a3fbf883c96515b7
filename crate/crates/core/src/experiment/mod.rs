//! Experiment runner: declarative run configuration, CSV datasets, and the
//! on-disk artifacts of a run.

mod config;
mod dataset;
mod runner;
mod stats_csv;

pub use config::{ExperimentConfig, OperatorEntry, ProblemConfig, TerminationConfig};
pub use dataset::{load_dataset_csv, parse_dataset_csv};
pub use runner::{run_experiment, Overrides, RunReport, BEST_TREE_FILE, STATS_FILE, SUMMARY_FILE};
pub use stats_csv::{format_stats_csv, write_stats_csv, STATS_HEADER};
