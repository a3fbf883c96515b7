use std::path::{Path, PathBuf};

use crate::engine::SimpleEvolution;
use crate::error::{Error, Result};

use super::config::ExperimentConfig;
use super::stats_csv::write_stats_csv;

pub const STATS_FILE: &str = "stats.csv";
pub const BEST_TREE_FILE: &str = "best_tree.txt";
pub const SUMMARY_FILE: &str = "summary.txt";

/// Command-line values that take precedence over the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub max_generation: Option<usize>,
    pub max_workers: Option<usize>,
    /// Defaults to `./out`.
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub best_fitness: f64,
    pub best_raw: f64,
    pub generations: usize,
    pub terminated_early: bool,
    pub out_dir: PathBuf,
    pub best_text: String,
}

/// Loads `config_path`, applies `overrides`, runs to completion and writes
/// `stats.csv`, `best_tree.txt` and `summary.txt` into the output directory.
pub fn run_experiment(config_path: impl AsRef<Path>, overrides: &Overrides) -> Result<RunReport> {
    let config_path = config_path.as_ref();
    let mut cfg = ExperimentConfig::load(config_path)?;
    if let Some(seed) = overrides.seed {
        cfg.seed = seed;
    }
    if let Some(n) = overrides.max_generation {
        cfg.max_generation = n;
    }
    if let Some(n) = overrides.max_workers {
        cfg.max_workers = n;
    }
    let base = config_path.parent().unwrap_or(Path::new("."));
    let algo = cfg.build(base)?;

    let out_dir = overrides
        .out_dir
        .clone()
        .unwrap_or_else(|| PathBuf::from("out"));
    std::fs::create_dir_all(&out_dir).map_err(|e| Error::io(&out_dir, e))?;

    let mut evo = SimpleEvolution::new(algo)?;
    let outcome = evo.evolve()?;
    let best = &outcome.best;
    let report = RunReport {
        best_fitness: best.fitness().value()?,
        best_raw: best.fitness().raw()?,
        generations: outcome.generations,
        terminated_early: outcome.terminated_early,
        out_dir: out_dir.clone(),
        best_text: best.genome().to_text(),
    };

    write_stats_csv(&outcome.stats, out_dir.join(STATS_FILE))?;
    write_file(
        &out_dir.join(BEST_TREE_FILE),
        &format!("{}\n", report.best_text),
    )?;
    let summary = format!(
        "best_fitness = {}\nbest_raw_fitness = {}\ngenerations = {}\nterminated_early = {}\nseed = {}\n",
        report.best_fitness, report.best_raw, report.generations, report.terminated_early, cfg.seed
    );
    write_file(&out_dir.join(SUMMARY_FILE), &summary)?;
    Ok(report)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}
