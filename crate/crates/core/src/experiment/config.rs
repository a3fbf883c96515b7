use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::engine::{
    AlgorithmConfig, OperatorSpec, SymbolicRegressionSettings,
    ThresholdFromTargetTerminationChecker,
};
use crate::error::{Error, Result};
use crate::evaluation::{OneMaxEvaluator, RegressionProblem};
use crate::ga::{VectorCreator, VectorSpec};
use crate::gp::{create_terminal_set, TerminalSet};
use crate::individual::GenomeKind;
use crate::population::{Population, Subpopulation};
use crate::variation::SelectionConfig;

use super::dataset::load_dataset_csv;

/// Which fitness landscape a run explores.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProblemConfig {
    /// Symbolic regression of `x + 2y + 3z` over the built-in lattice.
    BuiltinSymreg {},
    /// Symbolic regression over a CSV file; a relative path is taken from
    /// the config file's directory.
    CsvRegression { path: PathBuf },
    /// Maximize the number of ones in a bit vector.
    BuiltinOnemax { length: usize },
}

impl ProblemConfig {
    fn genome_kind(&self) -> GenomeKind {
        match self {
            ProblemConfig::BuiltinOnemax { .. } => GenomeKind::Vector,
            _ => GenomeKind::Tree,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TerminationConfig {
    pub optimal: f64,
    pub threshold: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorEntry {
    pub name: String,
    pub probability: f64,
    pub arity: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cell_probability: Option<f64>,
}

impl OperatorEntry {
    fn spec(&self) -> Result<OperatorSpec> {
        let mut spec = OperatorSpec::new(self.name.parse()?, self.probability, self.arity);
        spec.cell_probability = self.cell_probability;
        Ok(spec)
    }
}

/// A complete, file-backed description of one run. Missing keys fall back to
/// the symbolic-regression defaults; unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub population_size: usize,
    pub init_depth: [usize; 2],
    pub elitism_rate: f64,
    pub bloat_weight: f64,
    pub tournament_size: usize,
    pub max_generation: usize,
    pub max_workers: usize,
    pub problem: ProblemConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub termination: Option<TerminationConfig>,
    pub operator_sequence: Vec<OperatorEntry>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let s = SymbolicRegressionSettings::default();
        ExperimentConfig {
            seed: s.seed,
            population_size: s.population_size,
            init_depth: [s.init_depth.0, s.init_depth.1],
            elitism_rate: s.elitism_rate,
            bloat_weight: s.bloat_weight,
            tournament_size: s.tournament_size,
            max_generation: s.max_generation,
            max_workers: s.max_workers,
            problem: ProblemConfig::BuiltinSymreg {},
            termination: s.termination.map(|t| TerminationConfig {
                optimal: t.optimal,
                threshold: t.threshold,
            }),
            operator_sequence: s
                .operators
                .iter()
                .map(|o| OperatorEntry {
                    name: o.kind.name().to_string(),
                    probability: o.probability,
                    arity: o.arity,
                    cell_probability: None,
                })
                .collect(),
        }
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Config(msg()))
    }
}

impl ExperimentConfig {
    /// Parses and validates TOML text.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        check(self.population_size >= 1, || {
            "population_size must be >= 1".into()
        })?;
        let [lo, hi] = self.init_depth;
        check(lo >= 1 && lo <= hi, || {
            format!("init_depth [{lo}, {hi}] needs 1 <= lo <= hi")
        })?;
        check((0.0..=1.0).contains(&self.elitism_rate), || {
            format!("elitism_rate {} outside [0, 1]", self.elitism_rate)
        })?;
        check(
            self.bloat_weight.is_finite() && self.bloat_weight >= 0.0,
            || format!("bloat_weight {} must be finite and >= 0", self.bloat_weight),
        )?;
        check(self.tournament_size >= 1, || {
            "tournament_size must be >= 1".into()
        })?;
        check(self.max_generation >= 1, || {
            "max_generation must be >= 1".into()
        })?;
        check(self.max_workers >= 1, || "max_workers must be >= 1".into())?;
        if let Some(t) = self.termination {
            ThresholdFromTargetTerminationChecker::new(t.optimal, t.threshold)?;
        }
        if let ProblemConfig::BuiltinOnemax { length } = self.problem {
            check(length >= 1, || "problem.length must be >= 1".into())?;
        }
        let kind = self.problem.genome_kind();
        for entry in &self.operator_sequence {
            let spec = entry.spec()?;
            let op = spec.build(self.vector_length().or(Some(1)))?;
            check(
                op.operator().genome_kind().is_none_or(|k| k == kind),
                || {
                    format!(
                        "operator `{}` does not apply to {kind:?} genomes",
                        entry.name
                    )
                },
            )?;
        }
        Ok(())
    }

    fn vector_length(&self) -> Option<usize> {
        match self.problem {
            ProblemConfig::BuiltinOnemax { length } => Some(length),
            _ => None,
        }
    }

    fn settings(&self) -> Result<SymbolicRegressionSettings> {
        Ok(SymbolicRegressionSettings {
            population_size: self.population_size,
            init_depth: (self.init_depth[0], self.init_depth[1]),
            elitism_rate: self.elitism_rate,
            bloat_weight: self.bloat_weight,
            operators: self
                .operator_sequence
                .iter()
                .map(OperatorEntry::spec)
                .collect::<Result<_>>()?,
            tournament_size: self.tournament_size,
            max_generation: self.max_generation,
            max_workers: self.max_workers,
            termination: self
                .termination
                .map(|t| ThresholdFromTargetTerminationChecker::new(t.optimal, t.threshold))
                .transpose()?,
            seed: self.seed,
            ..SymbolicRegressionSettings::default()
        })
    }

    /// Builds the engine configuration. `base_dir` anchors relative dataset
    /// paths.
    pub fn build(&self, base_dir: &Path) -> Result<AlgorithmConfig> {
        self.validate()?;
        let settings = self.settings()?;
        match &self.problem {
            ProblemConfig::BuiltinSymreg {} => settings.build(
                Arc::new(RegressionProblem::reference()),
                Arc::new(TerminalSet::default()),
            ),
            ProblemConfig::CsvRegression { path } => {
                let problem = load_dataset_csv(base_dir.join(path))?;
                let terminals = create_terminal_set(problem.n_features())?;
                settings.build(Arc::new(problem), Arc::new(terminals))
            }
            ProblemConfig::BuiltinOnemax { length } => {
                let spec = Arc::new(VectorSpec::bits(*length)?);
                let operators = settings
                    .operators
                    .iter()
                    .map(|o| o.build(Some(*length)))
                    .collect::<Result<Vec<_>>>()?;
                let sub =
                    Subpopulation::new(Arc::new(OneMaxEvaluator), Arc::new(VectorCreator { spec }))
                        .with_population_size(self.population_size)
                        .with_elitism_rate(self.elitism_rate)
                        .with_operators(operators)
                        .with_selection(SelectionConfig::tournament(self.tournament_size))
                        .with_higher_is_better(true);
                let mut cfg = AlgorithmConfig::new(Population::single(sub));
                cfg.max_generation = self.max_generation;
                cfg.max_workers = self.max_workers;
                cfg.seed = self.seed;
                cfg.termination_checker = settings
                    .termination
                    .map(|t| Arc::new(t) as Arc<dyn crate::engine::TerminationChecker>);
                cfg.validate()?;
                Ok(cfg)
            }
        }
    }
}
