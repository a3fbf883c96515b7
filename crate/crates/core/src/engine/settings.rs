use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::evaluation::{RegressionProblem, SymbolicRegressionEvaluator};
use crate::gp::{FunctionSet, RampedHalfAndHalfCreator, TerminalSet};
use crate::population::{Population, Subpopulation};
use crate::variation::{
    ErcMutation, OnePointCrossover, OperatorConfig, PerCellMutation, SelectionConfig,
    SubtreeCrossover, SubtreeMutation,
};

use super::algorithm::AlgorithmConfig;
use super::statistics::Statistics;
use super::termination::ThresholdFromTargetTerminationChecker;

/// Built-in operators addressable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    SubtreeCrossover,
    SubtreeMutation,
    ErcMutation,
    OnePointCrossover,
    PerCellMutation,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 5] = [
        OperatorKind::SubtreeCrossover,
        OperatorKind::SubtreeMutation,
        OperatorKind::ErcMutation,
        OperatorKind::OnePointCrossover,
        OperatorKind::PerCellMutation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::SubtreeCrossover => "subtree_crossover",
            OperatorKind::SubtreeMutation => "subtree_mutation",
            OperatorKind::ErcMutation => "erc_mutation",
            OperatorKind::OnePointCrossover => "one_point_crossover",
            OperatorKind::PerCellMutation => "per_cell_mutation",
        }
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OperatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OperatorKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::config(format!("unknown operator `{s}`")))
    }
}

/// Declarative operator entry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorSpec {
    pub kind: OperatorKind,
    pub probability: f64,
    pub arity: usize,
    /// Per-cell rate for `per_cell_mutation`; defaults to 1 / length.
    pub cell_probability: Option<f64>,
}

impl OperatorSpec {
    pub fn new(kind: OperatorKind, probability: f64, arity: usize) -> Self {
        OperatorSpec {
            kind,
            probability,
            arity,
            cell_probability: None,
        }
    }

    pub fn build(&self, vector_length: Option<usize>) -> Result<OperatorConfig> {
        let op: Arc<dyn crate::variation::GeneticOperator> = match self.kind {
            OperatorKind::SubtreeCrossover => Arc::new(SubtreeCrossover::default()),
            OperatorKind::SubtreeMutation => Arc::new(SubtreeMutation::default()),
            OperatorKind::ErcMutation => Arc::new(ErcMutation),
            OperatorKind::OnePointCrossover => Arc::new(OnePointCrossover),
            OperatorKind::PerCellMutation => {
                let p = match (self.cell_probability, vector_length) {
                    (Some(p), _) => p,
                    (None, Some(n)) => 1.0 / n as f64,
                    (None, None) => {
                        return Err(Error::config("per_cell_mutation needs cell_probability"))
                    }
                };
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::config(format!(
                        "cell_probability {p} outside [0, 1]"
                    )));
                }
                Arc::new(PerCellMutation {
                    cell_probability: p,
                })
            }
        };
        OperatorConfig::new(op, self.probability, self.arity)
    }
}

/// Knobs of a tree-GP symbolic-regression run. The defaults are the
/// standard parameter set: population 200, ramped half-and-half over depths
/// 2..=4, bloat weight 1e-4, crossover 0.9 / subtree mutation 0.2 / ERC
/// mutation 0.05, elitism 5%, 500 generations, stop at MAE 0.001.
#[derive(Debug, Clone)]
pub struct SymbolicRegressionSettings {
    pub population_size: usize,
    pub init_depth: (usize, usize),
    pub elitism_rate: f64,
    pub bloat_weight: f64,
    pub operators: Vec<OperatorSpec>,
    pub tournament_size: usize,
    pub max_generation: usize,
    pub max_workers: usize,
    pub termination: Option<ThresholdFromTargetTerminationChecker>,
    pub seed: u64,
    pub function_set: Arc<FunctionSet>,
    pub statistics: Vec<Arc<dyn Statistics>>,
}

impl Default for SymbolicRegressionSettings {
    fn default() -> Self {
        SymbolicRegressionSettings {
            population_size: 200,
            init_depth: (2, 4),
            elitism_rate: 0.05,
            bloat_weight: 1e-4,
            operators: vec![
                OperatorSpec::new(OperatorKind::SubtreeCrossover, 0.9, 2),
                OperatorSpec::new(OperatorKind::SubtreeMutation, 0.2, 1),
                OperatorSpec::new(OperatorKind::ErcMutation, 0.05, 1),
            ],
            tournament_size: 4,
            max_generation: 500,
            max_workers: 4,
            termination: Some(ThresholdFromTargetTerminationChecker {
                optimal: 0.0,
                threshold: 0.001,
            }),
            seed: 0,
            function_set: Arc::new(FunctionSet::default()),
            statistics: Vec::new(),
        }
    }
}

impl SymbolicRegressionSettings {
    /// Single-subpopulation minimizing run over `problem`.
    pub fn build(
        &self,
        problem: Arc<RegressionProblem>,
        terminals: Arc<TerminalSet>,
    ) -> Result<AlgorithmConfig> {
        let evaluator = SymbolicRegressionEvaluator::new(problem, self.bloat_weight)?;
        let creator =
            RampedHalfAndHalfCreator::new(self.init_depth, self.function_set.clone(), terminals);
        let operators = self
            .operators
            .iter()
            .map(|o| o.build(None))
            .collect::<Result<Vec<_>>>()?;
        let sub = Subpopulation::new(Arc::new(evaluator), Arc::new(creator))
            .with_population_size(self.population_size)
            .with_elitism_rate(self.elitism_rate)
            .with_operators(operators)
            .with_selection(SelectionConfig::tournament(self.tournament_size))
            .with_higher_is_better(false);
        let mut cfg = AlgorithmConfig::new(Population::single(sub));
        cfg.max_generation = self.max_generation;
        cfg.max_workers = self.max_workers;
        cfg.seed = self.seed;
        cfg.termination_checker = self
            .termination
            .map(|t| Arc::new(t) as Arc<dyn super::TerminationChecker>);
        cfg.statistics = self.statistics.clone();
        cfg.validate()?;
        Ok(cfg)
    }
}
