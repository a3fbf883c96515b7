//! Evolution orchestration: the generational loop, breeder, termination
//! checkers and statistics.

mod algorithm;
mod breeder;
mod settings;
mod statistics;
mod termination;

pub use algorithm::{AlgorithmConfig, EvolutionOutcome, SimpleEvolution};
pub use breeder::{Breeder, SimpleBreeder};
pub use settings::{OperatorKind, OperatorSpec, SymbolicRegressionSettings};
pub use statistics::{
    record_generation_stats, BestAverageWorstStatistics, GenerationStats, Statistics,
};
pub use termination::{
    check_termination_threshold, TerminationChecker, ThresholdFromTargetTerminationChecker,
};
