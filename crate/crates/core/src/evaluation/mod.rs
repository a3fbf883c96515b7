//! Individual and population evaluation.
//!
//! Evaluators never see a random source, so the fitness of a genome is a
//! pure function of the genome. That is what lets
//! [`Dispatcher::evaluate`] spread work across threads and still produce
//! bit-identical results for every worker count.

mod onemax;
mod problem;
mod symreg;

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fitness::Fitness;
use crate::individual::{Genome, Individual, IndividualId};
use crate::population::Population;

pub use onemax::OneMaxEvaluator;
pub use problem::RegressionProblem;
pub use symreg::{apply_bloat_penalty, symreg_error, BloatConfig, SymbolicRegressionEvaluator};

/// Objective value of a genome: `value` is compared by selection, `raw` is
/// the objective before any parsimony penalty.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Score {
    pub value: f64,
    pub raw: f64,
}

impl Score {
    pub fn plain(value: f64) -> Self {
        Score { value, raw: value }
    }
}

pub trait IndividualEvaluator: Send + Sync + fmt::Debug {
    /// Scores a genome. Return [`Error::Evaluation`] (or a non-finite score)
    /// for per-individual failures; other errors abort the run.
    fn evaluate(&self, genome: &Genome, higher_is_better: bool) -> Result<Score>;
}

/// Returns the cached fitness if present, otherwise evaluates. Failed
/// evaluations yield [`Fitness::worst`].
pub fn evaluate_individual(
    evaluator: &dyn IndividualEvaluator,
    individual: &Individual,
    higher_is_better: bool,
) -> Result<Fitness> {
    if individual.is_evaluated() {
        return Ok(*individual.fitness());
    }
    match evaluator.evaluate(individual.genome(), higher_is_better) {
        Ok(s) if s.value.is_finite() && s.raw.is_finite() => {
            Fitness::with_raw(s.value, s.raw, higher_is_better)
        }
        Ok(_) | Err(Error::Evaluation(_)) => Ok(Fitness::worst(higher_is_better)),
        Err(e) => Err(e),
    }
}

/// Fans evaluations out over a fixed number of workers.
pub struct Dispatcher {
    pool: Option<rayon::ThreadPool>,
    workers: usize,
}

impl fmt::Debug for Dispatcher {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Dispatcher")
            .field("workers", &self.workers)
            .finish()
    }
}

impl Dispatcher {
    pub fn new(max_workers: usize) -> Result<Self> {
        if max_workers == 0 {
            return Err(Error::config("max_workers must be >= 1"));
        }
        let pool = if max_workers > 1 {
            Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(max_workers)
                    .build()
                    .map_err(|e| Error::config(format!("cannot start worker pool: {e}")))?,
            )
        } else {
            None
        };
        Ok(Dispatcher {
            pool,
            workers: max_workers,
        })
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    /// Evaluates every unevaluated individual exactly once. Returns
    /// `(subpopulation index, id)` of each fresh evaluation, sorted by id.
    pub fn evaluate(&self, population: &mut Population) -> Result<Vec<(usize, IndividualId)>> {
        let mut pending: Vec<(usize, usize)> = Vec::new();
        for (s, sub) in population.subpopulations().iter().enumerate() {
            for (i, ind) in sub.individuals().iter().enumerate() {
                if !ind.is_evaluated() {
                    pending.push((s, i));
                }
            }
        }
        if pending.is_empty() {
            return Ok(Vec::new());
        }

        let results: Vec<Result<Fitness>> = {
            let pop: &Population = population;
            let job = |&(s, i): &(usize, usize)| {
                let sub = &pop.subpopulations()[s];
                evaluate_individual(
                    sub.evaluator().as_ref(),
                    &sub.individuals()[i],
                    sub.higher_is_better(),
                )
            };
            match &self.pool {
                Some(pool) => pool.install(|| pending.par_iter().map(job).collect()),
                None => pending.iter().map(job).collect(),
            }
        };

        let mut done = Vec::with_capacity(pending.len());
        for (&(s, i), result) in pending.iter().zip(results) {
            let fitness = result?;
            let ind = &mut population.subpopulations_mut()[s].individuals_mut()[i];
            ind.set_fitness(fitness);
            done.push((s, ind.id()));
        }
        done.sort_by_key(|&(_, id)| id);
        Ok(done)
    }
}

/// Evaluates all unevaluated individuals with up to `max_workers` threads
/// and returns how many were evaluated.
pub fn evaluate_population(population: &mut Population, max_workers: usize) -> Result<usize> {
    Ok(Dispatcher::new(max_workers)?.evaluate(population)?.len())
}
