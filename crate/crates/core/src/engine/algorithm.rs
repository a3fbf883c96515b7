use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::evaluation::Dispatcher;
use crate::events::{Event, EventBus};
use crate::individual::{IdCounter, Individual, IndividualId};
use crate::population::Population;
use crate::seeded_rng;

use super::breeder::{Breeder, SimpleBreeder};
use super::statistics::{record_generation_stats, GenerationStats, Statistics};
use super::termination::TerminationChecker;

/// Everything needed for one evolutionary run.
#[derive(Clone)]
pub struct AlgorithmConfig {
    pub population: Population,
    pub breeder: Arc<dyn Breeder>,
    pub max_generation: usize,
    pub termination_checker: Option<Arc<dyn TerminationChecker>>,
    pub max_workers: usize,
    pub statistics: Vec<Arc<dyn Statistics>>,
    pub seed: u64,
}

impl fmt::Debug for AlgorithmConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgorithmConfig")
            .field("population", &self.population)
            .field("breeder", &self.breeder)
            .field("max_generation", &self.max_generation)
            .field("termination_checker", &self.termination_checker)
            .field("max_workers", &self.max_workers)
            .field("statistics", &self.statistics)
            .field("seed", &self.seed)
            .finish()
    }
}

impl AlgorithmConfig {
    /// Simple breeder, 100 generations, one worker, seed 0, no checker.
    pub fn new(population: Population) -> Self {
        AlgorithmConfig {
            population,
            breeder: Arc::new(SimpleBreeder),
            max_generation: 100,
            termination_checker: None,
            max_workers: 1,
            statistics: Vec::new(),
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_generation == 0 {
            return Err(Error::config("max_generation must be >= 1"));
        }
        if self.max_workers == 0 {
            return Err(Error::config("max_workers must be >= 1"));
        }
        let subs = self.population.subpopulations();
        for sub in subs {
            sub.validate()?;
        }
        if subs
            .iter()
            .any(|s| s.higher_is_better() != subs[0].higher_is_better())
        {
            return Err(Error::config(
                "all subpopulations must share the optimization direction",
            ));
        }
        Ok(())
    }
}

/// Result of a completed run.
#[derive(Debug, Clone)]
pub struct EvolutionOutcome {
    /// All-time best over every subpopulation.
    pub best: Individual,
    pub best_per_subpopulation: Vec<Individual>,
    /// Generations bred, at most `max_generation`.
    pub generations: usize,
    pub terminated_early: bool,
    /// One row per subpopulation per generation.
    pub stats: Vec<GenerationStats>,
    pub evaluations: usize,
}

/// Generational evolution over a population: the run's entry point.
pub struct SimpleEvolution {
    config: AlgorithmConfig,
    bus: EventBus,
    population: Option<Population>,
    outcome: Option<EvolutionOutcome>,
}

impl fmt::Debug for SimpleEvolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimpleEvolution")
            .field("config", &self.config)
            .field("bus", &self.bus)
            .field("evolved", &self.outcome.is_some())
            .finish()
    }
}

impl SimpleEvolution {
    pub fn new(config: AlgorithmConfig) -> Result<Self> {
        config.validate()?;
        let mut bus = EventBus::new();
        for s in &config.statistics {
            s.attach(&mut bus);
        }
        Ok(SimpleEvolution {
            config,
            bus,
            population: None,
            outcome: None,
        })
    }

    pub fn config(&self) -> &AlgorithmConfig {
        &self.config
    }

    pub fn events_mut(&mut self) -> &mut EventBus {
        &mut self.bus
    }

    /// Population as of the end of the last run.
    pub fn population(&self) -> Option<&Population> {
        self.population.as_ref()
    }

    pub fn outcome(&self) -> Option<&EvolutionOutcome> {
        self.outcome.as_ref()
    }

    pub fn best(&self) -> Option<&Individual> {
        self.outcome.as_ref().map(|o| &o.best)
    }

    /// Runs from a fresh population. Calling it again restarts from the seed.
    pub fn evolve(&mut self) -> Result<&EvolutionOutcome> {
        let cfg = &self.config;
        let mut rng = seeded_rng(cfg.seed);
        let mut ids = IdCounter::new();
        let dispatcher = Dispatcher::new(cfg.max_workers)?;
        let mut pop = cfg.population.clone();

        for sub in pop.subpopulations_mut() {
            sub.initialize(&mut ids, &mut rng)?;
        }
        self.bus
            .publish(&Event::EvolutionStarted { population: &pop })?;

        let mut evaluations = 0;
        let fresh = dispatcher.evaluate(&mut pop)?;
        evaluations += fresh.len();
        publish_evaluations(&mut self.bus, &pop, &fresh, 0)?;

        let mut bests: Vec<Individual> = Vec::with_capacity(pop.len());
        for sub in pop.subpopulations() {
            bests.push(current_best(sub.individuals())?.clone());
        }

        let mut stats = Vec::new();
        let mut generations = 0;
        let mut terminated_early = false;
        for generation in 1..=cfg.max_generation {
            self.bus.publish(&Event::GenerationStarted {
                generation,
                population: &pop,
            })?;

            for sub in pop.subpopulations_mut() {
                let next = cfg.breeder.breed(sub, &mut ids, &mut rng)?;
                sub.set_individuals(next)?;
            }

            let fresh = dispatcher.evaluate(&mut pop)?;
            evaluations += fresh.len();
            publish_evaluations(&mut self.bus, &pop, &fresh, generation)?;

            let mut rows = Vec::with_capacity(pop.len());
            for (s, sub) in pop.subpopulations().iter().enumerate() {
                let candidate = current_best(sub.individuals())?;
                if candidate.better_than(&bests[s])? {
                    bests[s] = candidate.clone();
                }
                rows.push(record_generation_stats(sub, s, generation)?);
            }
            self.bus.publish(&Event::GenerationEnded {
                generation,
                stats: &rows,
                population: &pop,
            })?;
            stats.extend_from_slice(&rows);
            generations = generation;

            if let Some(checker) = &cfg.termination_checker {
                let best = overall_best(&bests)?;
                if checker.should_terminate(best.fitness(), generation)? {
                    terminated_early = true;
                    break;
                }
            }
        }

        let best = overall_best(&bests)?.clone();
        self.bus.publish(&Event::EvolutionEnded {
            generations,
            best: &best,
            terminated_early,
        })?;

        self.population = Some(pop);
        self.outcome = Some(EvolutionOutcome {
            best,
            best_per_subpopulation: bests,
            generations,
            terminated_early,
            stats,
            evaluations,
        });
        Ok(self.outcome.as_ref().expect("just stored"))
    }

    /// Executes the best tree found by the last run.
    pub fn execute(&self, bindings: &HashMap<String, f64>) -> Result<f64> {
        let best = self.best().ok_or(Error::NotEvolved)?;
        best.genome().as_tree()?.execute(bindings)
    }
}

fn publish_evaluations(
    bus: &mut EventBus,
    pop: &Population,
    fresh: &[(usize, IndividualId)],
    generation: usize,
) -> Result<()> {
    if bus.subscriber_count(crate::events::EventKind::FitnessEvaluated) == 0 {
        return Ok(());
    }
    for &(s, id) in fresh {
        let individual = pop.subpopulations()[s]
            .individuals()
            .iter()
            .find(|i| i.id() == id)
            .expect("evaluated individual is present");
        bus.publish(&Event::FitnessEvaluated {
            generation,
            subpopulation: s,
            individual,
        })?;
    }
    Ok(())
}

fn current_best(individuals: &[Individual]) -> Result<&Individual> {
    let mut iter = individuals.iter();
    let mut best = iter
        .next()
        .ok_or_else(|| Error::config("empty subpopulation"))?;
    for ind in iter {
        if ind.preferred_over(best)? {
            best = ind;
        }
    }
    Ok(best)
}

fn overall_best(bests: &[Individual]) -> Result<&Individual> {
    current_best(bests)
}
