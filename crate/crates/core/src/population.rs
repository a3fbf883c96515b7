//! Subpopulations and the population that groups them.

use std::fmt;
use std::sync::Arc;

use rand::RngCore;

use crate::error::{Error, Result};
use crate::evaluation::IndividualEvaluator;
use crate::individual::{Genome, GenomeKind, IdCounter, Individual};
use crate::variation::{OperatorConfig, SelectionConfig};

/// Produces initial genomes for a subpopulation.
pub trait Creator: Send + Sync + fmt::Debug {
    fn create(&self, rng: &mut dyn RngCore) -> Result<Genome>;

    fn validate(&self) -> Result<()> {
        Ok(())
    }
}

/// One breeding pool with its own evaluator, creator and variation pipeline.
#[derive(Clone)]
pub struct Subpopulation {
    population_size: usize,
    evaluator: Arc<dyn IndividualEvaluator>,
    creator: Arc<dyn Creator>,
    operator_sequence: Vec<OperatorConfig>,
    selection: SelectionConfig,
    elitism_rate: f64,
    higher_is_better: bool,
    individuals: Vec<Individual>,
}

impl fmt::Debug for Subpopulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subpopulation")
            .field("population_size", &self.population_size)
            .field("creator", &self.creator)
            .field("operator_sequence", &self.operator_sequence)
            .field("selection", &self.selection)
            .field("elitism_rate", &self.elitism_rate)
            .field("higher_is_better", &self.higher_is_better)
            .field("individuals", &self.individuals.len())
            .finish()
    }
}

impl Subpopulation {
    /// Subpopulation of 200 minimizing individuals with no operators, default
    /// tournament selection and no elitism.
    pub fn new(evaluator: Arc<dyn IndividualEvaluator>, creator: Arc<dyn Creator>) -> Self {
        Subpopulation {
            population_size: 200,
            evaluator,
            creator,
            operator_sequence: Vec::new(),
            selection: SelectionConfig::default(),
            elitism_rate: 0.0,
            higher_is_better: false,
            individuals: Vec::new(),
        }
    }

    pub fn with_population_size(mut self, n: usize) -> Self {
        self.population_size = n;
        self
    }

    pub fn with_operators(mut self, seq: Vec<OperatorConfig>) -> Self {
        self.operator_sequence = seq;
        self
    }

    pub fn with_selection(mut self, selection: SelectionConfig) -> Self {
        self.selection = selection;
        self
    }

    pub fn with_elitism_rate(mut self, rate: f64) -> Self {
        self.elitism_rate = rate;
        self
    }

    pub fn with_higher_is_better(mut self, higher_is_better: bool) -> Self {
        self.higher_is_better = higher_is_better;
        self
    }

    pub fn with_evaluator(mut self, evaluator: Arc<dyn IndividualEvaluator>) -> Self {
        self.evaluator = evaluator;
        self
    }

    pub fn with_creator(mut self, creator: Arc<dyn Creator>) -> Self {
        self.creator = creator;
        self
    }

    pub fn population_size(&self) -> usize {
        self.population_size
    }

    pub fn evaluator(&self) -> &Arc<dyn IndividualEvaluator> {
        &self.evaluator
    }

    pub fn creator(&self) -> &Arc<dyn Creator> {
        &self.creator
    }

    pub fn operator_sequence(&self) -> &[OperatorConfig] {
        &self.operator_sequence
    }

    pub fn selection(&self) -> &SelectionConfig {
        &self.selection
    }

    pub fn elitism_rate(&self) -> f64 {
        self.elitism_rate
    }

    pub fn higher_is_better(&self) -> bool {
        self.higher_is_better
    }

    pub fn individuals(&self) -> &[Individual] {
        &self.individuals
    }

    pub(crate) fn individuals_mut(&mut self) -> &mut [Individual] {
        &mut self.individuals
    }

    /// Replaces the individuals. The count must equal `population_size`.
    pub fn set_individuals(&mut self, individuals: Vec<Individual>) -> Result<()> {
        if individuals.len() != self.population_size {
            return Err(Error::config(format!(
                "subpopulation expects {} individuals, got {}",
                self.population_size,
                individuals.len()
            )));
        }
        if let Some(first) = individuals.first() {
            let kind = first.genome().kind();
            if individuals.iter().any(|i| i.genome().kind() != kind) {
                return Err(Error::config("individuals mix genome kinds"));
            }
        }
        self.individuals = individuals;
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.population_size == 0 {
            return Err(Error::config("population_size must be >= 1"));
        }
        if !(0.0..=1.0).contains(&self.elitism_rate) {
            return Err(Error::config(format!(
                "elitism_rate {} outside [0, 1]",
                self.elitism_rate
            )));
        }
        self.selection.validate()?;
        self.creator.validate()?;
        for op in &self.operator_sequence {
            op.validate()?;
        }
        Ok(())
    }

    /// Fills the subpopulation with freshly created, unevaluated individuals.
    pub fn initialize(&mut self, ids: &mut IdCounter, rng: &mut dyn RngCore) -> Result<()> {
        self.validate()?;
        let mut individuals = Vec::with_capacity(self.population_size);
        for _ in 0..self.population_size {
            let genome = self.creator.create(rng)?;
            individuals.push(Individual::new(
                ids.next_id(),
                genome,
                self.higher_is_better,
            ));
        }
        let kind = individuals[0].genome().kind();
        for op in &self.operator_sequence {
            if let Some(expected) = op.operator().genome_kind() {
                if expected != kind {
                    return Err(Error::config(format!(
                        "operator `{}` needs {expected} genomes but the creator makes {kind} genomes",
                        op.operator().name()
                    )));
                }
            }
        }
        self.set_individuals(individuals)
    }

    pub fn genome_kind(&self) -> Option<GenomeKind> {
        self.individuals.first().map(|i| i.genome().kind())
    }
}

/// Ordered, non-empty list of subpopulations.
#[derive(Debug, Clone)]
pub struct Population {
    subpopulations: Vec<Subpopulation>,
}

impl Population {
    pub fn new(subpopulations: Vec<Subpopulation>) -> Result<Self> {
        if subpopulations.is_empty() {
            return Err(Error::config("population needs at least one subpopulation"));
        }
        Ok(Population { subpopulations })
    }

    pub fn single(sub: Subpopulation) -> Self {
        Population {
            subpopulations: vec![sub],
        }
    }

    pub fn subpopulations(&self) -> &[Subpopulation] {
        &self.subpopulations
    }

    pub fn subpopulations_mut(&mut self) -> &mut [Subpopulation] {
        &mut self.subpopulations
    }

    pub fn len(&self) -> usize {
        self.subpopulations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subpopulations.is_empty()
    }

    pub fn individual_count(&self) -> usize {
        self.subpopulations
            .iter()
            .map(|s| s.individuals.len())
            .sum()
    }
}
