//! Selection, elitism and the genetic-operator pipeline used by breeders.

mod ga_ops;
mod gp_ops;
mod selection;

use std::fmt;
use std::sync::Arc;

use rand::{Rng, RngCore};

use crate::error::{Error, Result};
use crate::individual::{GenomeKind, Individual};

pub use ga_ops::{OnePointCrossover, PerCellMutation};
pub use gp_ops::{ErcMutation, SubtreeCrossover, SubtreeMutation};
pub use selection::{apply_elitism, elite_count, tournament_select, tournament_winner};

/// A variation operator transforming a group of `arity` individuals in place.
///
/// Implementations must leave genomes structurally valid and must go through
/// [`Individual::set_genome`] (or `genome_mut`) when they change a genome so
/// the cached fitness is invalidated.
pub trait GeneticOperator: Send + Sync + fmt::Debug {
    fn name(&self) -> &str;

    /// Number of individuals consumed and produced per application.
    fn arity(&self) -> usize;

    /// Genome kind the operator understands, or `None` for any.
    fn genome_kind(&self) -> Option<GenomeKind>;

    fn apply(&self, group: &mut [Individual], rng: &mut dyn RngCore) -> Result<()>;
}

/// An operator in a breeding sequence together with its application
/// probability.
#[derive(Debug, Clone)]
pub struct OperatorConfig {
    operator: Arc<dyn GeneticOperator>,
    probability: f64,
    arity: usize,
}

impl OperatorConfig {
    /// `arity` must match the operator's own arity.
    pub fn new(operator: Arc<dyn GeneticOperator>, probability: f64, arity: usize) -> Result<Self> {
        let cfg = OperatorConfig {
            operator,
            probability,
            arity,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Uses the operator's own arity.
    pub fn with_natural_arity(
        operator: Arc<dyn GeneticOperator>,
        probability: f64,
    ) -> Result<Self> {
        let arity = operator.arity();
        Self::new(operator, probability, arity)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.probability) {
            return Err(Error::config(format!(
                "operator `{}`: probability {} outside [0, 1]",
                self.operator.name(),
                self.probability
            )));
        }
        if self.arity == 0 {
            return Err(Error::config(format!(
                "operator `{}`: arity must be >= 1",
                self.operator.name()
            )));
        }
        if self.arity != self.operator.arity() {
            return Err(Error::config(format!(
                "operator `{}` has arity {}, configured with {}",
                self.operator.name(),
                self.operator.arity(),
                self.arity
            )));
        }
        Ok(())
    }

    pub fn operator(&self) -> &Arc<dyn GeneticOperator> {
        &self.operator
    }

    pub fn probability(&self) -> f64 {
        self.probability
    }

    pub fn arity(&self) -> usize {
        self.arity
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionMethod {
    Tournament,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelectionConfig {
    pub method: SelectionMethod,
    pub tournament_size: usize,
}

impl SelectionConfig {
    pub fn tournament(size: usize) -> Self {
        SelectionConfig {
            method: SelectionMethod::Tournament,
            tournament_size: size,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.tournament_size == 0 {
            return Err(Error::config("tournament_size must be >= 1"));
        }
        Ok(())
    }
}

impl Default for SelectionConfig {
    fn default() -> Self {
        SelectionConfig::tournament(4)
    }
}

/// Runs the operator sequence over the pool.
///
/// For each operator in order, the pool is cut into consecutive groups of
/// the operator's arity; each full group is transformed with the operator's
/// probability. A trailing short group passes through untouched. The pool
/// size never changes.
pub fn apply_operator_sequence(
    mut pool: Vec<Individual>,
    sequence: &[OperatorConfig],
    rng: &mut dyn RngCore,
) -> Result<Vec<Individual>> {
    for cfg in sequence {
        for group in pool.chunks_mut(cfg.arity) {
            if group.len() < cfg.arity {
                continue;
            }
            if rng.random_bool(cfg.probability) {
                cfg.operator.apply(group, rng)?;
            }
        }
    }
    Ok(pool)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fitness::Fitness;
    use crate::gp::{create_ramped_half_and_half, FunctionSet, TerminalSet};
    use crate::individual::{Genome, IdCounter};
    use crate::seeded_rng;
    use proptest::prelude::*;

    fn pool(n: usize, seed: u64) -> Vec<Individual> {
        let f = Arc::new(FunctionSet::default());
        let t = Arc::new(TerminalSet::default().with_erc());
        let mut rng = seeded_rng(seed);
        let mut ids = IdCounter::new();
        (0..n)
            .map(|i| {
                let tree = create_ramped_half_and_half((2, 4), &f, &t, &mut rng).unwrap();
                let mut ind = Individual::new(ids.next_id(), Genome::Tree(tree), false);
                ind.set_fitness(Fitness::new(i as f64, false).unwrap());
                ind
            })
            .collect()
    }

    fn default_sequence() -> Vec<OperatorConfig> {
        vec![
            OperatorConfig::new(Arc::new(SubtreeCrossover::default()), 0.9, 2).unwrap(),
            OperatorConfig::new(Arc::new(SubtreeMutation::default()), 0.2, 1).unwrap(),
            OperatorConfig::new(Arc::new(ErcMutation), 0.05, 1).unwrap(),
        ]
    }

    #[test]
    fn zero_probabilities_leave_pool_unchanged() {
        let p = pool(10, 1);
        let seq = vec![
            OperatorConfig::new(Arc::new(SubtreeCrossover::default()), 0.0, 2).unwrap(),
            OperatorConfig::new(Arc::new(SubtreeMutation::default()), 0.0, 1).unwrap(),
        ];
        let out = apply_operator_sequence(p.clone(), &seq, &mut seeded_rng(0)).unwrap();
        assert_eq!(out, p);
    }

    #[test]
    fn empty_sequence_is_noop() {
        let p = pool(5, 2);
        let out = apply_operator_sequence(p.clone(), &[], &mut seeded_rng(0)).unwrap();
        assert_eq!(out, p);
    }

    #[test]
    fn certain_crossover_replaces_both() {
        let p = pool(2, 3);
        let seq = vec![OperatorConfig::new(Arc::new(SubtreeCrossover::default()), 1.0, 2).unwrap()];
        let out = apply_operator_sequence(p, &seq, &mut seeded_rng(4)).unwrap();
        assert!(out.iter().all(|i| !i.is_evaluated()));
    }

    #[test]
    fn odd_pool_tail_passes_through() {
        let p = pool(3, 5);
        let seq = vec![OperatorConfig::new(Arc::new(SubtreeCrossover::default()), 1.0, 2).unwrap()];
        let out = apply_operator_sequence(p.clone(), &seq, &mut seeded_rng(6)).unwrap();
        assert_eq!(out[2], p[2]);
    }

    #[test]
    fn arity_mismatch_is_rejected() {
        assert!(OperatorConfig::new(Arc::new(SubtreeCrossover::default()), 0.9, 3).is_err());
        assert!(OperatorConfig::new(Arc::new(SubtreeMutation::default()), 1.2, 1).is_err());
        assert!(OperatorConfig::new(Arc::new(SubtreeMutation::default()), -0.1, 1).is_err());
    }

    #[test]
    fn pool_of_190_keeps_size() {
        let out =
            apply_operator_sequence(pool(190, 7), &default_sequence(), &mut seeded_rng(8)).unwrap();
        assert_eq!(out.len(), 190);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn sequence_preserves_size_and_validity(n in 0usize..60, seed in any::<u64>()) {
            let out = apply_operator_sequence(pool(n, seed), &default_sequence(), &mut seeded_rng(seed)).unwrap();
            prop_assert_eq!(out.len(), n);
            for ind in &out {
                let tree = ind.genome().as_tree().unwrap();
                prop_assert!(tree.validate().is_ok());
                prop_assert!(tree.depth() <= crate::gp::MAX_TREE_DEPTH);
            }
        }
    }
}
