use rand::RngCore;

use crate::error::{Error, Result};
use crate::ga::{one_point_crossover, per_cell_mutation};
use crate::individual::{Genome, GenomeKind, Individual};

#[derive(Debug, Clone, Copy, Default)]
pub struct OnePointCrossover;

impl super::GeneticOperator for OnePointCrossover {
    fn name(&self) -> &str {
        "one_point_crossover"
    }

    fn arity(&self) -> usize {
        2
    }

    fn genome_kind(&self) -> Option<GenomeKind> {
        Some(GenomeKind::Vector)
    }

    fn apply(&self, group: &mut [Individual], rng: &mut dyn RngCore) -> Result<()> {
        let [first, second] = group else {
            return Err(Error::config(
                "one-point crossover needs exactly two individuals",
            ));
        };
        let (c1, c2) = one_point_crossover(
            first.genome().as_vector()?,
            second.genome().as_vector()?,
            rng,
        )?;
        first.set_genome(Genome::Vector(c1));
        second.set_genome(Genome::Vector(c2));
        Ok(())
    }
}

/// Per-cell mutation applied with `cell_probability` to every cell.
#[derive(Debug, Clone, Copy)]
pub struct PerCellMutation {
    pub cell_probability: f64,
}

impl super::GeneticOperator for PerCellMutation {
    fn name(&self) -> &str {
        "per_cell_mutation"
    }

    fn arity(&self) -> usize {
        1
    }

    fn genome_kind(&self) -> Option<GenomeKind> {
        Some(GenomeKind::Vector)
    }

    fn apply(&self, group: &mut [Individual], rng: &mut dyn RngCore) -> Result<()> {
        for ind in group.iter_mut() {
            let mutated = per_cell_mutation(ind.genome().as_vector()?, self.cell_probability, rng)?;
            if &mutated != ind.genome().as_vector()? {
                ind.set_genome(Genome::Vector(mutated));
            }
        }
        Ok(())
    }
}
