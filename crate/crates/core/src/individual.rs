use std::fmt;

use crate::error::{Error, Result};
use crate::fitness::Fitness;
use crate::ga::VectorGenome;
use crate::gp::{format_tree, TreeGenome};

/// Sequential identifier, unique within one run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndividualId(pub u64);

impl fmt::Display for IndividualId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Per-run id source.
#[derive(Debug, Clone, Default)]
pub struct IdCounter {
    next: u64,
}

impl IdCounter {
    pub fn new() -> Self {
        IdCounter::default()
    }

    pub fn next_id(&mut self) -> IndividualId {
        let id = IndividualId(self.next);
        self.next += 1;
        id
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenomeKind {
    Tree,
    Vector,
}

impl fmt::Display for GenomeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenomeKind::Tree => "tree",
            GenomeKind::Vector => "vector",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Genome {
    Tree(TreeGenome),
    Vector(VectorGenome),
}

impl Genome {
    pub fn kind(&self) -> GenomeKind {
        match self {
            Genome::Tree(_) => GenomeKind::Tree,
            Genome::Vector(_) => GenomeKind::Vector,
        }
    }

    pub fn as_tree(&self) -> Result<&TreeGenome> {
        match self {
            Genome::Tree(t) => Ok(t),
            Genome::Vector(_) => Err(Error::GenomeKind { expected: "tree" }),
        }
    }

    pub fn as_vector(&self) -> Result<&VectorGenome> {
        match self {
            Genome::Vector(v) => Ok(v),
            Genome::Tree(_) => Err(Error::GenomeKind { expected: "vector" }),
        }
    }

    /// Tree listing or comma-separated cells.
    pub fn to_text(&self) -> String {
        match self {
            Genome::Tree(t) => format_tree(t),
            Genome::Vector(v) => v.to_string(),
        }
    }
}

/// A genome with its cached fitness.
///
/// `Clone` copies the individual verbatim, id included. Use
/// [`Individual::duplicate`] for the framework notion of cloning, which
/// assigns a fresh id.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    id: IndividualId,
    genome: Genome,
    fitness: Fitness,
}

impl Individual {
    pub fn new(id: IndividualId, genome: Genome, higher_is_better: bool) -> Self {
        Individual {
            id,
            genome,
            fitness: Fitness::unevaluated(higher_is_better),
        }
    }

    pub fn id(&self) -> IndividualId {
        self.id
    }

    pub fn genome(&self) -> &Genome {
        &self.genome
    }

    pub fn fitness(&self) -> &Fitness {
        &self.fitness
    }

    pub fn is_evaluated(&self) -> bool {
        self.fitness.is_evaluated()
    }

    pub fn set_fitness(&mut self, fitness: Fitness) {
        self.fitness = fitness;
    }

    /// Mutable genome access. Invalidates the cached fitness.
    pub fn genome_mut(&mut self) -> &mut Genome {
        self.fitness.invalidate();
        &mut self.genome
    }

    /// Replaces the genome and invalidates the cached fitness.
    pub fn set_genome(&mut self, genome: Genome) {
        self.fitness.invalidate();
        self.genome = genome;
    }

    /// Equal genome and fitness under a fresh id.
    pub fn duplicate(&self, ids: &mut IdCounter) -> Individual {
        Individual {
            id: ids.next_id(),
            genome: self.genome.clone(),
            fitness: self.fitness,
        }
    }

    pub fn better_than(&self, other: &Individual) -> Result<bool> {
        self.fitness.better_than(&other.fitness)
    }

    /// Strict preference with ties broken by the lower id.
    pub fn preferred_over(&self, other: &Individual) -> Result<bool> {
        if self.better_than(other)? {
            return Ok(true);
        }
        if other.better_than(self)? {
            return Ok(false);
        }
        Ok(self.id < other.id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gp::{FunctionSet, TerminalSet};
    use crate::gp::{Node, TreeGenome};
    use std::sync::Arc;

    fn leaf() -> Genome {
        Genome::Tree(
            TreeGenome::new(
                vec![Node::Variable(0)],
                Arc::new(FunctionSet::default()),
                Arc::new(TerminalSet::default()),
            )
            .unwrap(),
        )
    }

    #[test]
    fn ids_are_sequential() {
        let mut ids = IdCounter::new();
        assert_eq!(ids.next_id(), IndividualId(0));
        assert_eq!(ids.next_id(), IndividualId(1));
    }

    #[test]
    fn duplicate_gets_fresh_id() {
        let mut ids = IdCounter::new();
        let mut a = Individual::new(ids.next_id(), leaf(), false);
        a.set_fitness(Fitness::new(1.0, false).unwrap());
        let b = a.duplicate(&mut ids);
        assert_ne!(a.id(), b.id());
        assert_eq!(a.genome(), b.genome());
        assert_eq!(a.fitness(), b.fitness());
    }

    #[test]
    fn genome_change_invalidates() {
        let mut ids = IdCounter::new();
        let mut a = Individual::new(ids.next_id(), leaf(), false);
        a.set_fitness(Fitness::new(1.0, false).unwrap());
        a.set_genome(leaf());
        assert!(!a.is_evaluated());
        a.set_fitness(Fitness::new(1.0, false).unwrap());
        let _ = a.genome_mut();
        assert!(!a.is_evaluated());
    }

    #[test]
    fn ties_prefer_lower_id() {
        let mut a = Individual::new(IndividualId(3), leaf(), false);
        let mut b = Individual::new(IndividualId(5), leaf(), false);
        a.set_fitness(Fitness::new(1.0, false).unwrap());
        b.set_fitness(Fitness::new(1.0, false).unwrap());
        assert!(a.preferred_over(&b).unwrap());
        assert!(!b.preferred_over(&a).unwrap());
    }
}
