use rand::{Rng, RngCore};

use crate::error::{Error, Result};
use crate::gp::{Node, TreeGenome, MAX_TREE_DEPTH};
use crate::individual::{Genome, GenomeKind, Individual};

fn tree_of(ind: &Individual) -> Result<&TreeGenome> {
    ind.genome().as_tree()
}

/// Swaps uniformly chosen subtrees between two parents. An offspring deeper
/// than `max_depth` is discarded in favour of its parent.
#[derive(Debug, Clone)]
pub struct SubtreeCrossover {
    pub max_depth: usize,
}

impl Default for SubtreeCrossover {
    fn default() -> Self {
        SubtreeCrossover {
            max_depth: MAX_TREE_DEPTH,
        }
    }
}

/// Children of swapping the subtree at `i` in `a` with the one at `j` in `b`.
pub(crate) fn swap_subtrees(
    a: &TreeGenome,
    i: usize,
    b: &TreeGenome,
    j: usize,
) -> (TreeGenome, TreeGenome) {
    let sub_a = a.subtree(i).to_vec();
    let sub_b = b.subtree(j).to_vec();
    let mut c1 = a.clone();
    let mut c2 = b.clone();
    c1.replace_subtree(i, &sub_b);
    c2.replace_subtree(j, &sub_a);
    (c1, c2)
}

impl super::GeneticOperator for SubtreeCrossover {
    fn name(&self) -> &str {
        "subtree_crossover"
    }

    fn arity(&self) -> usize {
        2
    }

    fn genome_kind(&self) -> Option<GenomeKind> {
        Some(GenomeKind::Tree)
    }

    fn apply(&self, group: &mut [Individual], rng: &mut dyn RngCore) -> Result<()> {
        let [first, second] = group else {
            return Err(Error::config(
                "subtree crossover needs exactly two individuals",
            ));
        };
        let (a, b) = (tree_of(first)?, tree_of(second)?);
        let i = rng.random_range(0..a.size());
        let j = rng.random_range(0..b.size());
        let (c1, c2) = swap_subtrees(a, i, b, j);
        if c1.depth() <= self.max_depth {
            first.set_genome(Genome::Tree(c1));
        }
        if c2.depth() <= self.max_depth {
            second.set_genome(Genome::Tree(c2));
        }
        Ok(())
    }
}

/// Replaces a uniformly chosen node with a fresh grow-created subtree.
#[derive(Debug, Clone)]
pub struct SubtreeMutation {
    /// Depth limit handed to the grow method for the new subtree.
    pub subtree_depth: usize,
    pub max_depth: usize,
}

impl Default for SubtreeMutation {
    fn default() -> Self {
        SubtreeMutation {
            subtree_depth: 2,
            max_depth: MAX_TREE_DEPTH,
        }
    }
}

impl super::GeneticOperator for SubtreeMutation {
    fn name(&self) -> &str {
        "subtree_mutation"
    }

    fn arity(&self) -> usize {
        1
    }

    fn genome_kind(&self) -> Option<GenomeKind> {
        Some(GenomeKind::Tree)
    }

    fn apply(&self, group: &mut [Individual], rng: &mut dyn RngCore) -> Result<()> {
        for ind in group.iter_mut() {
            let tree = tree_of(ind)?;
            let at = rng.random_range(0..tree.size());
            let mut fresh = Vec::new();
            crate::gp::create::grow_subtree(
                &mut fresh,
                self.subtree_depth,
                tree.function_set(),
                tree.terminal_set(),
                rng,
            );
            let mut child = tree.clone();
            child.replace_subtree(at, &fresh);
            if child.depth() <= self.max_depth {
                ind.set_genome(Genome::Tree(child));
            }
        }
        Ok(())
    }
}

/// Redraws one uniformly chosen numeric-constant leaf from the ERC range.
/// Trees without constants are left untouched, fitness included.
#[derive(Debug, Clone, Copy, Default)]
pub struct ErcMutation;

impl super::GeneticOperator for ErcMutation {
    fn name(&self) -> &str {
        "erc_mutation"
    }

    fn arity(&self) -> usize {
        1
    }

    fn genome_kind(&self) -> Option<GenomeKind> {
        Some(GenomeKind::Tree)
    }

    fn apply(&self, group: &mut [Individual], rng: &mut dyn RngCore) -> Result<()> {
        for ind in group.iter_mut() {
            let tree = tree_of(ind)?;
            let constants: Vec<usize> = (0..tree.size())
                .filter(|&i| tree.is_constant_leaf(i))
                .collect();
            if constants.is_empty() {
                continue;
            }
            let at = constants[rng.random_range(0..constants.len())];
            let value = crate::gp::primitives::draw_erc(rng);
            let mut child = tree.clone();
            child.nodes_mut()[at] = Node::Constant(value);
            ind.set_genome(Genome::Tree(child));
        }
        Ok(())
    }
}
