use std::sync::Arc;

use rand::{Rng, RngCore};

use crate::error::{Error, Result};
use crate::individual::Genome;
use crate::population::Creator;

use super::primitives::{FunctionSet, TerminalSet};
use super::tree::{Node, TreeGenome};

/// Which classic initialization method produced a tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InitMethod {
    Full,
    Grow,
}

fn push_full(
    nodes: &mut Vec<Node>,
    depth: usize,
    target: usize,
    functions: &FunctionSet,
    terminals: &TerminalSet,
    rng: &mut dyn RngCore,
) {
    if depth == target {
        nodes.push(terminals.random_leaf(rng));
        return;
    }
    let f = functions.random_index(rng);
    nodes.push(Node::Function(f));
    for _ in 0..functions.get(f as usize).arity() {
        push_full(nodes, depth + 1, target, functions, terminals, rng);
    }
}

pub(crate) fn grow_subtree(
    nodes: &mut Vec<Node>,
    max_depth: usize,
    functions: &FunctionSet,
    terminals: &TerminalSet,
    rng: &mut dyn RngCore,
) {
    push_grow(nodes, 0, max_depth, functions, terminals, rng);
}

fn push_grow(
    nodes: &mut Vec<Node>,
    depth: usize,
    max_depth: usize,
    functions: &FunctionSet,
    terminals: &TerminalSet,
    rng: &mut dyn RngCore,
) {
    let t = terminals.len();
    let leaf = depth >= max_depth || rng.random_range(0..t + functions.len()) < t;
    if leaf {
        nodes.push(terminals.random_leaf(rng));
        return;
    }
    let f = functions.random_index(rng);
    nodes.push(Node::Function(f));
    for _ in 0..functions.get(f as usize).arity() {
        push_grow(nodes, depth + 1, max_depth, functions, terminals, rng);
    }
}

fn check_sets(functions: &FunctionSet, terminals: &TerminalSet) -> Result<()> {
    if functions.is_empty() || terminals.is_empty() {
        return Err(Error::config(
            "function and terminal sets must be non-empty",
        ));
    }
    Ok(())
}

/// Full method: every leaf sits at exactly `depth`.
pub fn create_full(
    depth: usize,
    functions: &Arc<FunctionSet>,
    terminals: &Arc<TerminalSet>,
    rng: &mut dyn RngCore,
) -> Result<TreeGenome> {
    if depth < 1 {
        return Err(Error::config("full creation needs depth >= 1"));
    }
    check_sets(functions, terminals)?;
    let mut nodes = Vec::new();
    push_full(&mut nodes, 0, depth, functions, terminals, rng);
    Ok(TreeGenome::from_parts(
        nodes,
        functions.clone(),
        terminals.clone(),
    ))
}

/// Grow method: depth at most `max_depth`. Below the limit each node is a
/// terminal with probability |T| / (|T| + |F|).
pub fn create_grow(
    max_depth: usize,
    functions: &Arc<FunctionSet>,
    terminals: &Arc<TerminalSet>,
    rng: &mut dyn RngCore,
) -> Result<TreeGenome> {
    check_sets(functions, terminals)?;
    let mut nodes = Vec::new();
    push_grow(&mut nodes, 0, max_depth, functions, terminals, rng);
    Ok(TreeGenome::from_parts(
        nodes,
        functions.clone(),
        terminals.clone(),
    ))
}

/// Outcome of one ramped half-and-half draw, exposing the sampled parameters.
#[derive(Debug, Clone)]
pub struct RampedDraw {
    pub tree: TreeGenome,
    pub depth: usize,
    pub method: InitMethod,
}

pub fn ramped_half_and_half_draw(
    init_depth: (usize, usize),
    functions: &Arc<FunctionSet>,
    terminals: &Arc<TerminalSet>,
    rng: &mut dyn RngCore,
) -> Result<RampedDraw> {
    let (lo, hi) = init_depth;
    if lo < 1 || lo > hi {
        return Err(Error::config(format!(
            "init_depth must satisfy 1 <= lo <= hi, got ({lo}, {hi})"
        )));
    }
    let depth = rng.random_range(lo..=hi);
    let method = if rng.random_bool(0.5) {
        InitMethod::Full
    } else {
        InitMethod::Grow
    };
    let tree = match method {
        InitMethod::Full => create_full(depth, functions, terminals, rng)?,
        InitMethod::Grow => create_grow(depth, functions, terminals, rng)?,
    };
    Ok(RampedDraw {
        tree,
        depth,
        method,
    })
}

/// Ramped half-and-half: depth uniform in `init_depth`, then full or grow
/// with equal probability.
pub fn create_ramped_half_and_half(
    init_depth: (usize, usize),
    functions: &Arc<FunctionSet>,
    terminals: &Arc<TerminalSet>,
    rng: &mut dyn RngCore,
) -> Result<TreeGenome> {
    ramped_half_and_half_draw(init_depth, functions, terminals, rng).map(|d| d.tree)
}

#[derive(Debug, Clone)]
pub struct FullCreator {
    pub depth: usize,
    pub functions: Arc<FunctionSet>,
    pub terminals: Arc<TerminalSet>,
}

impl Creator for FullCreator {
    fn create(&self, rng: &mut dyn RngCore) -> Result<Genome> {
        create_full(self.depth, &self.functions, &self.terminals, rng).map(Genome::Tree)
    }

    fn validate(&self) -> Result<()> {
        if self.depth < 1 {
            return Err(Error::config("full creator depth must be >= 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct GrowCreator {
    pub max_depth: usize,
    pub functions: Arc<FunctionSet>,
    pub terminals: Arc<TerminalSet>,
}

impl Creator for GrowCreator {
    fn create(&self, rng: &mut dyn RngCore) -> Result<Genome> {
        create_grow(self.max_depth, &self.functions, &self.terminals, rng).map(Genome::Tree)
    }
}

#[derive(Debug, Clone)]
pub struct RampedHalfAndHalfCreator {
    pub init_depth: (usize, usize),
    pub functions: Arc<FunctionSet>,
    pub terminals: Arc<TerminalSet>,
}

impl RampedHalfAndHalfCreator {
    pub fn new(
        init_depth: (usize, usize),
        functions: Arc<FunctionSet>,
        terminals: Arc<TerminalSet>,
    ) -> Self {
        RampedHalfAndHalfCreator {
            init_depth,
            functions,
            terminals,
        }
    }
}

impl Creator for RampedHalfAndHalfCreator {
    fn create(&self, rng: &mut dyn RngCore) -> Result<Genome> {
        create_ramped_half_and_half(self.init_depth, &self.functions, &self.terminals, rng)
            .map(Genome::Tree)
    }

    fn validate(&self) -> Result<()> {
        let (lo, hi) = self.init_depth;
        if lo < 1 || lo > hi {
            return Err(Error::config(format!(
                "init_depth must satisfy 1 <= lo <= hi, got ({lo}, {hi})"
            )));
        }
        Ok(())
    }
}
