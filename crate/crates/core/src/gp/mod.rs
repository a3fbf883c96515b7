//! Tree-based genetic programming genome.

pub(crate) mod create;
pub(crate) mod primitives;
mod text;
mod tree;

pub use create::{
    create_full, create_grow, create_ramped_half_and_half, ramped_half_and_half_draw, FullCreator,
    GrowCreator, InitMethod, RampedDraw, RampedHalfAndHalfCreator,
};
pub use primitives::{
    create_terminal_set, FunctionSet, FunctionSymbol, Terminal, TerminalSet, ERC_RANGE,
};
pub use text::{format_tree, parse_tree};
pub use tree::{Node, TreeGenome};

/// Hard limit on tree depth after variation.
pub const MAX_TREE_DEPTH: usize = 17;
