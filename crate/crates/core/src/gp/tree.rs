use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::primitives::{FunctionSet, TerminalSet};

/// One node of a tree stored in prefix order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Node {
    /// Index into the function set.
    Function(u16),
    /// Index into the terminal set's variable list.
    Variable(u16),
    Constant(f64),
}

/// Expression tree over a function set and a terminal set.
///
/// Nodes are kept as a flat prefix-order sequence; the subtree rooted at
/// position `i` occupies `i..subtree_end(i)`.
#[derive(Clone)]
pub struct TreeGenome {
    nodes: Vec<Node>,
    functions: Arc<FunctionSet>,
    terminals: Arc<TerminalSet>,
}

impl TreeGenome {
    /// Builds a tree, checking every node against the sets and the arity
    /// structure.
    pub fn new(
        nodes: Vec<Node>,
        functions: Arc<FunctionSet>,
        terminals: Arc<TerminalSet>,
    ) -> Result<Self> {
        let tree = TreeGenome {
            nodes,
            functions,
            terminals,
        };
        tree.validate()?;
        Ok(tree)
    }

    pub(crate) fn from_parts(
        nodes: Vec<Node>,
        functions: Arc<FunctionSet>,
        terminals: Arc<TerminalSet>,
    ) -> Self {
        let tree = TreeGenome {
            nodes,
            functions,
            terminals,
        };
        debug_assert!(tree.validate().is_ok());
        tree
    }

    /// Checks that node indices are in range, constants are finite and the
    /// prefix sequence encodes exactly one complete tree.
    pub fn validate(&self) -> Result<()> {
        let mut open: usize = 1;
        for (i, node) in self.nodes.iter().enumerate() {
            if open == 0 {
                return Err(Error::ArityMismatch {
                    line: i + 1,
                    message: "nodes after a complete tree".into(),
                });
            }
            match *node {
                Node::Function(f) => {
                    if f as usize >= self.functions.len() {
                        return Err(Error::UnknownSymbol {
                            line: i + 1,
                            symbol: format!("function #{f}"),
                        });
                    }
                    open += self.functions.get(f as usize).arity();
                }
                Node::Variable(v) => {
                    if v as usize >= self.terminals.variables().len() {
                        return Err(Error::UnknownSymbol {
                            line: i + 1,
                            symbol: format!("variable #{v}"),
                        });
                    }
                }
                Node::Constant(c) => {
                    if !c.is_finite() {
                        return Err(Error::TreeSyntax {
                            line: i + 1,
                            message: "constant is not finite".into(),
                        });
                    }
                }
            }
            open -= 1;
        }
        if open != 0 {
            return Err(Error::ArityMismatch {
                line: self.nodes.len(),
                message: format!("{open} missing child node(s)"),
            });
        }
        Ok(())
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn function_set(&self) -> &Arc<FunctionSet> {
        &self.functions
    }

    pub fn terminal_set(&self) -> &Arc<TerminalSet> {
        &self.terminals
    }

    /// Total number of nodes.
    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    /// Edge count of the longest root-to-leaf path; a single leaf has depth 0.
    pub fn depth(&self) -> usize {
        self.node_depths().into_iter().max().unwrap_or(0)
    }

    pub(crate) fn arity_of(&self, node: Node) -> usize {
        match node {
            Node::Function(f) => self.functions.get(f as usize).arity(),
            _ => 0,
        }
    }

    /// Depth of every node, in prefix order.
    pub fn node_depths(&self) -> Vec<usize> {
        let mut depths = Vec::with_capacity(self.nodes.len());
        // remaining children per open ancestor
        let mut open: Vec<usize> = Vec::new();
        for &node in &self.nodes {
            while open.last() == Some(&0) {
                open.pop();
            }
            depths.push(open.len());
            if let Some(top) = open.last_mut() {
                *top -= 1;
            }
            let arity = self.arity_of(node);
            if arity > 0 {
                open.push(arity);
            }
        }
        depths
    }

    /// One past the last node of the subtree rooted at `start`.
    pub fn subtree_end(&self, start: usize) -> usize {
        let mut need = 1usize;
        let mut i = start;
        while need > 0 {
            need = need + self.arity_of(self.nodes[i]) - 1;
            i += 1;
        }
        i
    }

    pub fn subtree(&self, start: usize) -> &[Node] {
        &self.nodes[start..self.subtree_end(start)]
    }

    /// Replaces the subtree rooted at `start` with `replacement`, which must
    /// itself be a complete prefix-order subtree.
    pub(crate) fn replace_subtree(&mut self, start: usize, replacement: &[Node]) {
        let end = self.subtree_end(start);
        self.nodes.splice(start..end, replacement.iter().copied());
        debug_assert!(self.validate().is_ok());
    }

    pub(crate) fn nodes_mut(&mut self) -> &mut [Node] {
        &mut self.nodes
    }

    /// Names of the variables that actually appear in the tree.
    pub fn used_variables(&self) -> Vec<&str> {
        let mut seen = vec![false; self.terminals.variables().len()];
        for node in &self.nodes {
            if let Node::Variable(v) = *node {
                seen[v as usize] = true;
            }
        }
        self.terminals
            .variables()
            .iter()
            .zip(seen)
            .filter_map(|(name, used)| used.then_some(name.as_str()))
            .collect()
    }

    /// Evaluates the tree with named variable bindings.
    pub fn execute(&self, bindings: &HashMap<String, f64>) -> Result<f64> {
        let vars = self.terminals.variables();
        let mut values = vec![f64::NAN; vars.len()];
        for name in self.used_variables() {
            let idx = self
                .terminals
                .variable_index(name)
                .expect("variable of own set");
            values[idx] = *bindings
                .get(name)
                .ok_or_else(|| Error::MissingBinding(name.to_string()))?;
        }
        Ok(self.execute_values(&values))
    }

    /// Evaluates the tree with variable values indexed like
    /// [`TerminalSet::variables`].
    ///
    /// # Panics
    /// If `values` is shorter than the variable list.
    pub fn execute_values(&self, values: &[f64]) -> f64 {
        let mut stack = Vec::with_capacity(self.nodes.len());
        self.execute_with_stack(values, &mut stack)
    }

    /// Same as [`execute_values`](Self::execute_values) reusing a scratch
    /// stack.
    pub fn execute_with_stack(&self, values: &[f64], stack: &mut Vec<f64>) -> f64 {
        stack.clear();
        // Walking a prefix sequence backwards evaluates it like postfix,
        // leaving each node's first child on top of the stack.
        for &node in self.nodes.iter().rev() {
            match node {
                Node::Constant(c) => stack.push(c),
                Node::Variable(v) => stack.push(values[v as usize]),
                Node::Function(f) => {
                    let symbol = self.functions.get(f as usize);
                    let arity = symbol.arity();
                    let base = stack.len() - arity;
                    stack[base..].reverse();
                    let out = symbol.call(&stack[base..]);
                    stack.truncate(base);
                    stack.push(out);
                }
            }
        }
        stack.pop().expect("validated tree leaves one value")
    }

    pub(crate) fn is_constant_leaf(&self, i: usize) -> bool {
        matches!(self.nodes[i], Node::Constant(_))
    }
}

impl PartialEq for TreeGenome {
    /// Structural equality: same nodes over sets with the same symbol names.
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes
            && (Arc::ptr_eq(&self.functions, &other.functions)
                || self
                    .functions
                    .symbols()
                    .iter()
                    .map(|s| (s.name(), s.arity()))
                    .eq(other
                        .functions
                        .symbols()
                        .iter()
                        .map(|s| (s.name(), s.arity()))))
            && (Arc::ptr_eq(&self.terminals, &other.terminals)
                || self.terminals.variables() == other.terminals.variables())
    }
}

impl fmt::Debug for TreeGenome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TreeGenome({})", self.to_sexpr())
    }
}

impl TreeGenome {
    /// Compact `add(x, y)` rendering.
    pub fn to_sexpr(&self) -> String {
        fn go(t: &TreeGenome, i: usize, out: &mut String) -> usize {
            match t.nodes[i] {
                Node::Function(f) => {
                    let sym = t.functions.get(f as usize);
                    out.push_str(sym.name());
                    out.push('(');
                    let mut next = i + 1;
                    for c in 0..sym.arity() {
                        if c > 0 {
                            out.push_str(", ");
                        }
                        next = go(t, next, out);
                    }
                    out.push(')');
                    next
                }
                Node::Variable(v) => {
                    out.push_str(&t.terminals.variables()[v as usize]);
                    i + 1
                }
                Node::Constant(c) => {
                    out.push_str(&c.to_string());
                    i + 1
                }
            }
        }
        let mut s = String::new();
        go(self, 0, &mut s);
        s
    }
}
