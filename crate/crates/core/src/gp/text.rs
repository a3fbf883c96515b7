//! Indented tree listing: one symbol per line, children indented three
//! spaces beyond their parent.

use std::sync::Arc;

use crate::error::{Error, Result};

use super::primitives::{FunctionSet, TerminalSet};
use super::tree::{Node, TreeGenome};

const INDENT: usize = 3;

/// Renders the tree in the indented listing format. Lines are joined with
/// `\n`; there is no trailing newline.
pub fn format_tree(tree: &TreeGenome) -> String {
    let depths = tree.node_depths();
    let mut out = String::with_capacity(tree.size() * 8);
    for (i, (node, depth)) in tree.nodes().iter().zip(depths).enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.extend(std::iter::repeat_n(' ', depth * INDENT));
        match *node {
            Node::Function(f) => out.push_str(tree.function_set().get(f as usize).name()),
            Node::Variable(v) => out.push_str(&tree.terminal_set().variables()[v as usize]),
            Node::Constant(c) => out.push_str(&c.to_string()),
        }
    }
    out
}

/// Parses the indented listing produced by [`format_tree`].
///
/// Trailing whitespace on each line and trailing blank lines are ignored.
/// Numeric tokens become constant leaves; any other token must name a
/// function or a variable of the given sets.
pub fn parse_tree(
    text: &str,
    functions: &Arc<FunctionSet>,
    terminals: &Arc<TerminalSet>,
) -> Result<TreeGenome> {
    let lines: Vec<&str> = text.lines().map(str::trim_end).collect();
    let used = lines
        .iter()
        .rposition(|l| !l.is_empty())
        .map_or(0, |p| p + 1);
    if used == 0 {
        return Err(Error::TreeSyntax {
            line: 1,
            message: "empty tree".into(),
        });
    }

    let mut nodes = Vec::with_capacity(used);
    // (depth of the children, children still missing) per open function node
    let mut open: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in lines[..used].iter().enumerate() {
        let line = idx + 1;
        if raw.is_empty() {
            return Err(Error::TreeSyntax {
                line,
                message: "blank line inside tree".into(),
            });
        }
        let token = raw.trim_start_matches(' ');
        let spaces = raw.len() - token.len();
        if token.starts_with(char::is_whitespace) {
            return Err(Error::TreeSyntax {
                line,
                message: "indentation must use spaces".into(),
            });
        }
        if spaces % INDENT != 0 {
            return Err(Error::TreeSyntax {
                line,
                message: format!("indentation of {spaces} is not a multiple of {INDENT}"),
            });
        }
        let depth = spaces / INDENT;
        let expected = match open.last() {
            Some(&(child_depth, _)) => child_depth,
            None if nodes.is_empty() => 0,
            None => {
                return Err(Error::ArityMismatch {
                    line,
                    message: "extra node after a complete tree".into(),
                })
            }
        };
        if depth != expected {
            return Err(Error::ArityMismatch {
                line,
                message: format!("expected a node at depth {expected}, found depth {depth}"),
            });
        }
        if token.contains(char::is_whitespace) {
            return Err(Error::TreeSyntax {
                line,
                message: "one symbol per line".into(),
            });
        }

        let node = if let Some(f) = functions.position(token) {
            Node::Function(f as u16)
        } else if let Some(v) = terminals.variable_index(token) {
            Node::Variable(v as u16)
        } else {
            match token.parse::<f64>() {
                Ok(c) if c.is_finite() => Node::Constant(c),
                _ => {
                    return Err(Error::UnknownSymbol {
                        line,
                        symbol: token.to_string(),
                    })
                }
            }
        };
        nodes.push(node);

        if let Some(top) = open.last_mut() {
            top.1 -= 1;
            if top.1 == 0 {
                open.pop();
            }
        }
        if let Node::Function(f) = node {
            open.push((depth + 1, functions.get(f as usize).arity()));
        }
    }
    if let Some(&(child_depth, missing)) = open.last() {
        return Err(Error::ArityMismatch {
            line: used,
            message: format!("{missing} child node(s) missing at depth {child_depth}"),
        });
    }
    TreeGenome::new(nodes, functions.clone(), terminals.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gp::{create_grow, Terminal};
    use crate::seeded_rng;
    use proptest::prelude::*;

    const EVOLVED_TREE: &str = "add\n   add\n      z\n      z\n   add\n      add\n         z\n         y\n      add\n         x\n         y\n";

    fn sets() -> (Arc<FunctionSet>, Arc<TerminalSet>) {
        (
            Arc::new(FunctionSet::default()),
            Arc::new(TerminalSet::default()),
        )
    }

    #[test]
    fn formats_listing() {
        let (f, t) = sets();
        let tree = parse_tree("add\n   x\n   y", &f, &t).unwrap();
        assert_eq!(format_tree(&tree), "add\n   x\n   y");
        let leaf = parse_tree("z", &f, &t).unwrap();
        assert_eq!(format_tree(&leaf), "z");
        assert_eq!(leaf.size(), 1);
    }

    #[test]
    fn evolved_listing_round_trips() {
        let (f, t) = sets();
        let tree = parse_tree(EVOLVED_TREE, &f, &t).unwrap();
        assert_eq!(format!("{}\n", format_tree(&tree)), EVOLVED_TREE);
    }

    #[test]
    fn constants_round_trip() {
        let (f, t) = sets();
        let text = "mul\n   -1\n   sub\n      2.5\n      0";
        let tree = parse_tree(text, &f, &t).unwrap();
        assert_eq!(format_tree(&tree), text);
    }

    #[test]
    fn missing_child_is_arity_mismatch() {
        let (f, t) = sets();
        let err = parse_tree("add\n   x", &f, &t).unwrap_err();
        assert!(matches!(err, Error::ArityMismatch { .. }), "{err}");
    }

    #[test]
    fn malformed_inputs() {
        let (f, t) = sets();
        let bad = [
            ("", "empty"),
            ("foo", "unknown"),
            ("x\ny", "extra root"),
            ("add\n    x\n   y", "bad indent"),
            ("add\n      x\n   y", "skipped level"),
            ("add\n   x\n\n   y", "blank line"),
            ("add\n\tx\n\ty", "tabs"),
            ("add\n   x y\n   z", "two tokens"),
            ("add\n   inf\n   x", "non-finite"),
            ("add\n   x\n   y\n   z", "too many children"),
        ];
        for (text, why) in bad {
            assert!(parse_tree(text, &f, &t).is_err(), "{why}: {text:?}");
        }
    }

    #[test]
    fn trailing_whitespace_is_ignored() {
        let (f, t) = sets();
        let tree = parse_tree("add  \n   x\n   y \n\n", &f, &t).unwrap();
        assert_eq!(format_tree(&tree), "add\n   x\n   y");
    }

    proptest! {
        #[test]
        fn parse_inverts_format(seed in any::<u64>(), depth in 0usize..6) {
            let f = Arc::new(FunctionSet::default());
            let t = Arc::new(TerminalSet::default().with_erc());
            let tree = create_grow(depth, &f, &t, &mut seeded_rng(seed)).unwrap();
            let text = format_tree(&tree);
            let back = parse_tree(&text, &f, &t).unwrap();
            prop_assert_eq!(&back, &tree);
            prop_assert_eq!(format_tree(&back), text);
        }
    }

    #[test]
    fn erc_terminal_does_not_change_parsing() {
        let f = Arc::new(FunctionSet::default());
        let t = Arc::new(
            TerminalSet::new(vec![Terminal::Variable("x".into()), Terminal::Erc]).unwrap(),
        );
        let tree = parse_tree("add\n   x\n   -3.25", &f, &t).unwrap();
        assert_eq!(tree.nodes()[2], Node::Constant(-3.25));
    }
}
