use std::fmt;

use rand::{Rng, RngCore};

use crate::error::{Error, Result};

/// Range ephemeral random constants are drawn from.
pub const ERC_RANGE: (f64, f64) = (-5.0, 5.0);

/// Threshold below which a divisor counts as zero for protected division.
const DIV_EPSILON: f64 = 1e-9;

/// An internal-node primitive: a pure numeric function of `arity` inputs.
#[derive(Clone)]
pub struct FunctionSymbol {
    name: String,
    arity: usize,
    apply: fn(&[f64]) -> f64,
}

impl FunctionSymbol {
    pub fn new(name: impl Into<String>, arity: usize, apply: fn(&[f64]) -> f64) -> Result<Self> {
        let name = name.into();
        if arity == 0 {
            return Err(Error::config(format!(
                "function `{name}` must have arity >= 1"
            )));
        }
        if !is_symbol_token(&name) {
            return Err(Error::config(format!(
                "`{name}` is not a valid symbol name"
            )));
        }
        Ok(FunctionSymbol { name, arity, apply })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    #[inline]
    pub fn call(&self, args: &[f64]) -> f64 {
        (self.apply)(args)
    }
}

impl fmt::Debug for FunctionSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

fn add(a: &[f64]) -> f64 {
    a[0] + a[1]
}

fn sub(a: &[f64]) -> f64 {
    a[0] - a[1]
}

fn mul(a: &[f64]) -> f64 {
    a[0] * a[1]
}

/// Protected division: 1 when the divisor is (nearly) zero.
fn div(a: &[f64]) -> f64 {
    if a[1].abs() < DIV_EPSILON {
        1.0
    } else {
        a[0] / a[1]
    }
}

/// Ordered set of function symbols with unique names.
#[derive(Debug, Clone)]
pub struct FunctionSet {
    symbols: Vec<FunctionSymbol>,
}

impl FunctionSet {
    pub fn new(symbols: Vec<FunctionSymbol>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::config("function set is empty"));
        }
        if symbols.len() > u16::MAX as usize {
            return Err(Error::config("function set is too large"));
        }
        for (i, s) in symbols.iter().enumerate() {
            if symbols[..i].iter().any(|o| o.name == s.name) {
                return Err(Error::config(format!("duplicate function `{}`", s.name)));
            }
        }
        Ok(FunctionSet { symbols })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn get(&self, index: usize) -> &FunctionSymbol {
        &self.symbols[index]
    }

    pub fn symbols(&self) -> &[FunctionSymbol] {
        &self.symbols
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }

    pub(crate) fn random_index(&self, rng: &mut dyn RngCore) -> u16 {
        rng.random_range(0..self.symbols.len()) as u16
    }
}

impl Default for FunctionSet {
    /// `add`, `sub`, `mul` and protected `div`.
    fn default() -> Self {
        FunctionSet {
            symbols: vec![
                FunctionSymbol::new("add", 2, add).unwrap(),
                FunctionSymbol::new("sub", 2, sub).unwrap(),
                FunctionSymbol::new("mul", 2, mul).unwrap(),
                FunctionSymbol::new("div", 2, div).unwrap(),
            ],
        }
    }
}

/// A leaf symbol.
#[derive(Debug, Clone, PartialEq)]
pub enum Terminal {
    Variable(String),
    Constant(f64),
    /// Ephemeral random constant: a fresh value from [`ERC_RANGE`] is frozen
    /// into the leaf each time this terminal is drawn.
    Erc,
}

/// Leaf symbols available to trees. Variables are indexed in the order they
/// first appear; tree nodes refer to them by that index.
#[derive(Debug, Clone, PartialEq)]
pub struct TerminalSet {
    terminals: Vec<Terminal>,
    variables: Vec<String>,
}

impl TerminalSet {
    pub fn new(terminals: Vec<Terminal>) -> Result<Self> {
        if terminals.is_empty() {
            return Err(Error::config("terminal set is empty"));
        }
        let mut variables: Vec<String> = Vec::new();
        for t in &terminals {
            match t {
                Terminal::Variable(name) => {
                    if !is_symbol_token(name) {
                        return Err(Error::config(format!(
                            "`{name}` is not a valid variable name"
                        )));
                    }
                    if variables.contains(name) {
                        return Err(Error::config(format!("duplicate variable `{name}`")));
                    }
                    variables.push(name.clone());
                }
                Terminal::Constant(c) if !c.is_finite() => {
                    return Err(Error::config("terminal constants must be finite"));
                }
                _ => {}
            }
        }
        if variables.len() > u16::MAX as usize {
            return Err(Error::config("too many variables"));
        }
        Ok(TerminalSet {
            terminals,
            variables,
        })
    }

    /// Variables named as given plus the constants 0, 1 and -1.
    pub fn with_variables<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let mut terminals: Vec<Terminal> = names
            .iter()
            .map(|n| Terminal::Variable(n.as_ref().to_string()))
            .collect();
        terminals.extend([0.0, 1.0, -1.0].map(Terminal::Constant));
        TerminalSet::new(terminals)
    }

    pub fn terminals(&self) -> &[Terminal] {
        &self.terminals
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn len(&self) -> usize {
        self.terminals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terminals.is_empty()
    }

    pub fn has_erc(&self) -> bool {
        self.terminals.iter().any(|t| matches!(t, Terminal::Erc))
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    /// Draws one leaf uniformly over the terminals; an ERC draw freezes a
    /// fresh constant.
    pub(crate) fn random_leaf(&self, rng: &mut dyn RngCore) -> super::Node {
        use super::Node;
        let i = rng.random_range(0..self.terminals.len());
        match &self.terminals[i] {
            Terminal::Variable(name) => {
                Node::Variable(self.variable_index(name).expect("indexed at construction") as u16)
            }
            Terminal::Constant(c) => Node::Constant(*c),
            Terminal::Erc => Node::Constant(draw_erc(rng)),
        }
    }

    /// Returns a copy of this set with an ERC terminal appended.
    pub fn with_erc(&self) -> Self {
        let mut terminals = self.terminals.clone();
        if !self.has_erc() {
            terminals.push(Terminal::Erc);
        }
        TerminalSet {
            terminals,
            variables: self.variables.clone(),
        }
    }
}

impl Default for TerminalSet {
    /// `x`, `y`, `z`, 0, 1, -1.
    fn default() -> Self {
        TerminalSet::with_variables(&["x", "y", "z"]).unwrap()
    }
}

pub(crate) fn draw_erc(rng: &mut dyn RngCore) -> f64 {
    rng.random_range(ERC_RANGE.0..=ERC_RANGE.1)
}

/// Terminal set for a feature matrix with `n_features` columns: `x0..x{n-1}`
/// plus the constants 0, 1 and -1.
pub fn create_terminal_set(n_features: usize) -> Result<TerminalSet> {
    if n_features == 0 {
        return Err(Error::Dataset("feature matrix has no columns".into()));
    }
    let names: Vec<String> = (0..n_features).map(|i| format!("x{i}")).collect();
    TerminalSet::with_variables(&names)
}

/// Names must be a single non-numeric token so the text format stays
/// unambiguous.
fn is_symbol_token(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(char::is_whitespace) && name.parse::<f64>().is_err()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn protected_division() {
        assert_eq!(div(&[1.0, 0.0]), 1.0);
        assert_eq!(div(&[3.0, 1e-10]), 1.0);
        assert_eq!(div(&[3.0, 2.0]), 1.5);
    }

    #[test]
    fn terminal_set_from_features() {
        let ts = create_terminal_set(3).unwrap();
        assert_eq!(ts.variables(), ["x0", "x1", "x2"]);
        assert_eq!(ts.len(), 6);
        assert!(ts.terminals().contains(&Terminal::Constant(-1.0)));
        let one = create_terminal_set(1).unwrap();
        assert_eq!(
            one.terminals(),
            &[
                Terminal::Variable("x0".into()),
                Terminal::Constant(0.0),
                Terminal::Constant(1.0),
                Terminal::Constant(-1.0)
            ]
        );
        assert!(matches!(create_terminal_set(0), Err(Error::Dataset(_))));
    }

    #[test]
    fn rejects_duplicates_and_bad_names() {
        assert!(TerminalSet::with_variables(&["x", "x"]).is_err());
        assert!(TerminalSet::with_variables(&["1.5"]).is_err());
        assert!(TerminalSet::with_variables(&["a b"]).is_err());
        let f = FunctionSymbol::new("add", 2, add).unwrap();
        assert!(FunctionSet::new(vec![f.clone(), f]).is_err());
        assert!(FunctionSymbol::new("nop", 0, add).is_err());
    }
}
