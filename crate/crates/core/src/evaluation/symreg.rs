use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gp::TreeGenome;
use crate::individual::Genome;

use super::{IndividualEvaluator, RegressionProblem, Score};

/// Parsimony pressure: fitness units charged per tree node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BloatConfig {
    pub bloat_weight: f64,
}

impl BloatConfig {
    pub fn new(bloat_weight: f64) -> Result<Self> {
        if !(bloat_weight >= 0.0 && bloat_weight.is_finite()) {
            return Err(Error::config(format!(
                "bloat_weight {bloat_weight} must be >= 0"
            )));
        }
        Ok(BloatConfig { bloat_weight })
    }
}

/// `error + w * size` when minimizing, `error - w * size` when maximizing.
pub fn apply_bloat_penalty(
    error: f64,
    tree: &TreeGenome,
    cfg: BloatConfig,
    higher_is_better: bool,
) -> f64 {
    let penalty = cfg.bloat_weight * tree.size() as f64;
    if higher_is_better {
        error - penalty
    } else {
        error + penalty
    }
}

/// Maps each of the tree's variables to a feature column. Variables the tree
/// does not use may stay unmapped.
fn column_map(
    tree: &TreeGenome,
    problem: &RegressionProblem,
) -> Result<Option<Vec<Option<usize>>>> {
    let vars = tree.terminal_set().variables();
    if vars == problem.feature_names() {
        return Ok(None);
    }
    let map: Vec<Option<usize>> = vars.iter().map(|v| problem.feature_index(v)).collect();
    for name in tree.used_variables() {
        let idx = tree
            .terminal_set()
            .variable_index(name)
            .expect("own variable");
        if map[idx].is_none() {
            return Err(Error::MissingBinding(name.to_string()));
        }
    }
    Ok(Some(map))
}

/// Predictions of the tree for every sample row.
pub(crate) fn predict_rows(tree: &TreeGenome, problem: &RegressionProblem) -> Result<Vec<f64>> {
    let map = column_map(tree, problem)?;
    let mut stack = Vec::with_capacity(tree.size());
    let mut values = vec![f64::NAN; tree.terminal_set().variables().len()];
    Ok(problem
        .rows()
        .map(|row| match &map {
            None => tree.execute_with_stack(row, &mut stack),
            Some(map) => {
                for (v, col) in values.iter_mut().zip(map) {
                    if let Some(c) = col {
                        *v = row[*c];
                    }
                }
                tree.execute_with_stack(&values, &mut stack)
            }
        })
        .collect())
}

/// Mean absolute error of the tree over the problem samples. May be
/// non-finite if the tree overflows.
pub fn symreg_error(tree: &TreeGenome, problem: &RegressionProblem) -> Result<f64> {
    let preds = predict_rows(tree, problem)?;
    let total: f64 = preds
        .iter()
        .zip(problem.targets())
        .map(|(p, t)| (p - t).abs())
        .sum();
    Ok(total / problem.n_samples() as f64)
}

/// Mean absolute error plus bloat penalty.
#[derive(Debug, Clone)]
pub struct SymbolicRegressionEvaluator {
    problem: Arc<RegressionProblem>,
    bloat: BloatConfig,
}

impl SymbolicRegressionEvaluator {
    pub fn new(problem: Arc<RegressionProblem>, bloat_weight: f64) -> Result<Self> {
        Ok(SymbolicRegressionEvaluator {
            problem,
            bloat: BloatConfig::new(bloat_weight)?,
        })
    }

    pub fn problem(&self) -> &Arc<RegressionProblem> {
        &self.problem
    }

    pub fn bloat(&self) -> BloatConfig {
        self.bloat
    }
}

impl IndividualEvaluator for SymbolicRegressionEvaluator {
    fn evaluate(&self, genome: &Genome, higher_is_better: bool) -> Result<Score> {
        let tree = genome.as_tree()?;
        let raw = symreg_error(tree, &self.problem)?;
        if !raw.is_finite() {
            return Err(Error::Evaluation("non-finite prediction".into()));
        }
        Ok(Score {
            value: apply_bloat_penalty(raw, tree, self.bloat, higher_is_better),
            raw,
        })
    }
}
