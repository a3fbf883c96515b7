//! Fit/predict facade over a symbolic-regression run.
//!
//! ```no_run
//! use evokit::engine::SymbolicRegressionSettings;
//! use evokit::estimator::EvolutionRegressor;
//!
//! let x = vec![vec![1.0, 2.0], vec![3.0, 4.0], vec![5.0, 7.0]];
//! let y = vec![3.0, 7.0, 12.0];
//! let mut model = EvolutionRegressor::new(SymbolicRegressionSettings::default());
//! model.fit(&x, &y).unwrap();
//! let preds = model.predict(&x).unwrap();
//! assert_eq!(preds.len(), 3);
//! ```

use std::sync::Arc;

use crate::engine::{AlgorithmConfig, SimpleEvolution, SymbolicRegressionSettings};
use crate::error::{Error, Result};
use crate::evaluation::RegressionProblem;
use crate::gp::{create_terminal_set, TreeGenome};
use crate::individual::Individual;

/// Regressor whose model is the best tree of an evolutionary run.
#[derive(Debug, Clone)]
pub struct EvolutionRegressor {
    settings: SymbolicRegressionSettings,
    fitted_best: Option<Individual>,
    feature_count: Option<usize>,
}

impl EvolutionRegressor {
    pub fn new(settings: SymbolicRegressionSettings) -> Self {
        EvolutionRegressor {
            settings,
            fitted_best: None,
            feature_count: None,
        }
    }

    pub fn settings(&self) -> &SymbolicRegressionSettings {
        &self.settings
    }

    pub fn settings_mut(&mut self) -> &mut SymbolicRegressionSettings {
        &mut self.settings
    }

    /// The run configuration `fit` would use for this data.
    pub fn algorithm_config(&self, x: &[Vec<f64>], y: &[f64]) -> Result<AlgorithmConfig> {
        let problem = RegressionProblem::new(x.to_vec(), y.to_vec())?;
        let terminals = create_terminal_set(problem.n_features())?;
        self.settings.build(Arc::new(problem), Arc::new(terminals))
    }

    /// Runs evolution on `(x, y)` and keeps the best individual. A second
    /// call discards the previous model.
    pub fn fit(&mut self, x: &[Vec<f64>], y: &[f64]) -> Result<&mut Self> {
        self.fitted_best = None;
        self.feature_count = None;
        let config = self.algorithm_config(x, y)?;
        let mut algo = SimpleEvolution::new(config)?;
        let best = algo.evolve()?.best.clone();
        self.feature_count = Some(x[0].len());
        self.fitted_best = Some(best);
        Ok(self)
    }

    pub fn is_fitted(&self) -> bool {
        self.fitted_best.is_some()
    }

    pub fn fitted_best(&self) -> Option<&Individual> {
        self.fitted_best.as_ref()
    }

    pub fn feature_count(&self) -> Option<usize> {
        self.feature_count
    }

    pub fn best_tree(&self) -> Result<&TreeGenome> {
        self.fitted_best
            .as_ref()
            .ok_or(Error::NotFitted)?
            .genome()
            .as_tree()
    }

    /// Row-wise predictions of the fitted tree.
    pub fn predict(&self, x: &[Vec<f64>]) -> Result<Vec<f64>> {
        let tree = self.best_tree()?;
        let expected = self.feature_count.ok_or(Error::NotFitted)?;
        let mut stack = Vec::with_capacity(tree.size());
        x.iter()
            .map(|row| {
                if row.len() != expected {
                    return Err(Error::FeatureCount {
                        expected,
                        actual: row.len(),
                    });
                }
                Ok(tree.execute_with_stack(row, &mut stack))
            })
            .collect()
    }

    /// Installs a model directly, bypassing `fit`.
    pub fn with_fitted(mut self, best: Individual, feature_count: usize) -> Result<Self> {
        let tree = best.genome().as_tree()?;
        if tree.terminal_set().variables().len() != feature_count {
            return Err(Error::FeatureCount {
                expected: feature_count,
                actual: tree.terminal_set().variables().len(),
            });
        }
        self.fitted_best = Some(best);
        self.feature_count = Some(feature_count);
        Ok(self)
    }
}
