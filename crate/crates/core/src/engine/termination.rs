use std::fmt;

use crate::error::{Error, Result};
use crate::fitness::Fitness;

/// Decides whether a run may stop early. Consulted once per generation with
/// the best fitness found so far.
pub trait TerminationChecker: Send + Sync + fmt::Debug {
    fn should_terminate(&self, best: &Fitness, generation: usize) -> Result<bool>;
}

/// `|raw(best) - optimal| <= threshold`. The raw value excludes any
/// parsimony penalty.
pub fn check_termination_threshold(best: &Fitness, optimal: f64, threshold: f64) -> Result<bool> {
    if threshold.is_nan() || threshold < 0.0 {
        return Err(Error::config(format!("threshold {threshold} must be >= 0")));
    }
    Ok((best.raw()? - optimal).abs() <= threshold)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdFromTargetTerminationChecker {
    pub optimal: f64,
    pub threshold: f64,
}

impl ThresholdFromTargetTerminationChecker {
    pub fn new(optimal: f64, threshold: f64) -> Result<Self> {
        if threshold.is_nan() || threshold < 0.0 || !optimal.is_finite() {
            return Err(Error::config(
                "termination needs finite optimal and threshold >= 0",
            ));
        }
        Ok(ThresholdFromTargetTerminationChecker { optimal, threshold })
    }
}

impl TerminationChecker for ThresholdFromTargetTerminationChecker {
    fn should_terminate(&self, best: &Fitness, _generation: usize) -> Result<bool> {
        check_termination_threshold(best, self.optimal, self.threshold)
    }
}
