//! Scalar fitness with an optimization direction.

use crate::error::{Error, Result};

/// Cached fitness of one individual.
///
/// `value` is what selection compares; it includes any parsimony penalty.
/// `raw` is the objective before the penalty was applied and is what
/// target-based termination looks at. Both are equal when no penalty is used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fitness {
    value: f64,
    raw: f64,
    is_evaluated: bool,
    higher_is_better: bool,
}

impl Fitness {
    /// Fitness that still needs evaluating.
    pub fn unevaluated(higher_is_better: bool) -> Self {
        Fitness {
            value: f64::NAN,
            raw: f64::NAN,
            is_evaluated: false,
            higher_is_better,
        }
    }

    /// Evaluated fitness where the penalized and raw values coincide.
    pub fn new(value: f64, higher_is_better: bool) -> Result<Self> {
        Self::with_raw(value, value, higher_is_better)
    }

    pub fn with_raw(value: f64, raw: f64, higher_is_better: bool) -> Result<Self> {
        if !value.is_finite() || !raw.is_finite() {
            return Err(Error::Evaluation(format!(
                "fitness must be finite (value {value}, raw {raw})"
            )));
        }
        Ok(Fitness {
            value,
            raw,
            is_evaluated: true,
            higher_is_better,
        })
    }

    /// Sentinel assigned when an evaluation fails (non-finite output).
    pub fn worst(higher_is_better: bool) -> Self {
        let v = if higher_is_better {
            -WORST_MAGNITUDE
        } else {
            WORST_MAGNITUDE
        };
        Fitness {
            value: v,
            raw: v,
            is_evaluated: true,
            higher_is_better,
        }
    }

    pub fn value(&self) -> Result<f64> {
        if self.is_evaluated {
            Ok(self.value)
        } else {
            Err(Error::Unevaluated)
        }
    }

    pub fn raw(&self) -> Result<f64> {
        if self.is_evaluated {
            Ok(self.raw)
        } else {
            Err(Error::Unevaluated)
        }
    }

    pub fn is_evaluated(&self) -> bool {
        self.is_evaluated
    }

    pub fn higher_is_better(&self) -> bool {
        self.higher_is_better
    }

    pub(crate) fn invalidate(&mut self) {
        self.is_evaluated = false;
        self.value = f64::NAN;
        self.raw = f64::NAN;
    }

    /// True iff `self` is strictly preferred to `other`.
    pub fn better_than(&self, other: &Fitness) -> Result<bool> {
        if !self.is_evaluated || !other.is_evaluated {
            return Err(Error::Unevaluated);
        }
        if self.higher_is_better != other.higher_is_better {
            return Err(Error::DirectionMismatch);
        }
        Ok(if self.higher_is_better {
            self.value > other.value
        } else {
            self.value < other.value
        })
    }
}

/// Magnitude of the failure sentinel, kept finite so averages stay finite.
pub const WORST_MAGNITUDE: f64 = 1e30;

/// Free-function form of [`Fitness::better_than`].
pub fn better_than(a: &Fitness, b: &Fitness) -> Result<bool> {
    a.better_than(b)
}
