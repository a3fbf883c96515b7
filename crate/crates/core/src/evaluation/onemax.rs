use crate::error::Result;
use crate::individual::Genome;

use super::{IndividualEvaluator, Score};

/// Sum of vector cells; for bit vectors, the number of ones.
#[derive(Debug, Clone, Copy, Default)]
pub struct OneMaxEvaluator;

impl IndividualEvaluator for OneMaxEvaluator {
    fn evaluate(&self, genome: &Genome, _higher_is_better: bool) -> Result<Score> {
        Ok(Score::plain(genome.as_vector()?.cells().iter().sum()))
    }
}
