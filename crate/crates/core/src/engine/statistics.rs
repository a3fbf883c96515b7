use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::events::{Event, EventBus, EventKind};
use crate::population::Subpopulation;

/// Best, average and worst fitness of one subpopulation at one generation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenerationStats {
    pub generation: usize,
    pub subpopulation: usize,
    pub best: f64,
    pub average: f64,
    pub worst: f64,
}

pub fn record_generation_stats(
    sub: &Subpopulation,
    subpopulation: usize,
    generation: usize,
) -> Result<GenerationStats> {
    let values = sub
        .individuals()
        .iter()
        .map(|i| i.fitness().value())
        .collect::<Result<Vec<f64>>>()?;
    if values.is_empty() {
        return Err(Error::config("cannot summarize an empty subpopulation"));
    }
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    let average = values.iter().sum::<f64>() / values.len() as f64;
    let (best, worst) = if sub.higher_is_better() {
        (hi, lo)
    } else {
        (lo, hi)
    };
    Ok(GenerationStats {
        generation,
        subpopulation,
        best,
        average,
        worst,
    })
}

/// Observer attached to a run's event bus.
pub trait Statistics: Send + Sync + std::fmt::Debug {
    fn attach(&self, bus: &mut EventBus);
}

/// Collects one [`GenerationStats`] row per subpopulation per generation.
/// Clones share the same row buffer.
#[derive(Debug, Clone, Default)]
pub struct BestAverageWorstStatistics {
    rows: Arc<Mutex<Vec<GenerationStats>>>,
    echo: bool,
}

impl BestAverageWorstStatistics {
    pub fn new() -> Self {
        Self::default()
    }

    /// Also print each row to stdout as it arrives.
    pub fn printing() -> Self {
        BestAverageWorstStatistics {
            rows: Arc::default(),
            echo: true,
        }
    }

    pub fn rows(&self) -> Vec<GenerationStats> {
        self.rows.lock().expect("statistics lock").clone()
    }

    pub fn clear(&self) {
        self.rows.lock().expect("statistics lock").clear();
    }
}

impl Statistics for BestAverageWorstStatistics {
    fn attach(&self, bus: &mut EventBus) {
        let rows = self.rows.clone();
        let echo = self.echo;
        bus.subscribe(EventKind::GenerationEnded, move |event| {
            if let Event::GenerationEnded { stats, .. } = event {
                if echo {
                    for s in stats.iter() {
                        println!(
                            "generation {} subpopulation {}: best {} average {} worst {}",
                            s.generation, s.subpopulation, s.best, s.average, s.worst
                        );
                    }
                }
                rows.lock()
                    .map_err(|_| "statistics lock poisoned")?
                    .extend_from_slice(stats);
            }
            Ok(())
        });
    }
}
