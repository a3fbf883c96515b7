//! Evolutionary computation toolkit.
//!
//! The crate is layered the way a classic EC framework is: an [`engine`]
//! algorithm drives a breeder over a [`population::Population`] made of
//! independently configured subpopulations, whose individuals carry either a
//! GP expression tree ([`gp`]) or a fixed-length GA vector ([`ga`]).
//! Statistics observe the run through the [`events`] bus, evaluation can fan
//! out over worker threads without losing reproducibility, and
//! [`estimator::EvolutionRegressor`] wraps a run behind `fit`/`predict`.

pub mod engine;
pub mod error;
pub mod estimator;
pub mod evaluation;
pub mod events;
pub mod experiment;
pub mod fitness;
pub mod ga;
pub mod gp;
pub mod individual;
pub mod population;
pub mod variation;

pub use error::{Error, Result};
pub use fitness::Fitness;
pub use individual::{Genome, IdCounter, Individual, IndividualId};

/// Pseudo-random generator used for every run. ChaCha8 gives identical
/// streams on every platform for a given seed.
pub type RunRng = rand_chacha::ChaCha8Rng;

/// Builds the run generator from a 64-bit seed.
pub fn seeded_rng(seed: u64) -> RunRng {
    use rand::SeedableRng;
    RunRng::seed_from_u64(seed)
}
