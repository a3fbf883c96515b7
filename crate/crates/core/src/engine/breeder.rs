use std::fmt;

use rand::RngCore;

use crate::error::Result;
use crate::individual::{IdCounter, Individual};
use crate::population::Subpopulation;
use crate::variation::{
    apply_elitism, apply_operator_sequence, tournament_select, SelectionMethod,
};

/// Turns an evaluated subpopulation into the next generation.
pub trait Breeder: Send + Sync + fmt::Debug {
    fn breed(
        &self,
        sub: &Subpopulation,
        ids: &mut IdCounter,
        rng: &mut dyn RngCore,
    ) -> Result<Vec<Individual>>;
}

/// Elites first, then tournament winners run through the operator sequence.
#[derive(Debug, Clone, Copy, Default)]
pub struct SimpleBreeder;

impl SimpleBreeder {
    pub fn breed_next_generation(
        &self,
        sub: &Subpopulation,
        ids: &mut IdCounter,
        rng: &mut dyn RngCore,
    ) -> Result<Vec<Individual>> {
        let mut next = apply_elitism(sub.individuals(), sub.elitism_rate(), ids)?;
        let remaining = sub.population_size() - next.len();
        if remaining > 0 {
            let pool = match sub.selection().method {
                SelectionMethod::Tournament => tournament_select(
                    sub.individuals(),
                    sub.selection().tournament_size,
                    remaining,
                    ids,
                    rng,
                )?,
            };
            next.extend(apply_operator_sequence(pool, sub.operator_sequence(), rng)?);
        }
        Ok(next)
    }
}

impl Breeder for SimpleBreeder {
    fn breed(
        &self,
        sub: &Subpopulation,
        ids: &mut IdCounter,
        rng: &mut dyn RngCore,
    ) -> Result<Vec<Individual>> {
        self.breed_next_generation(sub, ids, rng)
    }
}
