use std::cmp::Ordering;

use rand::{Rng, RngCore};

use crate::error::{Error, Result};
use crate::individual::{IdCounter, Individual};

fn ensure_evaluated(individuals: &[Individual]) -> Result<()> {
    if individuals.iter().any(|i| !i.is_evaluated()) {
        return Err(Error::Unevaluated);
    }
    Ok(())
}

/// Best-first ordering: fitness, then lower id.
fn rank_order(a: &Individual, b: &Individual) -> Ordering {
    match (a.better_than(b), b.better_than(a)) {
        (Ok(true), _) => Ordering::Less,
        (_, Ok(true)) => Ordering::Greater,
        _ => a.id().cmp(&b.id()),
    }
}

/// Index of the tournament winner among `entrants` (indices into
/// `individuals`).
pub fn tournament_winner(individuals: &[Individual], entrants: &[usize]) -> Result<usize> {
    let (&first, rest) = entrants
        .split_first()
        .ok_or_else(|| Error::config("tournament needs at least one entrant"))?;
    let mut best = first;
    for &i in rest {
        if individuals[i].preferred_over(&individuals[best])? {
            best = i;
        }
    }
    Ok(best)
}

/// Runs `n` tournaments of size `k`, entrants drawn uniformly with
/// replacement, and returns duplicates of the winners.
pub fn tournament_select(
    individuals: &[Individual],
    k: usize,
    n: usize,
    ids: &mut IdCounter,
    rng: &mut dyn RngCore,
) -> Result<Vec<Individual>> {
    if k == 0 {
        return Err(Error::config("tournament_size must be >= 1"));
    }
    if individuals.is_empty() {
        return Err(Error::config("cannot select from an empty subpopulation"));
    }
    ensure_evaluated(individuals)?;
    let mut entrants = vec![0usize; k];
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        for e in entrants.iter_mut() {
            *e = rng.random_range(0..individuals.len());
        }
        let w = tournament_winner(individuals, &entrants)?;
        out.push(individuals[w].duplicate(ids));
    }
    Ok(out)
}

/// `ceil(rate * size)`, tolerant of rounding noise in the product.
pub fn elite_count(rate: f64, size: usize) -> usize {
    let raw = rate * size as f64;
    let n = (raw - 1e-9).ceil().max(0.0) as usize;
    n.min(size)
}

/// Duplicates of the best `ceil(rate * size)` individuals, best first.
pub fn apply_elitism(
    individuals: &[Individual],
    rate: f64,
    ids: &mut IdCounter,
) -> Result<Vec<Individual>> {
    if !(0.0..=1.0).contains(&rate) {
        return Err(Error::config(format!("elitism_rate {rate} outside [0, 1]")));
    }
    let n = elite_count(rate, individuals.len());
    if n == 0 {
        return Ok(Vec::new());
    }
    ensure_evaluated(individuals)?;
    let mut order: Vec<&Individual> = individuals.iter().collect();
    order.sort_by(|a, b| rank_order(a, b));
    Ok(order[..n].iter().map(|i| i.duplicate(ids)).collect())
}
