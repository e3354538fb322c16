//! Search over numeral systems: Pareto utilities, the genetic algorithm over
//! `(D, M)` pairs, random baseline sampling and greedy local-neighbourhood
//! frontier estimation.
//!
//! All searches draw from a [`ChaCha8Rng`] seeded from the run config and are
//! reproducible bit-for-bit.

pub mod baseline;
pub mod ga;
pub mod local;
pub mod pareto;

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand::seq::index;
use rand::Rng;
pub use rand_chacha::ChaCha8Rng;

use crate::grammar::{AtomRoles, GrammarError, GrammarParams};
use crate::system::NumeralSystem;

pub use baseline::{sample_baselines, BaselineConfig};
pub use ga::{run_ga, GaConfig, GaConstraint, GaIndividual, GaRun};
pub use local::{local_extremes, local_frontier, Direction, LocalNeighbourhoodKey, LocalSearchConfig, Neighbourhood};
pub use pareto::{dominates, hypervolume, pareto_front, ScoredPoint};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("invalid configuration: {0}")]
    Config(&'static str),
    #[error("no expressible grammar after {attempts} draws from the attested pools")]
    ResampleExhausted { attempts: u32 },
    #[error("no numeral of the required length for {number}")]
    EmptyNeighbourhood { number: u32 },
    #[error(transparent)]
    Grammar(#[from] GrammarError),
}

/// Digits and multipliers attested in at least one natural system.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AttestedPools {
    pub digits: BTreeSet<u32>,
    pub multipliers: BTreeSet<u32>,
}

impl AttestedPools {
    pub fn from_systems<'a>(systems: impl IntoIterator<Item = &'a NumeralSystem>) -> Self {
        let mut pools = AttestedPools::default();
        for s in systems {
            let mut roles = AtomRoles::default();
            for e in s.entries() {
                roles.add(e);
            }
            pools.digits.extend(roles.digits());
            pools.multipliers.extend(roles.multiplier_positions);
        }
        pools
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.digits.is_empty() {
            return Err(SearchError::Config("attested digit pool is empty"));
        }
        if self.multipliers.is_empty() {
            return Err(SearchError::Config("attested multiplier pool is empty"));
        }
        Ok(())
    }
}

/// Probability that a sampled grammar also has `-`.
pub const MINUS_PROBABILITY: f64 = 0.2;

/// One draw of the baseline recipe: 3 to 12 digits and 1 to 3 multipliers
/// from the pools (capped by pool size), `+` and `*` always, `-` with
/// probability [`MINUS_PROBABILITY`].
pub fn sample_grammar<R: Rng + ?Sized>(rng: &mut R, pools: &AttestedPools, max_depth: u32) -> Result<GrammarParams, SearchError> {
    let minus = rng.gen_bool(MINUS_PROBABILITY);
    sample_lexicon(rng, pools, minus, max_depth)
}

/// Digits and multipliers of the recipe with the combinators fixed.
pub fn sample_lexicon<R: Rng + ?Sized>(
    rng: &mut R,
    pools: &AttestedPools,
    minus: bool,
    max_depth: u32,
) -> Result<GrammarParams, SearchError> {
    pools.validate()?;
    let digits = choose_subset(rng, &pools.digits, 3, 12);
    let multipliers = choose_subset(rng, &pools.multipliers, 1, 3);
    Ok(GrammarParams::new(digits, multipliers, minus, max_depth)?)
}

fn choose_subset<R: Rng + ?Sized>(rng: &mut R, pool: &BTreeSet<u32>, min: usize, max: usize) -> Vec<u32> {
    let items: Vec<u32> = pool.iter().copied().collect();
    let hi = max.min(items.len());
    let lo = min.min(hi);
    let size = rng.gen_range(lo..=hi);
    let mut picked: Vec<u32> = index::sample(rng, items.len(), size).into_iter().map(|i| items[i]).collect();
    picked.sort_unstable();
    picked
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn recipe_respects_size_bounds() {
        let pools = AttestedPools { digits: (1..=20).collect(), multipliers: [5, 10, 20, 100].into() };
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..500 {
            let g = sample_grammar(&mut rng, &pools, 5).unwrap();
            assert!((3..=12).contains(&g.digits().len()));
            assert!((1..=3).contains(&g.multipliers().len()));
            assert!(g.digits().is_subset(&pools.digits));
            assert!(g.multipliers().is_subset(&pools.multipliers));
        }
    }

    #[test]
    fn small_pools_cap_the_draw() {
        let pools = AttestedPools { digits: [1, 2].into(), multipliers: [3].into() };
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = sample_grammar(&mut rng, &pools, 5).unwrap();
        assert_eq!(g.digits().len(), 2);
        assert!(sample_grammar(&mut rng, &AttestedPools::default(), 5).is_err());
    }
}
