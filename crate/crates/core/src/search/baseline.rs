//! Random baseline systems.
//!
//! Each batch draws one grammar type by the baseline recipe, redrawing digits
//! and multipliers until it expresses the whole range, then emits `per_batch`
//! systems that pick a numeral for every number uniformly among all its
//! derivations within the depth limit.

use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};

use super::{sample_lexicon, AttestedPools, ChaCha8Rng, SearchError, MINUS_PROBABILITY};
use crate::grammar::{GrammarParams, DEFAULT_MAX_DEPTH};
use crate::hurford::{expressible, Enumerator};
use crate::system::{NumberRange, NumeralSystem, Source};

#[derive(Clone, Debug, PartialEq)]
pub struct BaselineConfig {
    pub batches: u32,
    pub per_batch: u32,
    pub max_depth: u32,
    pub seed: u64,
    pub range: NumberRange,
    pub pools: AttestedPools,
    /// Draws allowed per batch before giving up on the pools.
    pub retry_budget: u32,
}

impl BaselineConfig {
    pub fn new(pools: AttestedPools, seed: u64) -> Self {
        BaselineConfig {
            batches: 100,
            per_batch: 100,
            max_depth: DEFAULT_MAX_DEPTH,
            seed,
            range: NumberRange::default(),
            pools,
            retry_budget: 1_000,
        }
    }
}

/// An expressible grammar type for one batch, with its warmed enumerator.
/// The combinators are drawn once; digits and multipliers are redrawn until
/// the range is covered.
pub fn sample_batch_type(rng: &mut ChaCha8Rng, config: &BaselineConfig) -> Result<Enumerator, SearchError> {
    let minus = rng.gen_bool(MINUS_PROBABILITY);
    for _ in 0..config.retry_budget {
        let params = sample_lexicon(rng, &config.pools, minus, config.max_depth)?;
        if expressible(&params, config.range) {
            return Ok(Enumerator::new(params));
        }
    }
    Err(SearchError::ResampleExhausted { attempts: config.retry_budget })
}

/// One system choosing uniformly among each number's derivations.
pub fn sample_system(e: &mut Enumerator, rng: &mut ChaCha8Rng, range: NumberRange, label: &str) -> NumeralSystem {
    let entries = range.iter().map(|n| e.sample(n, rng).expect("grammar type expresses the range")).collect();
    NumeralSystem::new(label, Source::Baseline, range, entries).expect("sampled numerals evaluate to their number")
}

/// Systems and the grammar type of the batch each came from.
pub fn sample_baselines(config: &BaselineConfig) -> Result<Vec<(GrammarParams, NumeralSystem)>, SearchError> {
    if config.max_depth == 0 {
        return Err(SearchError::Config("max depth must be at least 1"));
    }
    config.pools.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut out = Vec::with_capacity((config.batches * config.per_batch) as usize);
    for batch in 0..config.batches {
        let mut e = sample_batch_type(&mut rng, config)?;
        for i in 0..config.per_batch {
            let label = format!("baseline-{batch:03}-{i:03}");
            let system = sample_system(&mut e, &mut rng, config.range, &label);
            out.push((e.params().clone(), system));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pools() -> AttestedPools {
        AttestedPools { digits: (1..=12).collect(), multipliers: [5, 10, 20].into() }
    }

    #[test]
    fn systems_are_total_and_valid() {
        let config = BaselineConfig { batches: 2, per_batch: 3, ..BaselineConfig::new(pools(), 11) };
        let out = sample_baselines(&config).unwrap();
        assert_eq!(out.len(), 6);
        for (g, s) in &out {
            assert_eq!(s.range(), NumberRange::default());
            for (n, e) in s.iter() {
                assert_eq!(e.evaluate(), Ok(u64::from(n)));
                assert!(g.conforms(e));
                assert!(e.atom_count() <= 5);
            }
        }
    }

    #[test]
    fn seeded_runs_repeat() {
        let config = BaselineConfig { batches: 2, per_batch: 2, ..BaselineConfig::new(pools(), 5) };
        assert_eq!(sample_baselines(&config).unwrap(), sample_baselines(&config).unwrap());
    }

    #[test]
    fn degenerate_pools_exhaust_the_budget() {
        let pools = AttestedPools { digits: [1, 2].into(), multipliers: [3].into() };
        let config = BaselineConfig { batches: 1, per_batch: 1, retry_budget: 5, ..BaselineConfig::new(pools, 1) };
        assert_eq!(sample_baselines(&config), Err(SearchError::ResampleExhausted { attempts: 5 }));
        assert!(sample_baselines(&BaselineConfig::new(AttestedPools::default(), 1)).is_err());
    }
}
