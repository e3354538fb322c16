//! Genetic algorithm over `(D, M)` pairs minimizing lexicon size and average
//! morphosyntactic complexity.
//!
//! Each pair is evaluated through its shortest-numeral system. Every
//! generation keeps the Pareto-dominant archive, breeds `population_size`
//! offspring from it with 1 to 3 random mutations each (add, remove or
//! replace one element of `D` or `M`, drawn from the attested pools), and
//! keeps the Pareto-dominant members of archive and offspring together. The
//! archive never loses ground, so its hypervolume cannot shrink.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use rand::seq::IteratorRandom;
use rand::{Rng, SeedableRng};

use super::pareto::{pareto_front, ScoredPoint};
use super::{sample_grammar, AttestedPools, ChaCha8Rng, SearchError};
use crate::grammar::{GrammarParams, DEFAULT_MAX_DEPTH};
use crate::hurford::{shortest_system_with, Enumerator};
use crate::measures;
use crate::prior::{Prior, PriorKind};
use crate::system::{NumberRange, NumeralSystem, Source};

/// Restriction on the grammars the search may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaConstraint {
    /// `D = {1, ..., k}` for some `k <= max`.
    SequentialDigits { max: u32 },
}

impl GaConstraint {
    pub const SEQUENTIAL_DIGITS_MAX: u32 = 20;

    fn admits(&self, params: &GrammarParams) -> bool {
        match *self {
            GaConstraint::SequentialDigits { max } => {
                let k = params.digits().len() as u32;
                k <= max && params.digits().iter().copied().eq(1..=k)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GaConfig {
    pub population_size: usize,
    pub max_generations: u32,
    pub seed: u64,
    pub prior: PriorKind,
    pub constraint: Option<GaConstraint>,
    pub pools: AttestedPools,
    pub max_depth: u32,
    pub range: NumberRange,
    /// Draws allowed to produce one valid individual.
    pub retry_budget: u32,
}

impl GaConfig {
    pub fn new(pools: AttestedPools, seed: u64) -> Self {
        GaConfig {
            population_size: 100,
            max_generations: 50,
            seed,
            prior: PriorKind::PowerLaw(2.0),
            constraint: None,
            pools,
            max_depth: DEFAULT_MAX_DEPTH,
            range: NumberRange::default(),
            retry_budget: 1_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GaIndividual {
    pub params: GrammarParams,
    pub system: NumeralSystem,
    pub lexicon_size: usize,
    pub avg_morph_complexity: f64,
}

impl GaIndividual {
    pub fn objectives(&self) -> (f64, f64) {
        (self.lexicon_size as f64, self.avg_morph_complexity)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GaRun {
    /// Final Pareto-dominant archive, ordered by objectives.
    pub frontier: Vec<GaIndividual>,
    /// Archive objective points after initialization and after each generation.
    pub history: Vec<Vec<(f64, f64)>>,
    /// Every individual evaluated during the run, keyed by its grammar.
    pub evaluated: Vec<GaIndividual>,
}

struct Evaluator {
    prior: Prior,
    range: NumberRange,
    cache: BTreeMap<GrammarParams, Option<GaIndividual>>,
}

impl Evaluator {
    fn evaluate(&mut self, params: &GrammarParams) -> Option<GaIndividual> {
        if let Some(hit) = self.cache.get(params) {
            return hit.clone();
        }
        let mut e = Enumerator::new(params.clone());
        let result = shortest_system_with(&mut e, self.range).ok().map(|system| {
            let system = system.with_label("ga").with_source(Source::Ga);
            GaIndividual {
                lexicon_size: params.lexicon_size(),
                avg_morph_complexity: measures::avg_morph_complexity(&system, &self.prior),
                params: params.clone(),
                system,
            }
        });
        self.cache.insert(params.clone(), result.clone());
        result
    }
}

pub fn run_ga(config: &GaConfig) -> Result<GaRun, SearchError> {
    config.pools.validate()?;
    if config.population_size == 0 {
        return Err(SearchError::Config("population size must be positive"));
    }
    if config.max_depth == 0 {
        return Err(SearchError::Config("max depth must be at least 1"));
    }
    if let Some(GaConstraint::SequentialDigits { max: 0 }) = config.constraint {
        return Err(SearchError::Config("sequential digit bound must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut eval = Evaluator { prior: Prior::new(config.prior, config.range), range: config.range, cache: BTreeMap::new() };

    let mut population = Vec::with_capacity(config.population_size);
    for _ in 0..config.population_size {
        population.push(initial_individual(&mut rng, config, &mut eval)?);
    }
    let mut archive = select(population);
    let mut history = alloc::vec![objective_points(&archive)];

    for _ in 0..config.max_generations {
        let mut offspring = Vec::with_capacity(config.population_size);
        for _ in 0..config.population_size {
            let parent = &archive[rng.gen_range(0..archive.len())];
            for _ in 0..config.retry_budget {
                let Some(child) = mutate(&mut rng, &parent.params, config) else { continue };
                if let Some(ind) = eval.evaluate(&child) {
                    offspring.push(ind);
                    break;
                }
            }
        }
        archive.extend(offspring);
        archive = select(archive);
        history.push(objective_points(&archive));
    }

    let evaluated = eval.cache.into_values().flatten().collect();
    Ok(GaRun { frontier: archive, history, evaluated })
}

/// Pareto-dominant individuals, one per grammar.
fn select(individuals: Vec<GaIndividual>) -> Vec<GaIndividual> {
    let mut seen = BTreeSet::new();
    let unique: Vec<ScoredPoint<GaIndividual>> = individuals
        .into_iter()
        .filter(|ind| seen.insert(ind.params.clone()))
        .map(|ind| {
            let (x, y) = ind.objectives();
            ScoredPoint::new(x, y, ind)
        })
        .collect();
    pareto_front(unique).into_iter().map(|p| p.payload).collect()
}

fn objective_points(archive: &[GaIndividual]) -> Vec<(f64, f64)> {
    archive.iter().map(GaIndividual::objectives).collect()
}

fn initial_individual(rng: &mut ChaCha8Rng, config: &GaConfig, eval: &mut Evaluator) -> Result<GaIndividual, SearchError> {
    for _ in 0..config.retry_budget {
        let mut params = sample_grammar(rng, &config.pools, config.max_depth)?;
        if let Some(GaConstraint::SequentialDigits { max }) = config.constraint {
            let k = rng.gen_range(1..=max);
            params = GrammarParams::new(1..=k, params.multipliers().iter().copied(), params.allows_minus(), config.max_depth)?;
        }
        if let Some(ind) = eval.evaluate(&params) {
            return Ok(ind);
        }
    }
    Err(SearchError::ResampleExhausted { attempts: config.retry_budget })
}

/// Applies 1 to 3 random edits; `None` when an edit leaves a set empty or
/// breaks the constraint.
fn mutate(rng: &mut ChaCha8Rng, params: &GrammarParams, config: &GaConfig) -> Option<GrammarParams> {
    let mut digits = params.digits().clone();
    let mut multipliers = params.multipliers().clone();
    for _ in 0..rng.gen_range(1..=3) {
        let edit = rng.gen_range(0..3u8);
        if rng.gen_bool(0.5) {
            match config.constraint {
                Some(GaConstraint::SequentialDigits { max }) => {
                    let k = digits.len() as u32;
                    let k = match edit {
                        0 => (k + 1).min(max),
                        1 => k.saturating_sub(1),
                        _ => rng.gen_range(1..=max),
                    };
                    digits = (1..=k).collect();
                }
                None => edit_set(rng, &mut digits, &config.pools.digits, edit),
            }
        } else {
            edit_set(rng, &mut multipliers, &config.pools.multipliers, edit);
        }
    }
    let child = GrammarParams::new(digits, multipliers, params.allows_minus(), config.max_depth).ok()?;
    match config.constraint {
        Some(c) if !c.admits(&child) => None,
        _ => Some(child),
    }
}

fn edit_set(rng: &mut ChaCha8Rng, set: &mut BTreeSet<u32>, pool: &BTreeSet<u32>, edit: u8) {
    let add = |rng: &mut ChaCha8Rng, set: &mut BTreeSet<u32>| {
        if let Some(v) = pool.iter().filter(|v| !set.contains(v)).copied().choose(rng) {
            set.insert(v);
        }
    };
    match edit {
        0 => add(rng, set),
        1 => {
            if let Some(v) = set.iter().copied().choose(rng) {
                set.remove(&v);
            }
        }
        _ => {
            if let Some(v) = set.iter().copied().choose(rng) {
                set.remove(&v);
                add(rng, set);
                if set.is_empty() {
                    set.insert(v);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::pareto::{dominates, hypervolume};

    fn pools() -> AttestedPools {
        AttestedPools { digits: (1..=20).collect(), multipliers: [5, 10, 15, 20, 60, 80, 100].into() }
    }

    fn small(seed: u64) -> GaConfig {
        GaConfig { population_size: 20, max_generations: 6, ..GaConfig::new(pools(), seed) }
    }

    #[test]
    fn archive_is_elitist_and_non_dominated() {
        let run = run_ga(&small(3)).unwrap();
        assert_eq!(run.history.len(), 7);
        for w in run.history.windows(2) {
            for p in &w[1] {
                assert!(!w[0].iter().any(|q| dominates(*q, *p)));
            }
            let reference = (200.0, 50.0);
            assert!(hypervolume(&w[1], reference) >= hypervolume(&w[0], reference));
        }
        for a in &run.frontier {
            for b in &run.frontier {
                assert!(!dominates(a.objectives(), b.objectives()));
            }
        }
    }

    #[test]
    fn seeded_runs_repeat() {
        assert_eq!(run_ga(&small(9)).unwrap().history, run_ga(&small(9)).unwrap().history);
    }

    #[test]
    fn sequential_digit_constraint_holds() {
        let config = GaConfig { constraint: Some(GaConstraint::SequentialDigits { max: 20 }), ..small(4) };
        let run = run_ga(&config).unwrap();
        for ind in run.frontier.iter().chain(&run.evaluated) {
            let k = ind.params.digits().len() as u32;
            assert!(k <= 20);
            assert!(ind.params.digits().iter().copied().eq(1..=k));
        }
    }

    #[test]
    fn decimal_is_beaten_at_lexicon_ten() {
        let range = NumberRange::default();
        let mut eval = Evaluator { prior: Prior::power_law(range), range, cache: BTreeMap::new() };
        let mut avg = |m: &[u32], minus: bool| {
            let ind = eval.evaluate(&GrammarParams::new(1..=9, m.iter().copied(), minus, 5).unwrap()).unwrap();
            assert_eq!(ind.lexicon_size, 10);
            ind.avg_morph_complexity
        };
        let decimal = avg(&[10], false);
        assert!((decimal - 1.147_948_301_362_414).abs() < 1e-9);
        assert!((avg(&[5, 12], false) - 1.143_748_256_124_233).abs() < 1e-9);
        assert!((avg(&[5, 20], true) - 1.138_212_591_267_168).abs() < 1e-9);
    }

    #[test]
    fn empty_pools_are_rejected() {
        assert!(matches!(run_ga(&GaConfig::new(AttestedPools::default(), 1)), Err(SearchError::Config(_))));
    }
}
