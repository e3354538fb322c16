//! Greedy frontier estimation inside a natural system's local neighbourhood.
//!
//! The neighbourhood holds every system that uses the natural system's
//! digits, multipliers and combinators and gives each number a numeral of
//! the same length, so lexicon size and average morphosyntactic complexity
//! are shared by construction.
//!
//! Numbers with a single length-matching numeral are fixed first. The rest
//! are expanded `gamma` at a time from the largest number down: every
//! archived partial system is combined with every joint choice for the next
//! numbers, only Pareto-dominant partial systems under (irregularity,
//! processing complexity) survive (negated when searching for the worst
//! systems), and at most `beta` of them are kept by seeded uniform sampling.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::index;
use rand::SeedableRng;

use super::pareto::{pareto_front, ScoredPoint};
use super::{ChaCha8Rng, SearchError};
use crate::expr::{Morpheme, NumeralExpr, Op};
use crate::grammar::{AtomRoles, GrammarParams, DEFAULT_MAX_DEPTH};
use crate::hurford::Enumerator;
use crate::measures::score_words;
use crate::prior::Prior;
use crate::system::{NumberRange, NumeralSystem, Source};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Best,
    Worst,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Best => "best",
            Direction::Worst => "worst",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalSearchConfig {
    /// Maximum archive size.
    pub beta: usize,
    /// Numbers expanded per step.
    pub gamma: usize,
    pub depth: u32,
    pub direction: Direction,
    pub seed: u64,
}

impl Default for LocalSearchConfig {
    fn default() -> Self {
        LocalSearchConfig { beta: 30, gamma: 3, depth: DEFAULT_MAX_DEPTH, direction: Direction::Best, seed: 0 }
    }
}

impl LocalSearchConfig {
    /// Smaller setting for neighbourhoods too costly at the default.
    pub fn reduced() -> Self {
        LocalSearchConfig { beta: 10, gamma: 2, ..Self::default() }
    }
}

/// `(D, M, C)` and the morpheme count of every numeral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalNeighbourhoodKey {
    pub params: GrammarParams,
    pub range: NumberRange,
    /// `lengths[i]`: morpheme count for `range.lo() + i`.
    pub lengths: Vec<usize>,
}

impl LocalNeighbourhoodKey {
    /// Key of a system: multipliers are the atoms in multiplier positions,
    /// digits the remaining atoms, `-` present iff some numeral uses it.
    pub fn from_system(system: &NumeralSystem, depth: u32) -> Result<Self, SearchError> {
        let mut roles = AtomRoles::default();
        for e in system.entries() {
            roles.add(e);
        }
        let minus = system.entries().iter().any(|e| e.uses_op(Op::Minus));
        let params = GrammarParams::new(roles.digits(), roles.multiplier_positions, minus, depth)?;
        let lengths = system.entries().iter().map(NumeralExpr::morpheme_count).collect();
        Ok(LocalNeighbourhoodKey { params, range: system.range(), lengths })
    }

    pub fn length(&self, n: u32) -> Option<usize> {
        self.range.index(n).map(|i| self.lengths[i])
    }
}

/// Length-matching numerals of every number in the key's range.
#[derive(Clone, Debug)]
pub struct Neighbourhood {
    pub key: LocalNeighbourhoodKey,
    /// `alternatives[i]`: numerals for `range.lo() + i`, in enumeration order.
    pub alternatives: Vec<Vec<NumeralExpr>>,
    words: Vec<Vec<Vec<Morpheme>>>,
}

impl Neighbourhood {
    pub fn new(key: LocalNeighbourhoodKey) -> Result<Self, SearchError> {
        let mut e = Enumerator::new(key.params.clone());
        let mut alternatives = Vec::with_capacity(key.range.len());
        for (n, &len) in key.range.iter().zip(&key.lengths) {
            // every numeral with k atoms has k - 1 combinators
            let alts = if len % 2 == 1 { e.candidates(n, len.div_ceil(2) as u32) } else { Vec::new() };
            if alts.is_empty() {
                return Err(SearchError::EmptyNeighbourhood { number: n });
            }
            alternatives.push(alts);
        }
        let words = alternatives.iter().map(|alts| alts.iter().map(NumeralExpr::linearize).collect()).collect();
        Ok(Neighbourhood { key, alternatives, words })
    }

    pub fn from_system(system: &NumeralSystem, depth: u32) -> Result<Self, SearchError> {
        Self::new(LocalNeighbourhoodKey::from_system(system, depth)?)
    }

    /// Number of full systems in the neighbourhood (saturating).
    pub fn size(&self) -> u128 {
        self.alternatives.iter().fold(1u128, |acc, a| acc.saturating_mul(a.len() as u128))
    }

    fn system(&self, choice: &[usize], label: &str) -> NumeralSystem {
        let entries = choice.iter().zip(&self.alternatives).map(|(&c, alts)| alts[c].clone()).collect();
        NumeralSystem::new(label, Source::Local, self.key.range, entries).expect("enumerated numerals evaluate to their number")
    }

    /// (irregularity, processing complexity) of the numbers chosen so far.
    fn score(&self, choice: &[Option<usize>], prior: &Prior) -> (f64, f64) {
        let mut picked: Vec<(&[Morpheme], f64)> = self
            .key
            .range
            .iter()
            .zip(choice)
            .zip(&self.words)
            .filter_map(|((n, c), words)| c.map(|c| (words[c].as_slice(), prior.weight(n))))
            .collect();
        score_words(&mut picked)
    }
}

/// Estimated best (or worst) systems of the natural system's neighbourhood.
pub fn local_frontier(natural: &NumeralSystem, config: &LocalSearchConfig, prior: &Prior) -> Result<Vec<NumeralSystem>, SearchError> {
    let hood = Neighbourhood::from_system(natural, config.depth)?;
    search(&hood, natural.label(), config, prior)
}

/// Union of the best and worst frontiers, best first, without repeated systems.
pub fn local_extremes(natural: &NumeralSystem, config: &LocalSearchConfig, prior: &Prior) -> Result<Vec<NumeralSystem>, SearchError> {
    let hood = Neighbourhood::from_system(natural, config.depth)?;
    let mut out: Vec<NumeralSystem> = Vec::new();
    for direction in [Direction::Best, Direction::Worst] {
        for s in search(&hood, natural.label(), &LocalSearchConfig { direction, ..*config }, prior)? {
            if !out.iter().any(|o| o.entries() == s.entries()) {
                out.push(s);
            }
        }
    }
    Ok(out)
}

pub fn search(hood: &Neighbourhood, label: &str, config: &LocalSearchConfig, prior: &Prior) -> Result<Vec<NumeralSystem>, SearchError> {
    if config.beta == 0 || config.gamma == 0 {
        return Err(SearchError::Config("beta and gamma must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let base: Vec<Option<usize>> = hood.alternatives.iter().map(|a| (a.len() == 1).then_some(0)).collect();
    let mut open: Vec<usize> = (0..base.len()).filter(|&i| base[i].is_none()).collect();
    open.reverse();

    let sign = match config.direction {
        Direction::Best => 1.0,
        Direction::Worst => -1.0,
    };
    let mut archive = vec![base];
    for chunk in open.chunks(config.gamma) {
        let combos = joint_choices(chunk.iter().map(|&i| hood.alternatives[i].len()));
        let mut scored = Vec::with_capacity(archive.len() * combos.len());
        for partial in &archive {
            for combo in &combos {
                let mut next = partial.clone();
                for (&i, &c) in chunk.iter().zip(combo) {
                    next[i] = Some(c);
                }
                let (x, y) = hood.score(&next, prior);
                scored.push(ScoredPoint::new(sign * x, sign * y, next));
            }
        }
        let front = pareto_front(scored);
        archive = if front.len() > config.beta {
            let mut keep = index::sample(&mut rng, front.len(), config.beta).into_vec();
            keep.sort_unstable();
            keep.into_iter().map(|i| front[i].payload.clone()).collect()
        } else {
            front.into_iter().map(|p| p.payload).collect()
        };
    }

    Ok(archive
        .iter()
        .enumerate()
        .map(|(i, choice)| {
            let full: Vec<usize> = choice.iter().map(|c| c.expect("every number assigned")).collect();
            hood.system(&full, &format!("{label}-{}-{i:02}", config.direction.as_str()))
        })
        .collect())
}

/// Every joint choice of one index per slot, first slot varying slowest.
fn joint_choices(sizes: impl Iterator<Item = usize>) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for size in sizes {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..size).map(move |c| {
                    let mut v = prefix.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    out
}
