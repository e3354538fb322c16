//! Enumeration of the numerals a Hurford grammar assigns to a number.
//!
//! Derivations are counted by memoized dynamic programming over
//! `(value, atoms)` and materialized by unranking, so uniform sampling and
//! exhaustive listing walk the same case order:
//!
//! 1. `Num * m` for each multiplier `m` dividing the value,
//! 2. `Phrase + Num` for each left-operand atom budget and phrase value,
//! 3. `Phrase - Num` likewise, when `-` is in `C`.
//!
//! A value present in both `D` and `M` yields a single leaf, so every
//! candidate is a distinct tree.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::expr::{NumeralExpr, MAX_VALUE};
use crate::grammar::GrammarParams;
use crate::system::{NumberRange, NumeralSystem, Source};

/// All numerals for one number within the atom budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationResult {
    pub number: u32,
    pub candidates: Vec<NumeralExpr>,
    pub depth_limit: u32,
}

/// Some number of the range has no numeral within the depth limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("grammar cannot express {number} within {depth} atoms")]
pub struct Incomplete {
    pub number: u32,
    pub depth: u32,
}

/// Memoized derivation counter for one grammar.
#[derive(Clone, Debug)]
pub struct Enumerator {
    params: GrammarParams,
    multipliers: Vec<u64>,
    // phrase_values[k - 1]: sorted values of Phrase derivations with exactly k atoms
    phrase_values: Vec<Vec<u64>>,
    num_memo: BTreeMap<(u64, u32), u64>,
    phrase_memo: BTreeMap<(u64, u32), u64>,
}

impl Enumerator {
    pub fn new(params: GrammarParams) -> Self {
        let multipliers: Vec<u64> = params.multipliers().iter().map(|&m| u64::from(m)).collect();
        let phrase_values = phrase_value_table(&params, &multipliers);
        Enumerator { params, multipliers, phrase_values, num_memo: BTreeMap::new(), phrase_memo: BTreeMap::new() }
    }

    pub fn params(&self) -> &GrammarParams {
        &self.params
    }

    pub fn max_depth(&self) -> u32 {
        self.params.max_depth()
    }

    /// Number of distinct numerals for `n` with exactly `atoms` atoms.
    pub fn count(&mut self, n: u32, atoms: u32) -> u64 {
        if atoms > self.max_depth() {
            return 0;
        }
        self.count_num(u64::from(n), atoms)
    }

    /// Number of distinct numerals for `n` within the depth limit.
    pub fn count_total(&mut self, n: u32) -> u64 {
        (1..=self.max_depth()).map(|k| self.count(n, k)).sum()
    }

    /// Fewest atoms any numeral for `n` needs, if one exists.
    pub fn min_atoms(&mut self, n: u32) -> Option<u32> {
        (1..=self.max_depth()).find(|&k| self.count(n, k) > 0)
    }

    /// All numerals for `n` with exactly `atoms` atoms, in case order.
    pub fn candidates(&mut self, n: u32, atoms: u32) -> Vec<NumeralExpr> {
        let total = self.count(n, atoms);
        (0..total).map(|r| self.unrank_num(u64::from(n), atoms, r)).collect()
    }

    pub fn enumerate(&mut self, n: u32) -> EnumerationResult {
        let candidates = (1..=self.max_depth()).flat_map(|k| self.candidates(n, k)).collect();
        EnumerationResult { number: n, candidates, depth_limit: self.max_depth() }
    }

    /// The `rank`-th numeral for `n` among those with exactly `atoms` atoms.
    pub fn nth(&mut self, n: u32, atoms: u32, rank: u64) -> Option<NumeralExpr> {
        (rank < self.count(n, atoms)).then(|| self.unrank_num(u64::from(n), atoms, rank))
    }

    /// Draws uniformly among all numerals for `n` within the depth limit.
    pub fn sample<R: Rng + ?Sized>(&mut self, n: u32, rng: &mut R) -> Option<NumeralExpr> {
        let total = self.count_total(n);
        if total == 0 {
            return None;
        }
        let mut r = rng.gen_range(0..total);
        for k in 1..=self.max_depth() {
            let c = self.count(n, k);
            if r < c {
                return Some(self.unrank_num(u64::from(n), k, r));
            }
            r -= c;
        }
        unreachable!("rank below total count")
    }

    /// Shortest numeral for `n`: fewest morphemes, then fewest combinators,
    /// then the smallest token sequence.
    pub fn shortest(&mut self, n: u32) -> Option<NumeralExpr> {
        let k = self.min_atoms(n)?;
        // every tree with k atoms has k - 1 combinators, so only the token order breaks ties
        self.candidates(n, k).into_iter().map(|e| (e.linearize(), e)).min_by(|a, b| a.0.cmp(&b.0)).map(|(_, e)| e)
    }

    fn count_num(&mut self, n: u64, k: u32) -> u64 {
        if k == 0 || n == 0 || n > MAX_VALUE {
            return 0;
        }
        if k == 1 {
            return u64::from(u32::try_from(n).is_ok_and(|v| self.params.is_atom(v)));
        }
        if let Some(&c) = self.num_memo.get(&(n, k)) {
            return c;
        }
        let mut total = self.count_phrase(n, k);
        for i in 1..k {
            let end = self.phrase_values[i as usize - 1].partition_point(|&p| p < n);
            for idx in 0..end {
                let p = self.phrase_values[i as usize - 1][idx];
                let rest = self.count_num(n - p, k - i);
                if rest > 0 {
                    total += self.count_phrase(p, i) * rest;
                }
            }
        }
        if self.params.allows_minus() {
            for i in 1..k {
                let start = self.phrase_values[i as usize - 1].partition_point(|&p| p <= n);
                for idx in start..self.phrase_values[i as usize - 1].len() {
                    let p = self.phrase_values[i as usize - 1][idx];
                    let rest = self.count_num(p - n, k - i);
                    if rest > 0 {
                        total += self.count_phrase(p, i) * rest;
                    }
                }
            }
        }
        self.num_memo.insert((n, k), total);
        total
    }

    fn count_phrase(&mut self, n: u64, k: u32) -> u64 {
        if k == 0 || n == 0 || n > MAX_VALUE {
            return 0;
        }
        if k == 1 {
            return u64::from(self.multipliers.binary_search(&n).is_ok());
        }
        if let Some(&c) = self.phrase_memo.get(&(n, k)) {
            return c;
        }
        let mut total = 0;
        for idx in 0..self.multipliers.len() {
            let m = self.multipliers[idx];
            if n.is_multiple_of(m) {
                total += self.count_num(n / m, k - 1);
            }
        }
        self.phrase_memo.insert((n, k), total);
        total
    }

    fn unrank_num(&mut self, n: u64, k: u32, mut r: u64) -> NumeralExpr {
        if k == 1 {
            return NumeralExpr::Atom(n as u32);
        }
        let compound = self.count_phrase(n, k);
        if r < compound {
            return self.unrank_phrase(n, k, r);
        }
        r -= compound;
        for i in 1..k {
            let end = self.phrase_values[i as usize - 1].partition_point(|&p| p < n);
            for idx in 0..end {
                let p = self.phrase_values[i as usize - 1][idx];
                let rest = self.count_num(n - p, k - i);
                let block = self.count_phrase(p, i) * rest;
                if r < block {
                    let left = self.unrank_phrase(p, i, r / rest);
                    let right = self.unrank_num(n - p, k - i, r % rest);
                    return NumeralExpr::plus(left, right);
                }
                r -= block;
            }
        }
        if self.params.allows_minus() {
            for i in 1..k {
                let start = self.phrase_values[i as usize - 1].partition_point(|&p| p <= n);
                for idx in start..self.phrase_values[i as usize - 1].len() {
                    let p = self.phrase_values[i as usize - 1][idx];
                    let rest = self.count_num(p - n, k - i);
                    let block = self.count_phrase(p, i) * rest;
                    if r < block {
                        let left = self.unrank_phrase(p, i, r / rest);
                        let right = self.unrank_num(p - n, k - i, r % rest);
                        return NumeralExpr::minus(left, right);
                    }
                    r -= block;
                }
            }
        }
        unreachable!("rank {r} out of range for ({n}, {k})")
    }

    fn unrank_phrase(&mut self, n: u64, k: u32, mut r: u64) -> NumeralExpr {
        if k == 1 {
            return NumeralExpr::Atom(n as u32);
        }
        for idx in 0..self.multipliers.len() {
            let m = self.multipliers[idx];
            if n.is_multiple_of(m) {
                let c = self.count_num(n / m, k - 1);
                if r < c {
                    return NumeralExpr::times(self.unrank_num(n / m, k - 1, r), NumeralExpr::Atom(m as u32));
                }
                r -= c;
            }
        }
        unreachable!("phrase rank out of range for ({n}, {k})")
    }
}

/// Values reachable by `Phrase` with exactly `k` atoms, for `k < max_depth`
/// (a phrase heading `+`/`-` leaves at least one atom for the right operand).
fn phrase_value_table(params: &GrammarParams, multipliers: &[u64]) -> Vec<Vec<u64>> {
    let depth = params.max_depth() as usize;
    let mut num: Vec<BTreeSet<u64>> = Vec::new();
    let mut phrase: Vec<BTreeSet<u64>> = Vec::new();
    for k in 1..depth {
        let p: BTreeSet<u64> = if k == 1 {
            multipliers.iter().copied().collect()
        } else {
            num[k - 2].iter().flat_map(|&v| multipliers.iter().map(move |&m| v * m)).filter(|&v| v <= MAX_VALUE).collect()
        };
        phrase.push(p);
        // Num values are only needed as inputs to longer phrases
        if k + 1 < depth {
            let mut nv: BTreeSet<u64> = if k == 1 {
                params.digits().iter().chain(params.multipliers()).map(|&v| u64::from(v)).collect()
            } else {
                phrase[k - 1].clone()
            };
            for i in 1..k {
                for &a in &phrase[i - 1] {
                    for &b in &num[k - i - 1] {
                        if a + b <= MAX_VALUE {
                            nv.insert(a + b);
                        }
                        if params.allows_minus() && a > b {
                            nv.insert(a - b);
                        }
                    }
                }
            }
            num.push(nv);
        }
    }
    phrase.into_iter().map(|s| s.into_iter().collect()).collect()
}

/// All numerals the grammar assigns to `n` within its depth limit.
pub fn enumerate(params: &GrammarParams, n: u32) -> EnumerationResult {
    Enumerator::new(params.clone()).enumerate(n)
}

/// True iff every number in `range` has at least one numeral.
pub fn expressible(params: &GrammarParams, range: NumberRange) -> bool {
    if !params.allows_minus() {
        return covers_without_minus(params, range);
    }
    let mut e = Enumerator::new(params.clone());
    range.iter().all(|n| e.min_atoms(n).is_some())
}

/// Without `-` every subterm is at most its whole, so values above
/// `range.hi()` can be dropped.
fn covers_without_minus(params: &GrammarParams, range: NumberRange) -> bool {
    let hi = range.hi() as usize;
    let mut num: Vec<Vec<bool>> = vec![Vec::new()];
    let mut phrase: Vec<Vec<bool>> = vec![Vec::new()];
    let mut reached = vec![false; hi + 1];
    for k in 1..=params.max_depth() as usize {
        let mut p = vec![false; hi + 1];
        let mut n = vec![false; hi + 1];
        if k == 1 {
            for &m in params.multipliers() {
                if let Some(slot) = p.get_mut(m as usize) {
                    *slot = true;
                }
            }
            for &a in params.digits().iter().chain(params.multipliers()) {
                if let Some(slot) = n.get_mut(a as usize) {
                    *slot = true;
                }
            }
        } else {
            for v in (1..=hi).filter(|&v| num[k - 1][v]) {
                for &m in params.multipliers() {
                    if let Some(slot) = p.get_mut(v * m as usize) {
                        *slot = true;
                    }
                }
            }
            n.copy_from_slice(&p);
            for i in 1..k {
                for a in (1..=hi).filter(|&a| phrase[i][a]) {
                    for b in (1..=hi - a).filter(|&b| num[k - i][b]) {
                        n[a + b] = true;
                    }
                }
            }
        }
        for (r, &x) in reached.iter_mut().zip(&n) {
            *r |= x;
        }
        num.push(n);
        phrase.push(p);
    }
    range.iter().all(|v| reached[v as usize])
}

/// The system choosing the shortest numeral for each number.
pub fn shortest_system(params: &GrammarParams, range: NumberRange) -> Result<NumeralSystem, Incomplete> {
    let mut e = Enumerator::new(params.clone());
    shortest_system_with(&mut e, range)
}

pub fn shortest_system_with(e: &mut Enumerator, range: NumberRange) -> Result<NumeralSystem, Incomplete> {
    let depth = e.max_depth();
    let entries = range.iter().map(|n| e.shortest(n).ok_or(Incomplete { number: n, depth })).collect::<Result<Vec<_>, _>>()?;
    Ok(NumeralSystem::new("shortest", Source::Manual, range, entries).expect("enumerated numerals evaluate to their number"))
}
