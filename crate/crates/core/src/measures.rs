//! Scores of a numeral system.
//!
//! * irregularity: bits to encode the minimal DFA,
//!   `|Z| (2 log2 |S| + log2 |Σ|) + log2 |S| + |S|`;
//! * processing complexity: prior-weighted bits to pick the unique path of
//!   each numeral through the DFA. A path costs `log2` of the source
//!   out-degree for every transition taken plus one bit for every accepting
//!   state visited, including pass-through states and the final one;
//! * lexicon size: distinct atom values;
//! * average morphosyntactic complexity: prior-weighted atoms + combinators.

use alloc::collections::BTreeSet;
use alloc::string::String;

use crate::automaton::{Automaton, AutomatonError, ParseTrace, RawDfa};
use crate::expr::Morpheme;
use crate::prior::{Prior, PriorKind};
use crate::system::{NumeralSystem, Source};
use alloc::vec::Vec;

fn log2_count(n: usize) -> f64 {
    libm::log2(n as f64)
}

/// Description length of the automaton, in bits.
pub fn irregularity(a: &Automaton) -> f64 {
    let states = log2_count(a.state_count());
    let transitions = a.transition_count() as f64;
    transitions * (2.0 * states + log2_count(a.alphabet_size())) + states + a.state_count() as f64
}

/// Bits to encode one accepted path.
pub fn path_cost(trace: &ParseTrace) -> f64 {
    let choices: f64 = trace.transitions.iter().zip(&trace.out_degrees).map(|(_, &d)| log2_count(d)).sum();
    let accepting = trace.accepting.iter().filter(|&&f| f).count();
    choices + accepting as f64
}

/// Prior-weighted path cost over every numeral of the system.
pub fn processing_complexity(system: &NumeralSystem, a: &Automaton, prior: &Prior) -> Result<f64, AutomatonError> {
    let mut total = 0.0;
    for (n, e) in system.iter() {
        let trace = a.parse(&e.linearize())?;
        total += prior.weight(n) * path_cost(&trace);
    }
    Ok(total)
}

/// `(irregularity, processing complexity)` of a finite language whose words
/// carry prior weights. Same values as building the [`Automaton`] and scoring
/// it, without the canonical renumbering. Words must be distinct.
pub fn score_words(words: &mut [(&[Morpheme], f64)]) -> (f64, f64) {
    words.sort_unstable_by(|a, b| a.0.cmp(b.0));
    let sorted: Vec<&[Morpheme]> = words.iter().map(|&(w, _)| w).collect();
    let dfa = RawDfa::from_sorted(&sorted);
    let reachable = dfa.reachable();
    let mut states = 0;
    let mut transitions = 0;
    let mut symbols = Vec::new();
    for s in (0..reachable.len()).filter(|&s| reachable[s]) {
        states += 1;
        transitions += dfa.transitions[s].len();
        symbols.extend(dfa.transitions[s].iter().map(|&(sym, _)| sym));
    }
    symbols.sort_unstable();
    symbols.dedup();
    let s_bits = log2_count(states);
    let irregularity = transitions as f64 * (2.0 * s_bits + log2_count(symbols.len())) + s_bits + states as f64;
    let processing = words
        .iter()
        .map(|&(w, weight)| {
            let mut s = 0;
            let mut bits = 0.0;
            for &sym in w {
                bits += log2_count(dfa.transitions[s].len());
                bits += f64::from(u8::from(dfa.accepting[s]));
                s = dfa.next(s, sym).expect("word of the language");
            }
            weight * (bits + f64::from(u8::from(dfa.accepting[s])))
        })
        .sum();
    (irregularity, processing)
}

/// Distinct atom values used anywhere in the system.
pub fn lexicon_size(system: &NumeralSystem) -> usize {
    let mut atoms = BTreeSet::new();
    for e in system.entries() {
        e.for_each_atom(&mut |v| {
            atoms.insert(v);
        });
    }
    atoms.len()
}

pub fn avg_morph_complexity(system: &NumeralSystem, prior: &Prior) -> f64 {
    system.iter().map(|(n, e)| prior.weight(n) * e.morpheme_count() as f64).sum()
}

/// All four scores of one system under one prior.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureReport {
    pub system_label: String,
    pub source: Source,
    pub prior: PriorKind,
    pub irregularity_bits: f64,
    pub processing_bits: f64,
    pub lexicon_size: usize,
    pub avg_morph_complexity: f64,
}

impl MeasureReport {
    pub fn score(system: &NumeralSystem, prior: &Prior) -> Self {
        let a = Automaton::from_system(system);
        Self::score_with(system, &a, prior)
    }

    /// Scores against a prebuilt automaton for `system`.
    pub fn score_with(system: &NumeralSystem, a: &Automaton, prior: &Prior) -> Self {
        MeasureReport {
            system_label: String::from(system.label()),
            source: system.source(),
            prior: prior.kind(),
            irregularity_bits: irregularity(a),
            processing_bits: processing_complexity(system, a, prior).expect("automaton built from this system"),
            lexicon_size: lexicon_size(system),
            avg_morph_complexity: avg_morph_complexity(system, prior),
        }
    }
}
