//! Minimal partial DFAs over morpheme sequences.
//!
//! A numeral system is a finite language, so its minimal DFA is acyclic.
//! [`Automaton::from_words`] builds it incrementally from the sorted word
//! list, registering each finished state by its right-language signature.
//! [`minimize`] keeps the classical route (trie, then partition refinement)
//! as an independent construction.
//!
//! Every automaton is stored in canonical form: state ids follow a
//! topological order that depends only on the machine's structure, so two
//! isomorphic automata compare equal.

pub mod minimize;

use alloc::collections::{BTreeMap, BTreeSet, BinaryHeap};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt::Write;

use crate::expr::Morpheme;
use crate::system::NumeralSystem;

pub type StateId = usize;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AutomatonError {
    #[error("token sequence not accepted (stopped after {consumed} tokens)")]
    NotAccepted { consumed: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct State {
    accepting: bool,
    // sorted by symbol
    transitions: Vec<(Morpheme, StateId)>,
}

/// Deterministic, partial and acyclic automaton; state 0 is initial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automaton {
    states: Vec<State>,
    alphabet: BTreeSet<Morpheme>,
}

/// The unique accepting run of a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseTrace {
    /// Visited states, initial through final.
    pub states: Vec<StateId>,
    /// Taken transitions as `(source, symbol, target)`.
    pub transitions: Vec<(StateId, Morpheme, StateId)>,
    /// Accepting flag of each visited state.
    pub accepting: Vec<bool>,
    /// Out-degree of each visited state.
    pub out_degrees: Vec<usize>,
}

impl Automaton {
    /// Minimal DFA accepting exactly the system's linearized numerals.
    pub fn from_system(system: &NumeralSystem) -> Self {
        Self::from_words(system.words())
    }

    /// Minimal DFA accepting exactly `words`. Input order does not matter.
    pub fn from_words<I>(words: I) -> Self
    where
        I: IntoIterator,
        I::Item: AsRef<[Morpheme]>,
    {
        let mut sorted: Vec<Vec<Morpheme>> = words.into_iter().map(|w| w.as_ref().to_vec()).collect();
        sorted.sort_unstable();
        sorted.dedup();
        let mut builder = IncrementalBuilder::new();
        for w in &sorted {
            builder.insert(w);
        }
        builder.finish()
    }

    pub fn initial(&self) -> StateId {
        0
    }

    /// `|S|`
    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    /// `|Z|`
    pub fn transition_count(&self) -> usize {
        self.states.iter().map(|s| s.transitions.len()).sum()
    }

    /// `|Σ|`: symbols labelling at least one transition.
    pub fn alphabet_size(&self) -> usize {
        self.alphabet.len()
    }

    pub fn alphabet(&self) -> &BTreeSet<Morpheme> {
        &self.alphabet
    }

    pub fn accepting_count(&self) -> usize {
        self.states.iter().filter(|s| s.accepting).count()
    }

    pub fn is_accepting(&self, s: StateId) -> bool {
        self.states[s].accepting
    }

    pub fn out_degree(&self, s: StateId) -> usize {
        self.states[s].transitions.len()
    }

    pub fn transitions_from(&self, s: StateId) -> impl Iterator<Item = (Morpheme, StateId)> + '_ {
        self.states[s].transitions.iter().copied()
    }

    /// All transitions as `(source, symbol, target)`, by source then symbol.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, Morpheme, StateId)> + '_ {
        self.states.iter().enumerate().flat_map(|(s, st)| st.transitions.iter().map(move |&(sym, t)| (s, sym, t)))
    }

    pub fn next(&self, s: StateId, symbol: Morpheme) -> Option<StateId> {
        let ts = &self.states[s].transitions;
        ts.binary_search_by(|(sym, _)| sym.cmp(&symbol)).ok().map(|i| ts[i].1)
    }

    pub fn accepts(&self, word: &[Morpheme]) -> bool {
        self.parse(word).is_ok()
    }

    pub fn parse(&self, word: &[Morpheme]) -> Result<ParseTrace, AutomatonError> {
        let mut s = self.initial();
        let mut trace = ParseTrace {
            states: vec![s],
            transitions: Vec::with_capacity(word.len()),
            accepting: vec![self.is_accepting(s)],
            out_degrees: vec![self.out_degree(s)],
        };
        for (consumed, &sym) in word.iter().enumerate() {
            let t = self.next(s, sym).ok_or(AutomatonError::NotAccepted { consumed })?;
            trace.transitions.push((s, sym, t));
            trace.states.push(t);
            trace.accepting.push(self.is_accepting(t));
            trace.out_degrees.push(self.out_degree(t));
            s = t;
        }
        if !self.is_accepting(s) {
            return Err(AutomatonError::NotAccepted { consumed: word.len() });
        }
        Ok(trace)
    }

    /// Every word of the (finite) language, in symbol order.
    pub fn language(&self) -> Vec<Vec<Morpheme>> {
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        self.collect_words(self.initial(), &mut prefix, &mut out);
        out
    }

    fn collect_words(&self, s: StateId, prefix: &mut Vec<Morpheme>, out: &mut Vec<Vec<Morpheme>>) {
        if self.is_accepting(s) {
            out.push(prefix.clone());
        }
        for (sym, t) in self.transitions_from(s) {
            prefix.push(sym);
            self.collect_words(t, prefix, out);
            prefix.pop();
        }
    }

    /// Graphviz rendering; accepting states are double circles and the
    /// initial state is labelled λ.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n");
        for (id, st) in self.states.iter().enumerate() {
            let label = if id == self.initial() { String::from("λ") } else { alloc::format!("{id}") };
            let shape = if st.accepting { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  s{id} [label=\"{label}\", shape={shape}];");
        }
        for (s, sym, t) in self.transitions() {
            let _ = writeln!(out, "  s{s} -> s{t} [label=\"{sym}\"];");
        }
        out.push_str("}\n");
        out
    }

    /// Builds from raw parts and renumbers canonically. Unreachable states are
    /// dropped; `initial` must be a state index.
    pub(crate) fn from_parts(initial: StateId, accepting: Vec<bool>, transitions: Vec<Vec<(Morpheme, StateId)>>) -> Self {
        let n = accepting.len();
        // canonical discovery order: depth-first from the initial state, symbols ascending
        let mut preorder = vec![usize::MAX; n];
        let mut next_index = 0;
        let mut stack = vec![initial];
        while let Some(s) = stack.pop() {
            if preorder[s] != usize::MAX {
                continue;
            }
            preorder[s] = next_index;
            next_index += 1;
            for &(_, t) in transitions[s].iter().rev() {
                if preorder[t] == usize::MAX {
                    stack.push(t);
                }
            }
        }
        let mut indegree = vec![0usize; n];
        for s in (0..n).filter(|&s| preorder[s] != usize::MAX) {
            for &(_, t) in &transitions[s] {
                indegree[t] += 1;
            }
        }
        // topological order, ties broken by discovery index
        let mut ready = BinaryHeap::new();
        ready.push(Reverse((preorder[initial], initial)));
        let mut new_id = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(next_index);
        while let Some(Reverse((_, s))) = ready.pop() {
            new_id[s] = order.len();
            order.push(s);
            for &(_, t) in &transitions[s] {
                indegree[t] -= 1;
                if indegree[t] == 0 {
                    ready.push(Reverse((preorder[t], t)));
                }
            }
        }
        assert_eq!(order.len(), next_index, "automaton must be acyclic");
        let mut alphabet = BTreeSet::new();
        let states = order
            .iter()
            .map(|&old| {
                let mut ts: Vec<(Morpheme, StateId)> = transitions[old].iter().map(|&(sym, t)| (sym, new_id[t])).collect();
                ts.sort_unstable();
                alphabet.extend(ts.iter().map(|&(sym, _)| sym));
                State { accepting: accepting[old], transitions: ts }
            })
            .collect();
        Automaton { states, alphabet }
    }
}

/// Incremental construction of a minimal acyclic DFA from sorted words.
struct IncrementalBuilder {
    accepting: Vec<bool>,
    transitions: Vec<Vec<(Morpheme, StateId)>>,
    register: BTreeMap<(bool, Vec<(Morpheme, StateId)>), StateId>,
    previous: Vec<Morpheme>,
}

impl IncrementalBuilder {
    fn new() -> Self {
        IncrementalBuilder { accepting: vec![false], transitions: vec![Vec::new()], register: BTreeMap::new(), previous: Vec::new() }
    }

    fn insert(&mut self, word: &[Morpheme]) {
        debug_assert!(word > self.previous.as_slice() || self.previous.is_empty());
        let common = word.iter().zip(&self.previous).take_while(|(a, b)| a == b).count();
        let mut s = 0;
        // the shared prefix runs along the most recently added branch
        for &sym in &word[..common] {
            let &(last, t) = self.transitions[s].last().expect("prefix path exists");
            debug_assert_eq!(last, sym);
            s = t;
        }
        if !self.transitions[s].is_empty() {
            self.replace_or_register(s);
        }
        for &sym in &word[common..] {
            let t = self.accepting.len();
            self.accepting.push(false);
            self.transitions.push(Vec::new());
            self.transitions[s].push((sym, t));
            s = t;
        }
        self.accepting[s] = true;
        self.previous.clear();
        self.previous.extend_from_slice(word);
    }

    fn replace_or_register(&mut self, s: StateId) {
        let child = self.transitions[s].last().expect("state has children").1;
        if !self.transitions[child].is_empty() {
            self.replace_or_register(child);
        }
        let key = (self.accepting[child], self.transitions[child].clone());
        match self.register.get(&key) {
            Some(&q) => {
                self.transitions[s].last_mut().expect("state has children").1 = q;
                // the replaced child is now unreachable and is dropped at finish
                self.transitions[child].clear();
            }
            None => {
                self.register.insert(key, child);
            }
        }
    }

    fn finish(self) -> Automaton {
        let raw = self.finish_raw();
        Automaton::from_parts(0, raw.accepting, raw.transitions)
    }

    fn finish_raw(mut self) -> RawDfa {
        if !self.transitions[0].is_empty() {
            self.replace_or_register(0);
        }
        RawDfa { accepting: self.accepting, transitions: self.transitions }
    }
}

/// Minimal DFA in construction order; replaced states stay behind as
/// unreachable slots. State 0 is initial.
pub(crate) struct RawDfa {
    pub accepting: Vec<bool>,
    pub transitions: Vec<Vec<(Morpheme, StateId)>>,
}

impl RawDfa {
    /// `words` must be sorted and free of repeats.
    pub fn from_sorted(words: &[&[Morpheme]]) -> Self {
        let mut builder = IncrementalBuilder::new();
        for w in words {
            builder.insert(w);
        }
        builder.finish_raw()
    }

    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.accepting.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(s) = stack.pop() {
            for &(_, t) in &self.transitions[s] {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    pub fn next(&self, s: StateId, sym: Morpheme) -> Option<StateId> {
        let ts = &self.transitions[s];
        ts.binary_search_by(|&(x, _)| x.cmp(&sym)).ok().map(|i| ts[i].1)
    }
}
