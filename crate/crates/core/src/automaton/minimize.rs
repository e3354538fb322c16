//! Classical route to the minimal DFA: build the prefix trie, then merge
//! states by partition refinement (Moore). Missing transitions behave as
//! edges into an implicit dead class.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{Automaton, StateId};
use crate::expr::Morpheme;

/// Prefix tree of `words`; one state per distinct prefix.
pub fn trie<I>(words: I) -> Automaton
where
    I: IntoIterator,
    I::Item: AsRef<[Morpheme]>,
{
    let (accepting, transitions) = trie_parts(words);
    Automaton::from_parts(0, accepting, transitions)
}

fn trie_parts<I>(words: I) -> (Vec<bool>, Vec<Vec<(Morpheme, StateId)>>)
where
    I: IntoIterator,
    I::Item: AsRef<[Morpheme]>,
{
    let mut accepting = vec![false];
    let mut transitions: Vec<Vec<(Morpheme, StateId)>> = vec![Vec::new()];
    for w in words {
        let mut s = 0;
        for &sym in w.as_ref() {
            s = match transitions[s].iter().find(|(x, _)| *x == sym) {
                Some(&(_, t)) => t,
                None => {
                    let t = accepting.len();
                    accepting.push(false);
                    transitions.push(Vec::new());
                    transitions[s].push((sym, t));
                    t
                }
            };
        }
        accepting[s] = true;
    }
    (accepting, transitions)
}

/// Merges equivalent states of `a` until the partition is stable.
pub fn minimize(a: &Automaton) -> Automaton {
    let n = a.state_count();
    let mut class: Vec<usize> = (0..n).map(|s| usize::from(a.is_accepting(s))).collect();
    let mut class_count = class.iter().copied().max().map_or(0, |m| m + 1);
    loop {
        let mut ids: BTreeMap<(usize, Vec<(Morpheme, usize)>), usize> = BTreeMap::new();
        let refined: Vec<usize> = (0..n)
            .map(|s| {
                let signature: Vec<(Morpheme, usize)> = a.transitions_from(s).map(|(sym, t)| (sym, class[t])).collect();
                let next = ids.len();
                *ids.entry((class[s], signature)).or_insert(next)
            })
            .collect();
        let refined_count = ids.len();
        class = refined;
        if refined_count == class_count {
            break;
        }
        class_count = refined_count;
    }
    let mut accepting = vec![false; class_count];
    let mut transitions: Vec<Vec<(Morpheme, StateId)>> = vec![Vec::new(); class_count];
    for s in 0..n {
        let c = class[s];
        accepting[c] = a.is_accepting(s);
        if transitions[c].is_empty() {
            transitions[c] = a.transitions_from(s).map(|(sym, t)| (sym, class[t])).collect();
        }
    }
    Automaton::from_parts(class[a.initial()], accepting, transitions)
}

/// Trie followed by partition refinement.
pub fn via_trie<I>(words: I) -> Automaton
where
    I: IntoIterator,
    I::Item: AsRef<[Morpheme]>,
{
    minimize(&trie(words))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::tokenize;

    #[test]
    fn trie_has_one_state_per_prefix() {
        let words: Vec<Vec<Morpheme>> = ["1 * 10", "2 * 10", "1 * 10 + 1"].iter().map(|w| tokenize(w).unwrap()).collect();
        let t = trie(&words);
        assert_eq!(t.state_count(), 1 + 3 + 3 + 2);
        let m = minimize(&t);
        assert_eq!(m, Automaton::from_words(&words));
        assert!(m.state_count() < t.state_count());
    }
}
