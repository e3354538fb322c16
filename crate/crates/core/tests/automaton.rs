use std::collections::{BTreeMap, BTreeSet};

use numeral_mdl_core::automaton::minimize::via_trie;
use numeral_mdl_core::hurford::expressible;
use numeral_mdl_core::measures::irregularity;
use numeral_mdl_core::search::ChaCha8Rng;
use numeral_mdl_core::{tokenize, Automaton, AutomatonError, Enumerator, GrammarParams, Morpheme, NumberRange, NumeralSystem, Source};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

fn karo_batak() -> NumeralSystem {
    let entries = (1..=99u32)
        .map(|n| {
            let s = match (n / 10, n % 10) {
                (0, d) => d.to_string(),
                (t, 0) => format!("{t} * 10"),
                (t, d) => format!("{t} * 10 + {d}"),
            };
            s.parse().unwrap()
        })
        .collect();
    NumeralSystem::new("karo_batak", Source::Natural, NumberRange::default(), entries).unwrap()
}

/// A system on `1..=hi` drawn uniformly among derivations of a random grammar.
fn random_system(rng: &mut ChaCha8Rng, hi: u32) -> NumeralSystem {
    let range = NumberRange::new(1, hi).unwrap();
    loop {
        let digits: BTreeSet<u32> = (0..rng.gen_range(2..=6)).map(|_| rng.gen_range(1..=12)).collect();
        let mults: BTreeSet<u32> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(2..=20)).collect();
        let g = GrammarParams::new(digits, mults, rng.gen_bool(0.3), 4).unwrap();
        if !expressible(&g, range) {
            continue;
        }
        let mut e = Enumerator::new(g);
        let entries = range.iter().map(|n| e.sample(n, rng).unwrap()).collect();
        return NumeralSystem::new("random", Source::Manual, range, entries).unwrap();
    }
}

fn random_sized(rng: &mut ChaCha8Rng, min: u32) -> NumeralSystem {
    let hi = rng.gen_range(min..=30);
    random_system(rng, hi)
}

fn mutate(rng: &mut ChaCha8Rng, w: &[Morpheme], alphabet: &[Morpheme]) -> Vec<Morpheme> {
    let mut m = w.to_vec();
    match rng.gen_range(0..3) {
        0 if m.len() >= 2 => {
            let i = rng.gen_range(0..m.len() - 1);
            m.swap(i, i + 1);
        }
        1 if !m.is_empty() => {
            m.remove(rng.gen_range(0..m.len()));
        }
        _ => {
            let sym = *alphabet.choose(rng).unwrap();
            m.insert(rng.gen_range(0..=m.len()), sym);
        }
    }
    m
}

/// Number of distinct non-empty right languages over all prefixes.
fn myhill_nerode_classes(words: &[Vec<Morpheme>]) -> usize {
    let mut right: BTreeMap<Vec<Morpheme>, BTreeSet<Vec<Morpheme>>> = BTreeMap::new();
    for w in words {
        for cut in 0..=w.len() {
            right.entry(w[..cut].to_vec()).or_default().insert(w[cut..].to_vec());
        }
    }
    right.into_values().collect::<BTreeSet<_>>().len()
}

fn degree_profile(a: &Automaton) -> Vec<usize> {
    let mut d: Vec<usize> = (0..a.state_count()).map(|s| a.out_degree(s)).collect();
    d.sort_unstable();
    d
}

#[test]
fn accepts_exactly_the_system() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let s = random_sized(&mut rng, 5);
        let words = s.words();
        let language: BTreeSet<Vec<Morpheme>> = words.iter().cloned().collect();
        let a = Automaton::from_system(&s);
        let alphabet: Vec<Morpheme> = a.alphabet().iter().copied().chain([Morpheme::Atom(97)]).collect();
        for w in &words {
            assert!(a.accepts(w));
        }
        let mut rejected = 0;
        while rejected < 1_000 {
            let w = words.choose(&mut rng).unwrap();
            let m = mutate(&mut rng, w, &alphabet);
            assert_eq!(a.accepts(&m), language.contains(&m), "{m:?}");
            if !language.contains(&m) {
                rejected += 1;
            }
        }
    }
}

#[test]
fn state_count_equals_right_language_classes() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..40 {
        let s = random_sized(&mut rng, 1);
        let a = Automaton::from_system(&s);
        assert_eq!(a.state_count(), myhill_nerode_classes(&s.words()));
    }
}

#[test]
fn incremental_equals_trie_then_refinement() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..60 {
        let words = random_sized(&mut rng, 1).words();
        assert_eq!(Automaton::from_words(&words), via_trie(&words));
    }
}

#[test]
fn insertion_order_does_not_matter() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..30 {
        let mut words = random_sized(&mut rng, 2).words();
        let a = Automaton::from_words(&words);
        words.shuffle(&mut rng);
        let b = Automaton::from_words(&words);
        assert_eq!((a.state_count(), a.transition_count()), (b.state_count(), b.transition_count()));
        assert_eq!(degree_profile(&a), degree_profile(&b));
        assert_eq!(a, b);
    }
}

#[test]
fn karo_batak_automaton() {
    let a = Automaton::from_system(&karo_batak());
    assert_eq!((a.state_count(), a.transition_count(), a.alphabet_size()), (6, 21, 12));
    assert!((irregularity(&a) - 192.437_600_046_154).abs() < 1e-9);
    let t = a.parse(&tokenize("2 * 10").unwrap()).unwrap();
    assert_eq!(t.states.len(), 4);
    assert_eq!(t.accepting, [false, true, false, true]);
    assert!(matches!(a.parse(&tokenize("10 + 2").unwrap()), Err(AutomatonError::NotAccepted { .. })));
}

/// Checks the DOT text is well formed and returns (nodes, edges).
fn check_dot(dot: &str) -> (usize, usize) {
    let mut lines = dot.lines();
    assert_eq!(lines.next(), Some("digraph automaton {"));
    assert_eq!(dot.lines().last(), Some("}"));
    let mut nodes = BTreeSet::new();
    let mut edges = Vec::new();
    let mut initial = 0;
    for line in lines.map(str::trim).filter(|l| l.starts_with('s')) {
        let (head, attrs) = line.split_once(" [").expect("attributes");
        assert!(attrs.ends_with("];"), "{line}");
        if let Some((from, to)) = head.split_once(" -> ") {
            assert!(attrs.starts_with("label=\""));
            edges.push((from.to_string(), to.to_string()));
        } else {
            assert!(attrs.contains("shape=circle") || attrs.contains("shape=doublecircle"));
            initial += usize::from(attrs.contains("label=\"λ\""));
            assert!(nodes.insert(head.to_string()), "duplicate node {head}");
        }
    }
    assert_eq!(initial, 1);
    for (from, to) in &edges {
        assert!(nodes.contains(from) && nodes.contains(to));
    }
    (nodes.len(), edges.len())
}

#[test]
fn dot_export_is_well_formed() {
    assert_eq!(check_dot(&Automaton::from_system(&karo_batak()).to_dot()), (6, 21));
    assert_eq!(check_dot(&Automaton::from_words([tokenize("7").unwrap()]).to_dot()), (2, 1));
}
