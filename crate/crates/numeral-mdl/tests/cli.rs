use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use numeral_mdl::dataio::{read_measures, MEASURE_HEADER};
use numeral_mdl::manifest::RunManifest;
use numeral_mdl_core::search::pareto::dominates;
use numeral_mdl_core::{MeasureReport, PriorKind};
use tempfile::TempDir;

fn dataset() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/natural.csv")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_numeral-mdl")).args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn measures(p: &Path) -> Vec<MeasureReport> {
    read_measures(fs::File::open(p).unwrap()).unwrap()
}

fn manifest(out: &Path) -> RunManifest {
    let path = RunManifest::path_for(out);
    serde_json::from_slice(&fs::read(&path).unwrap_or_else(|_| panic!("{} missing", path.display()))).unwrap()
}

#[test]
fn measure_writes_scores_and_manifest() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("m.csv");
    ok(&["measure", "--input", s(&dataset()), "--out", s(&out)]);
    let rows = measures(&out);
    assert_eq!(rows.len(), 10);
    let kb = rows.iter().find(|r| r.system_label == "karo_batak").unwrap();
    assert!((kb.irregularity_bits - 192.4376).abs() < 1e-4);
    assert_eq!(kb.lexicon_size, 10);
    let m = manifest(&out);
    assert_eq!(m.command, "measure");
    assert_eq!(m.inputs.len(), 1);
    assert_eq!(m.inputs[0].git_blob_sha1.len(), 40);
}

#[test]
fn priors_change_only_prior_weighted_columns() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("p.csv"), dir.path().join("u.csv"));
    ok(&["measure", "--input", s(&dataset()), "--out", s(&a), "--prior", "power2"]);
    ok(&["measure", "--input", s(&dataset()), "--out", s(&b), "--prior", "uniform"]);
    for (p, u) in measures(&a).iter().zip(&measures(&b)) {
        assert_eq!(p.system_label, u.system_label);
        assert_eq!(p.irregularity_bits, u.irregularity_bits);
        assert_eq!(p.lexicon_size, u.lexicon_size);
        assert_eq!(u.prior, PriorKind::Uniform);
    }
}

#[test]
fn empty_input_gives_header_only() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("empty.csv");
    fs::write(&input, "language,family,number,tokens\n").unwrap();
    let out = dir.path().join("m.csv");
    ok(&["measure", "--input", s(&input), "--out", s(&out)]);
    assert_eq!(fs::read_to_string(&out).unwrap().trim_end(), MEASURE_HEADER.join(","));
}

#[test]
fn baselines_are_byte_identical_per_seed() {
    let dir = TempDir::new().unwrap();
    let outs: Vec<PathBuf> = (0..2).map(|i| dir.path().join(format!("b{i}.csv"))).collect();
    for out in &outs {
        ok(&["sample-baselines", "--batches", "2", "--per-batch", "3", "--seed", "9", "--attested", s(&dataset()), "--out", s(out)]);
    }
    assert_eq!(fs::read(&outs[0]).unwrap(), fs::read(&outs[1]).unwrap());
    assert_eq!(fs::read(dir.path().join("b0.systems.csv")).unwrap(), fs::read(dir.path().join("b1.systems.csv")).unwrap());
    assert_eq!(measures(&outs[0]).len(), 6);
    assert_eq!(manifest(&outs[0]).seed, Some(9));
}

#[test]
fn one_batch_of_one_is_one_system() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("b.csv");
    ok(&["sample-baselines", "--batches", "1", "--per-batch", "1", "--attested", s(&dataset()), "--out", s(&out)]);
    assert_eq!(measures(&out).len(), 1);
}

#[test]
fn ga_frontier_is_non_dominated() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("ga.csv");
    ok(&["ga", "--generations", "5", "--pop", "20", "--seed", "3", "--prior", "uniform", "--attested", s(&dataset()), "--out", s(&out)]);
    let text = fs::read_to_string(&out).unwrap();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    let lexicon = header.iter().position(|h| h == "grammar_lexicon_size").unwrap();
    let digits = header.iter().position(|h| h == "digits").unwrap();
    let avg = header.iter().position(|h| h == "avg_morph_complexity").unwrap();
    let prior = header.iter().position(|h| h == "prior").unwrap();
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert!(!rows.is_empty());
    let points: Vec<(f64, f64)> = rows.iter().map(|r| (r[lexicon].parse().unwrap(), r[avg].parse().unwrap())).collect();
    for (r, &p) in rows.iter().zip(&points) {
        assert_eq!(&r[prior], "uniform");
        assert!(!r[digits].is_empty());
        assert!(points.iter().all(|&q| !dominates(q, p)), "{p:?}");
    }
}

#[test]
fn sequential_digits_constraint_holds() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("ga.csv");
    ok(&["ga", "--generations", "5", "--pop", "20", "--constraints", "sequential-digits", "--attested", s(&dataset()), "--out", s(&out)]);
    let mut reader = csv::Reader::from_path(&out).unwrap();
    let digits = reader.headers().unwrap().iter().position(|h| h == "digits").unwrap();
    for r in reader.records().map(Result::unwrap) {
        let d: Vec<u32> = r[digits].split_whitespace().map(|t| t.parse().unwrap()).collect();
        assert_eq!(d, (1..=d.len() as u32).collect::<Vec<_>>(), "{}", &r[digits]);
    }
}

#[test]
fn local_frontier_keeps_the_seed_first() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("l.csv");
    ok(&["local-frontier", "--input", s(&dataset()), "--system", "karo_batak", "--out", s(&out)]);
    let rows = measures(&out);
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0].system_label, "karo_batak");
    for r in &rows[1..] {
        assert_eq!(r.lexicon_size, rows[0].lexicon_size);
        assert_eq!(r.avg_morph_complexity, rows[0].avg_morph_complexity);
    }
}

#[test]
fn dfa_writes_dot() {
    let dir = TempDir::new().unwrap();
    let dot = dir.path().join("kb.dot");
    ok(&["dfa", "--input", s(&dataset()), "--system", "karo_batak", "--dot", s(&dot)]);
    let text = fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph automaton {"));
    assert_eq!(text.matches(" -> ").count(), 21);
}

#[test]
fn bad_input_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("x.csv");
    let missing = dir.path().join("missing.csv");
    let data = dataset();
    let cases: [Vec<&str>; 3] = [
        vec!["measure", "--input", s(&missing), "--out", s(&out)],
        vec!["dfa", "--input", s(&data), "--system", "klingon", "--dot", s(&out)],
        vec!["local-frontier", "--input", s(&data), "--system", "karo_batak", "--beta", "0", "--out", s(&out)],
    ];
    for args in cases {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("numeral-mdl: "));
    }
    assert!(!out.exists());
}
