//! Command-line interface.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use numeral_mdl_core::search::baseline::{sample_baselines, BaselineConfig};
use numeral_mdl_core::search::ga::{run_ga, GaConfig, GaConstraint};
use numeral_mdl_core::search::{local_extremes, local_frontier, AttestedPools, Direction, LocalSearchConfig, SearchError};
use numeral_mdl_core::{Automaton, MeasureReport, NumberRange, NumeralSystem, Prior, PriorKind};

use crate::dataio::{self, DataError};
use crate::manifest::RunManifest;

/// Usage or input problems exit with 2, broken invariants with 3.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Invariant(_) => 3,
        }
    }
}

impl From<DataError> for CliError {
    fn from(e: DataError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "numeral-mdl", version, about = "Regularity and processing complexity of recursive numeral systems")]
pub struct Cli {
    /// Numbers every system must cover, as `lo:hi`.
    #[arg(long, global = true, default_value = "1:99")]
    pub range: NumberRange,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Score every system of a dataset.
    Measure(MeasureArgs),
    /// Draw random baseline systems and score them.
    SampleBaselines(BaselineArgs),
    /// Search (digits, multipliers) pairs for the lexicon / complexity frontier.
    Ga(GaArgs),
    /// Estimate the frontier of a natural system's local neighbourhood.
    LocalFrontier(LocalArgs),
    /// Write the minimal automaton of one system as Graphviz DOT.
    Dfa(DfaArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PriorArg {
    Power2,
    Uniform,
}

impl From<PriorArg> for PriorKind {
    fn from(p: PriorArg) -> Self {
        match p {
            PriorArg::Power2 => PriorKind::PowerLaw(2.0),
            PriorArg::Uniform => PriorKind::Uniform,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstraintArg {
    None,
    SequentialDigits,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Best,
    Worst,
    /// Union of the best and worst frontiers.
    Both,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "power2")]
    pub prior: PriorArg,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BaselineArgs {
    #[arg(long, default_value_t = 100)]
    pub batches: u32,
    #[arg(long, default_value_t = 100)]
    pub per_batch: u32,
    #[arg(long, default_value_t = 5)]
    pub max_depth: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Systems CSV or `role,value` pool file.
    #[arg(long)]
    pub attested: PathBuf,
    #[arg(long, value_enum, default_value = "power2")]
    pub prior: PriorArg,
    /// Draws allowed per batch before giving up on the pools.
    #[arg(long, default_value_t = 1_000)]
    pub retry_budget: u32,
    /// Measures CSV; the systems go to `<stem>.systems.csv` beside it.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct GaArgs {
    #[arg(long, value_enum, default_value = "power2")]
    pub prior: PriorArg,
    #[arg(long, default_value_t = 50)]
    pub generations: u32,
    #[arg(long, default_value_t = 100)]
    pub pop: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "none")]
    pub constraints: ConstraintArg,
    /// Systems CSV or `role,value` pool file.
    #[arg(long)]
    pub attested: PathBuf,
    #[arg(long, default_value_t = 5)]
    pub max_depth: u32,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct LocalArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Language label of the seed system.
    #[arg(long)]
    pub system: String,
    #[arg(long, default_value_t = 30)]
    pub beta: usize,
    #[arg(long, default_value_t = 3)]
    pub gamma: usize,
    #[arg(long, default_value_t = 5)]
    pub depth: u32,
    #[arg(long, value_enum, default_value = "both")]
    pub direction: DirectionArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "power2")]
    pub prior: PriorArg,
    /// Measures CSV; the systems go to `<stem>.systems.csv` beside it.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct DfaArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub system: String,
    #[arg(long)]
    pub dot: PathBuf,
}

/// `runs/x.csv` -> `runs/x.systems.csv`.
pub fn systems_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.systems.csv"))
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

fn score_all(systems: &[NumeralSystem], prior: &Prior) -> Vec<MeasureReport> {
    systems.par_iter().map(|s| MeasureReport::score(s, prior)).collect()
}

fn load_dataset(path: &Path, range: NumberRange, manifest: &mut RunManifest) -> Result<Vec<NumeralSystem>, CliError> {
    let bytes = dataio::read_file(path)?;
    manifest.add_input(path, &bytes);
    Ok(dataio::read_systems(bytes.as_slice(), range, numeral_mdl_core::Source::Natural)?)
}

fn load_pools(path: &Path, range: NumberRange, manifest: &mut RunManifest) -> Result<AttestedPools, CliError> {
    let bytes = dataio::read_file(path)?;
    manifest.add_input(path, &bytes);
    Ok(dataio::read_pools(&bytes, range)?)
}

fn find<'a>(systems: &'a [NumeralSystem], label: &str) -> Result<&'a NumeralSystem, CliError> {
    systems.iter().find(|s| s.label() == label).ok_or_else(|| CliError::Input(format!("no system `{label}` in the input")))
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    let range = cli.range;
    match cli.command {
        Command::Measure(a) => measure(a, range),
        Command::SampleBaselines(a) => baselines(a, range),
        Command::Ga(a) => ga(a, range),
        Command::LocalFrontier(a) => local(a, range),
        Command::Dfa(a) => dfa(a, range),
    }
}

fn measure(a: MeasureArgs, range: NumberRange) -> Result<(), CliError> {
    let prior = Prior::new(a.prior.into(), range);
    let config = json!({ "input": path_str(&a.input), "prior": prior.kind().label(), "range": range.to_string(), "out": path_str(&a.out) });
    let mut manifest = RunManifest::new("measure", config, None);
    let systems = load_dataset(&a.input, range, &mut manifest)?;
    dataio::export_measures(&score_all(&systems, &prior), &a.out)?;
    manifest.write_for(&a.out)?;
    Ok(())
}

fn baselines(a: BaselineArgs, range: NumberRange) -> Result<(), CliError> {
    let prior = Prior::new(a.prior.into(), range);
    let systems_out = systems_path(&a.out);
    let config_json = json!({
        "batches": a.batches, "per_batch": a.per_batch, "max_depth": a.max_depth, "attested": path_str(&a.attested),
        "prior": prior.kind().label(), "retry_budget": a.retry_budget, "range": range.to_string(),
        "out": path_str(&a.out), "systems_out": path_str(&systems_out),
    });
    let mut manifest = RunManifest::new("sample-baselines", config_json, Some(a.seed));
    let pools = load_pools(&a.attested, range, &mut manifest)?;
    let config = BaselineConfig {
        batches: a.batches,
        per_batch: a.per_batch,
        max_depth: a.max_depth,
        range,
        retry_budget: a.retry_budget,
        ..BaselineConfig::new(pools, a.seed)
    };
    let systems: Vec<NumeralSystem> = sample_baselines(&config)?.into_iter().map(|(_, s)| s).collect();
    dataio::export_systems(&systems, &systems_out)?;
    dataio::export_measures(&score_all(&systems, &prior), &a.out)?;
    manifest.write_for(&a.out)?;
    Ok(())
}

fn ga(a: GaArgs, range: NumberRange) -> Result<(), CliError> {
    let prior_kind: PriorKind = a.prior.into();
    let constraint = match a.constraints {
        ConstraintArg::None => None,
        ConstraintArg::SequentialDigits => Some(GaConstraint::SequentialDigits { max: GaConstraint::SEQUENTIAL_DIGITS_MAX }),
    };
    let config_json = json!({
        "prior": prior_kind.label(), "generations": a.generations, "pop": a.pop,
        "constraints": format!("{:?}", a.constraints).to_lowercase(), "attested": path_str(&a.attested),
        "max_depth": a.max_depth, "range": range.to_string(), "out": path_str(&a.out),
    });
    let mut manifest = RunManifest::new("ga", config_json, Some(a.seed));
    let pools = load_pools(&a.attested, range, &mut manifest)?;
    let config = GaConfig {
        population_size: a.pop,
        max_generations: a.generations,
        prior: prior_kind,
        constraint,
        max_depth: a.max_depth,
        range,
        ..GaConfig::new(pools, a.seed)
    };
    let run = run_ga(&config)?;
    let prior = Prior::new(prior_kind, range);
    let rows: Vec<_> = run
        .frontier
        .par_iter()
        .enumerate()
        .map(|(i, ind)| {
            let system = ind.system.clone().with_label(format!("ga-{i:03}"));
            (MeasureReport::score(&system, &prior), ind.params.clone())
        })
        .collect();
    for ((report, _), ind) in rows.iter().zip(&run.frontier) {
        if report.avg_morph_complexity != ind.avg_morph_complexity || report.lexicon_size > ind.lexicon_size {
            return Err(CliError::Invariant(format!("{} rescored differently", report.system_label)));
        }
    }
    let mut buf = Vec::new();
    dataio::write_ga_frontier(&mut buf, &rows)?;
    dataio::write_atomic(&a.out, &buf)?;
    manifest.write_for(&a.out)?;
    Ok(())
}

fn local(a: LocalArgs, range: NumberRange) -> Result<(), CliError> {
    let prior = Prior::new(a.prior.into(), range);
    let systems_out = systems_path(&a.out);
    let config_json = json!({
        "input": path_str(&a.input), "system": a.system, "beta": a.beta, "gamma": a.gamma, "depth": a.depth,
        "direction": format!("{:?}", a.direction).to_lowercase(), "prior": prior.kind().label(),
        "range": range.to_string(), "out": path_str(&a.out), "systems_out": path_str(&systems_out),
    });
    let mut manifest = RunManifest::new("local-frontier", config_json, Some(a.seed));
    let dataset = load_dataset(&a.input, range, &mut manifest)?;
    let natural = find(&dataset, &a.system)?;
    let config = LocalSearchConfig { beta: a.beta, gamma: a.gamma, depth: a.depth, direction: Direction::Best, seed: a.seed };
    let neighbours = match a.direction {
        DirectionArg::Best => local_frontier(natural, &config, &prior)?,
        DirectionArg::Worst => local_frontier(natural, &LocalSearchConfig { direction: Direction::Worst, ..config }, &prior)?,
        DirectionArg::Both => local_extremes(natural, &config, &prior)?,
    };
    let seed_report = MeasureReport::score(natural, &prior);
    let reports = score_all(&neighbours, &prior);
    for r in &reports {
        if r.lexicon_size != seed_report.lexicon_size || r.avg_morph_complexity != seed_report.avg_morph_complexity {
            return Err(CliError::Invariant(format!("{} left the neighbourhood of {}", r.system_label, natural.label())));
        }
    }
    let mut all = vec![natural.clone()];
    all.extend(neighbours);
    dataio::export_systems(&all, &systems_out)?;
    let mut rows = vec![seed_report];
    rows.extend(reports);
    dataio::export_measures(&rows, &a.out)?;
    manifest.write_for(&a.out)?;
    Ok(())
}

fn dfa(a: DfaArgs, range: NumberRange) -> Result<(), CliError> {
    let config = json!({ "input": path_str(&a.input), "system": a.system, "range": range.to_string(), "dot": path_str(&a.dot) });
    let mut manifest = RunManifest::new("dfa", config, None);
    let dataset = load_dataset(&a.input, range, &mut manifest)?;
    let automaton = Automaton::from_system(find(&dataset, &a.system)?);
    dataio::write_atomic(&a.dot, automaton.to_dot().as_bytes())?;
    manifest.write_for(&a.dot)?;
    Ok(())
}

/// Sizes the global thread pool from `NUMERAL_MDL_THREADS`.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("NUMERAL_MDL_THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Input(format!("NUMERAL_MDL_THREADS must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| CliError::Input(e.to_string()))
}
