//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 for usage or validation errors, 1 for
//! runtime failures.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::config::{self, ConfigFile, SEED_ENV};
use crate::error::{Error, Result};
use crate::metrics::{self, FinalValues};
use crate::network::{generate_synthetic_population, write_degree_csv, ContactNetwork};
use crate::selection::Strategy;
use crate::workflow::{self, ExperimentConfig, ExperimentResult, ReplicateSeeds, ScheduleSpec};

#[derive(Debug, Parser)]
#[command(name = "epicontrol", version, about = "Epidemic simulation with scheduled, optimized vaccination rounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one strategy under one schedule.
    Run(RunArgs),
    /// Run several strategies and schedules on common seeds and summarize.
    Compare(CompareArgs),
    /// Write a synthetic contact network as an edge list.
    GenNetwork(GenArgs),
    /// Write the in-degree histogram of an edge-list network.
    DegreeHist(HistArgs),
}

#[derive(Debug, Args, Default)]
pub struct ExperimentArgs {
    /// Config file of `key = value` lines.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Master seed (overrides config and EPICONTROL_SEED).
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub replicates: Option<usize>,
    #[arg(long)]
    pub horizon: Option<u32>,
    /// Population size.
    #[arg(long)]
    pub n: Option<usize>,
    /// Live-edge samples per PREEMPT round.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Extra `key=value` override; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    /// Worker threads; defaults to available parallelism.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Output directory.
    #[arg(long, default_value = "epicontrol-out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub common: ExperimentArgs,
    /// none | random | degree | preempt
    #[arg(long)]
    pub strategy: Option<String>,
    /// none | single:<amt> | uniform:<amt>x<rounds> | explicit:<a,b,...>
    #[arg(long)]
    pub schedule: Option<String>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub common: ExperimentArgs,
    /// Comma-separated strategy names.
    #[arg(long)]
    pub strategies: Option<String>,
    /// Schedule to compare; repeatable.
    #[arg(long = "schedule")]
    pub schedules: Vec<String>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Master seed; the network equals replicate 0 of a run with this seed.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    /// Edge-list path; ages go to `<out>.ages`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct HistArgs {
    #[arg(long)]
    pub network: PathBuf,
    /// CSV path; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `argv` (including the program name) and runs it.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_validation() {
                2
            } else {
                1
            }
        }
    }
}

pub fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run(a) => run(a),
        Command::Compare(a) => compare(a),
        Command::GenNetwork(a) => gen_network(a),
        Command::DegreeHist(a) => degree_hist(a),
    }
}

fn load_config(path: Option<&Path>) -> Result<ConfigFile> {
    match path {
        Some(p) => ConfigFile::load(p),
        None => Ok(ConfigFile::default()),
    }
}

fn env_seed() -> Option<String> {
    std::env::var(SEED_ENV).ok()
}

/// Loads the config and applies flag overrides; flags always win.
fn resolve(common: &ExperimentArgs, extra: impl FnOnce(&mut ConfigFile) -> Result<()>) -> Result<ConfigFile> {
    let mut cfg = load_config(common.config.as_deref())?;
    cfg.apply_overrides(common.set.iter().map(String::as_str))?;
    extra(&mut cfg)?;
    let e = &mut cfg.experiment;
    if let Some(r) = common.replicates {
        e.replicates = r;
    }
    if let Some(h) = common.horizon {
        e.horizon = h;
    }
    if let Some(n) = common.n {
        e.population.n = n;
    }
    if let Some(s) = common.samples {
        e.preempt_samples = s;
    }
    let file_seed = cfg.seed_set.then_some(cfg.experiment.master_seed);
    cfg.experiment.master_seed = config::resolve_seed(common.seed, file_seed, env_seed().as_deref())?;
    cfg.finish()?;
    Ok(cfg)
}

fn parse_schedule(s: &str) -> Result<ScheduleSpec> {
    ScheduleSpec::parse(s).map_err(|r| Error::config("schedule", r))
}

fn pool(workers: Option<usize>) -> Result<(rayon::ThreadPool, usize)> {
    let n = match workers {
        Some(0) => return Err(Error::config("workers", "must be at least 1")),
        Some(w) => w,
        None => std::thread::available_parallelism().map_or(1, |p| p.get()),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map_err(|e| Error::arg(format!("cannot start worker pool: {e}")))?;
    Ok((pool, n))
}

fn banner(command: &str, cfg: &ExperimentConfig, workers: usize, extra: &str) {
    eprintln!(
        "epicontrol {} {command}: seed={} replicates={} n={} horizon={} workers={workers}{extra}",
        env!("CARGO_PKG_VERSION"),
        cfg.master_seed,
        cfg.replicates,
        cfg.population.n,
        cfg.horizon,
    );
    for line in config::canonical(cfg).lines() {
        eprintln!("  {line}");
    }
}

fn create_dir(p: &Path) -> Result<()> {
    std::fs::create_dir_all(p).map_err(|e| Error::io(p, e))
}

fn write_file(p: &Path, contents: &str) -> Result<()> {
    std::fs::write(p, contents).map_err(|e| Error::io(p, e))
}

fn write_result(out: &Path, res: &ExperimentResult) -> Result<()> {
    let dir = out.join(&res.label);
    create_dir(&dir)?;
    for s in &res.series {
        s.write_csv(&dir.join(format!("replicate_{:03}.csv", s.meta.replicate)))?;
    }
    res.mean.write_csv(&dir.join("mean.csv"))?;
    metrics::write_rounds_csv(&dir.join("rounds.csv"), &res.series)?;
    for s in &res.series {
        for r in &s.rounds {
            if r.administered < r.requested {
                eprintln!(
                    "note: {} replicate {} day {}: {} of {} doses administered (candidates exhausted)",
                    res.label, s.meta.replicate, r.day, r.administered, r.requested
                );
            }
        }
    }
    Ok(())
}

fn write_summary(out: &Path, results: &[ExperimentResult]) -> Result<()> {
    let finals: Vec<FinalValues> = results.iter().map(|r| FinalValues::from_series(&r.label, &r.series)).collect();
    let baseline = results
        .iter()
        .find(|r| r.series.first().is_some_and(|s| s.meta.strategy == Strategy::None.name()))
        .map(|r| r.label.as_str());
    let rows = metrics::summarize(&finals, baseline);
    metrics::write_summary_csv(&out.join("summary.csv"), &rows)?;
    let table = metrics::format_summary_table(&rows);
    let mut stdout = std::io::stdout().lock();
    stdout
        .write_all(table.as_bytes())
        .map_err(|e| Error::io(Path::new("<stdout>"), e))
}

fn run(a: RunArgs) -> Result<()> {
    let cfg = resolve(&a.common, |c| {
        if let Some(s) = &a.strategy {
            c.experiment.strategy = s.parse()?;
        }
        if let Some(s) = &a.schedule {
            c.set_schedule(parse_schedule(s)?);
        }
        Ok(())
    })?;
    let e = cfg.experiment;
    let (pool, workers) = pool(a.common.workers)?;
    banner("run", &e, workers, &format!(" label={}", e.label()));
    let res = pool.install(|| workflow::run_experiment(&e))?;
    create_dir(&a.common.out)?;
    write_file(&a.common.out.join("manifest.txt"), &config::manifest(&e, None))?;
    write_result(&a.common.out, &res)?;
    write_summary(&a.common.out, std::slice::from_ref(&res))
}

/// Expands strategies × schedules; the no-vaccine baseline appears once.
pub fn comparison_configs(base: &ExperimentConfig, strategies: &[Strategy], schedules: &[ScheduleSpec]) -> Vec<ExperimentConfig> {
    let mut out = Vec::new();
    for &strategy in strategies {
        if strategy == Strategy::None {
            out.push(ExperimentConfig {
                strategy,
                schedule: ScheduleSpec::None,
                label: None,
                ..base.clone()
            });
            continue;
        }
        for spec in schedules {
            out.push(ExperimentConfig {
                strategy,
                schedule: spec.clone(),
                label: None,
                ..base.clone()
            });
        }
    }
    out
}

fn compare(a: CompareArgs) -> Result<()> {
    let mut strategies = None;
    let mut schedules = None;
    let cfg = resolve(&a.common, |c| {
        let s = match &a.strategies {
            Some(list) => list
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(str::parse)
                .collect::<Result<Vec<Strategy>>>()?,
            None => c.compare_strategies.clone().unwrap_or_else(|| Strategy::ALL.to_vec()),
        };
        let sc = if !a.schedules.is_empty() {
            a.schedules.iter().map(|s| parse_schedule(s)).collect::<Result<Vec<_>>>()?
        } else {
            c.compare_schedules.clone().unwrap_or_else(|| vec![c.experiment.schedule.clone()])
        };
        strategies = Some(s);
        schedules = Some(sc);
        Ok(())
    })?;
    let strategies = strategies.unwrap_or_default();
    let schedules = schedules.unwrap_or_default();
    if strategies.is_empty() {
        return Err(Error::config("compare.strategies", "no strategies given"));
    }
    let e = cfg.experiment;
    let configs = comparison_configs(&e, &strategies, &schedules);
    for c in &configs {
        c.validate()?;
    }
    let (pool, workers) = pool(a.common.workers)?;
    let labels: Vec<String> = configs.iter().map(|c| c.label()).collect();
    banner("compare", &e, workers, &format!(" configurations={}", labels.join(",")));
    let results = pool.install(|| workflow::run_comparison(&configs))?;
    create_dir(&a.common.out)?;
    write_file(
        &a.common.out.join("manifest.txt"),
        &config::manifest(&e, Some((&strategies, &schedules))),
    )?;
    for r in &results {
        write_result(&a.common.out, r)?;
    }
    write_summary(&a.common.out, &results)
}

fn gen_network(a: GenArgs) -> Result<()> {
    let mut cfg = load_config(a.config.as_deref())?;
    cfg.apply_overrides(a.set.iter().map(String::as_str))?;
    if let Some(n) = a.n {
        cfg.experiment.population.n = n;
    }
    let file_seed = cfg.seed_set.then_some(cfg.experiment.master_seed);
    let seed = config::resolve_seed(a.seed, file_seed, env_seed().as_deref())?;
    cfg.experiment.population.validate()?;
    let pop = &cfg.experiment.population;
    eprintln!("epicontrol {} gen-network: seed={seed} n={}", env!("CARGO_PKG_VERSION"), pop.n);
    let net = generate_synthetic_population(pop, ReplicateSeeds::derive(seed, 0).network)?;
    if let Some(dir) = a.out.parent().filter(|d| !d.as_os_str().is_empty()) {
        create_dir(dir)?;
    }
    net.save(&a.out)?;
    eprintln!("wrote {} agents, {} directed edges", net.len(), net.num_edges());
    Ok(())
}

fn degree_hist(a: HistArgs) -> Result<()> {
    let net = ContactNetwork::load(&a.network)?;
    let hist = net.degree_distribution();
    match &a.out {
        Some(p) => {
            let f = std::fs::File::create(p).map_err(|e| Error::io(p, e))?;
            write_degree_csv(std::io::BufWriter::new(f), &hist).map_err(|e| Error::io(p, e))
        }
        None => write_degree_csv(std::io::stdout().lock(), &hist).map_err(|e| Error::io(Path::new("<stdout>"), e)),
    }
}
