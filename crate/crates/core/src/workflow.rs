//! End-to-end experiment orchestration.
//!
//! A replicate builds its network, seeds the epidemic and then, for each
//! day, vaccinates if a round is due and advances the disease by one step.
//! Vaccination precedes that day's transmission.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::disease::{DiseaseParams, SimState};
use crate::error::{Error, Result};
use crate::metrics::{MeanSeries, MetricsTimeSeries, RoundRecord, RunMeta};
use crate::network::{generate_synthetic_population, PopulationConfig};
use crate::rng::{self, tag};
use crate::sampler::Retention;
use crate::selection::{PreemptParams, SelectionContext, Strategy, DEFAULT_SAMPLES};

/// A dose count, either absolute or as a fraction of the population.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Amount {
    Count(usize),
    Fraction(f64),
}

impl Amount {
    pub fn resolve(self, n: usize) -> usize {
        match self {
            Amount::Count(c) => c,
            Amount::Fraction(f) => (f * n as f64).round() as usize,
        }
    }
}

impl fmt::Display for Amount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Amount::Count(c) => write!(f, "{c}"),
            Amount::Fraction(x) => {
                let s = format!("{x}");
                if s.contains('.') {
                    f.write_str(&s)
                } else {
                    write!(f, "{s}.0")
                }
            }
        }
    }
}

impl FromStr for Amount {
    type Err = String;

    /// `1000` is a count; anything with a decimal point is a fraction of n.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if s.starts_with('-') {
            return Err(format!("negative batch `{s}`"));
        }
        if s.contains('.') {
            let f: f64 = s.parse().map_err(|_| format!("bad fraction `{s}`"))?;
            if !(0.0..=1.0).contains(&f) {
                return Err(format!("fraction `{s}` outside [0,1]"));
            }
            Ok(Amount::Fraction(f))
        } else {
            s.parse().map(Amount::Count).map_err(|_| format!("bad batch size `{s}`"))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScheduleSpec {
    None,
    Single(Amount),
    Uniform { batch: Amount, rounds: usize },
    /// One batch per round at the regular cadence.
    Explicit(Vec<Amount>),
}

impl ScheduleSpec {
    /// Parses `none`, `single:<amount>`, `uniform:<amount>x<rounds>` or
    /// `explicit:<a1,a2,...>` where an explicit item may be `<amount>x<repeat>`.
    pub fn parse(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if s == "none" {
            return Ok(ScheduleSpec::None);
        }
        let (kind, body) = s
            .split_once(':')
            .ok_or_else(|| format!("expected <kind>:<args>, got `{s}`"))?;
        match kind {
            "single" => Ok(ScheduleSpec::Single(body.parse()?)),
            "uniform" => {
                let (batch, rounds) = body
                    .split_once('x')
                    .ok_or_else(|| format!("expected uniform:<batch>x<rounds>, got `{s}`"))?;
                Ok(ScheduleSpec::Uniform {
                    batch: batch.parse()?,
                    rounds: rounds.trim().parse().map_err(|_| format!("bad round count `{rounds}`"))?,
                })
            }
            "explicit" => {
                let mut out = Vec::new();
                for item in body.split(',').map(str::trim).filter(|x| !x.is_empty()) {
                    match item.split_once('x') {
                        Some((a, r)) => {
                            let a: Amount = a.parse()?;
                            let r: usize = r.trim().parse().map_err(|_| format!("bad repeat `{r}`"))?;
                            out.extend(std::iter::repeat_n(a, r));
                        }
                        None => out.push(item.parse()?),
                    }
                }
                Ok(ScheduleSpec::Explicit(out))
            }
            other => Err(format!("unknown schedule kind `{other}`")),
        }
    }

    /// Grammar string that parses back to `self`.
    pub fn grammar(&self) -> String {
        match self {
            ScheduleSpec::None => "none".into(),
            ScheduleSpec::Single(a) => format!("single:{a}"),
            ScheduleSpec::Uniform { batch, rounds } => format!("uniform:{batch}x{rounds}"),
            ScheduleSpec::Explicit(v) => {
                format!("explicit:{}", v.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(","))
            }
        }
    }

    /// Same spec with every amount resolved to a count.
    pub fn resolved(&self, n: usize) -> ScheduleSpec {
        let c = |a: &Amount| Amount::Count(a.resolve(n));
        match self {
            ScheduleSpec::None => ScheduleSpec::None,
            ScheduleSpec::Single(a) => ScheduleSpec::Single(c(a)),
            ScheduleSpec::Uniform { batch, rounds } => ScheduleSpec::Uniform {
                batch: c(batch),
                rounds: *rounds,
            },
            ScheduleSpec::Explicit(v) => ScheduleSpec::Explicit(v.iter().map(c).collect()),
        }
    }

    /// `<batch>_<rounds>` for single and uniform schedules,
    /// `non-uniform_<total>_<rounds>` for explicit ones.
    pub fn label(&self, n: usize) -> String {
        match self {
            ScheduleSpec::None => "none".into(),
            ScheduleSpec::Single(a) => format!("{}_1", a.resolve(n)),
            ScheduleSpec::Uniform { batch, rounds } => format!("{}_{rounds}", batch.resolve(n)),
            ScheduleSpec::Explicit(v) => {
                let total: usize = v.iter().map(|a| a.resolve(n)).sum();
                format!("non-uniform_{total}_{}", v.len())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Round {
    pub day: u32,
    pub batch: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InterventionSchedule {
    rounds: Vec<Round>,
}

impl InterventionSchedule {
    /// Validates strictly increasing days in `1..=horizon`.
    pub fn new(rounds: Vec<Round>, horizon: u32) -> Result<Self> {
        for (i, r) in rounds.iter().enumerate() {
            if r.day == 0 {
                return Err(Error::config("schedule", "round days start at 1"));
            }
            if r.day > horizon {
                return Err(Error::config(
                    "schedule",
                    format!("round on day {} falls beyond the horizon of {horizon} days", r.day),
                ));
            }
            if i > 0 && rounds[i - 1].day >= r.day {
                return Err(Error::config("schedule", "round days must be strictly increasing"));
            }
        }
        Ok(InterventionSchedule { rounds })
    }

    pub fn rounds(&self) -> &[Round] {
        &self.rounds
    }

    pub fn total_doses(&self) -> usize {
        self.rounds.iter().map(|r| r.batch).sum()
    }

    pub fn batch_on(&self, day: u32) -> Option<usize> {
        self.rounds
            .binary_search_by_key(&day, |r| r.day)
            .ok()
            .map(|i| self.rounds[i].batch)
    }
}

pub fn build_schedule(
    spec: &ScheduleSpec,
    first_day: u32,
    interval: u32,
    horizon: u32,
    n: usize,
) -> Result<InterventionSchedule> {
    let weekly = |batches: Vec<usize>| -> Vec<Round> {
        batches
            .into_iter()
            .enumerate()
            .map(|(i, batch)| Round {
                day: first_day.saturating_add((i as u32).saturating_mul(interval)),
                batch,
            })
            .collect()
    };
    let rounds = match spec {
        ScheduleSpec::None => Vec::new(),
        ScheduleSpec::Single(a) => weekly(vec![a.resolve(n)]),
        ScheduleSpec::Uniform { batch, rounds } => weekly(vec![batch.resolve(n); *rounds]),
        ScheduleSpec::Explicit(v) => weekly(v.iter().map(|a| a.resolve(n)).collect()),
    };
    InterventionSchedule::new(rounds, horizon)
}

/// Which retention probability PREEMPT's samples use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RetentionMode {
    PerContact,
    InfectiousPeriod,
}

impl RetentionMode {
    pub fn name(self) -> &'static str {
        match self {
            RetentionMode::PerContact => "per-contact",
            RetentionMode::InfectiousPeriod => "infectious-period",
        }
    }

    pub fn for_disease(self, disease: &DiseaseParams) -> Retention {
        match self {
            RetentionMode::PerContact => Retention::PerContact,
            RetentionMode::InfectiousPeriod => Retention::InfectiousPeriod {
                mean_days: disease.infectious_mean_days,
            },
        }
    }
}

impl FromStr for RetentionMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "per-contact" => Ok(RetentionMode::PerContact),
            "infectious-period" => Ok(RetentionMode::InfectiousPeriod),
            _ => Err(format!("unknown retention `{s}` (expected per-contact or infectious-period)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub horizon: u32,
    pub first_round_day: u32,
    pub round_interval: u32,
    pub strategy: Strategy,
    pub schedule: ScheduleSpec,
    pub population: PopulationConfig,
    pub disease: DiseaseParams,
    pub replicates: usize,
    pub master_seed: u64,
    pub preempt_samples: usize,
    pub retention: RetentionMode,
    /// Overrides the derived `<strategy>_<schedule>` label.
    pub label: Option<String>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            horizon: 170,
            first_round_day: 31,
            round_interval: 7,
            strategy: Strategy::None,
            schedule: ScheduleSpec::None,
            population: PopulationConfig::default(),
            disease: DiseaseParams::default(),
            replicates: 1,
            master_seed: 0,
            preempt_samples: DEFAULT_SAMPLES,
            retention: RetentionMode::InfectiousPeriod,
            label: None,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.horizon == 0 {
            return Err(Error::config("experiment.horizon", "must be at least 1"));
        }
        if self.first_round_day == 0 {
            return Err(Error::config("experiment.first_round_day", "must be at least 1"));
        }
        if self.round_interval == 0 {
            return Err(Error::config("experiment.round_interval", "must be at least 1"));
        }
        if self.replicates == 0 {
            return Err(Error::config("experiment.replicates", "must be at least 1"));
        }
        if self.preempt_samples == 0 {
            return Err(Error::config("preempt.samples", "sampling effort must be at least 1"));
        }
        self.population.validate()?;
        self.disease.validate()?;
        if self.disease.initial_infections > self.population.n {
            return Err(Error::config(
                "disease.initial_infections",
                format!("exceeds the population of {}", self.population.n),
            ));
        }
        self.schedule()?;
        Ok(())
    }

    pub fn schedule(&self) -> Result<InterventionSchedule> {
        build_schedule(
            &self.schedule,
            self.first_round_day,
            self.round_interval,
            self.horizon,
            self.population.n,
        )
    }

    pub fn label(&self) -> String {
        if let Some(l) = &self.label {
            return l.clone();
        }
        match self.strategy {
            Strategy::None => "none".into(),
            s => format!("{s}_{}", self.schedule.label(self.population.n)),
        }
    }

    pub fn preempt_params(&self) -> PreemptParams {
        PreemptParams {
            samples: self.preempt_samples,
            retention: self.retention.for_disease(&self.disease),
        }
    }
}

/// Seeds of one replicate. Shared by every configuration with the same
/// master seed, which gives common random numbers across strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReplicateSeeds {
    pub network: u64,
    pub epidemic: u64,
    pub seeding: u64,
    pub selection: u64,
}

impl ReplicateSeeds {
    pub fn derive(master: u64, replicate: usize) -> Self {
        let r = replicate as u64;
        ReplicateSeeds {
            network: rng::derive(master, &[tag::NETWORK, r]),
            epidemic: rng::derive(master, &[tag::EPIDEMIC, r]),
            seeding: rng::derive(master, &[tag::SEEDING, r]),
            selection: rng::derive(master, &[tag::SELECTION, r]),
        }
    }

    pub fn for_round(&self, day: u32) -> u64 {
        rng::derive2(self.selection, tag::SELECTION, day as u64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub label: String,
    pub schedule: InterventionSchedule,
    pub series: Vec<MetricsTimeSeries>,
    pub mean: MeanSeries,
}

/// One replicate of `config`; depends only on `(config, replicate)`.
pub fn run_replicate(config: &ExperimentConfig, schedule: &InterventionSchedule, replicate: usize) -> Result<MetricsTimeSeries> {
    let seeds = ReplicateSeeds::derive(config.master_seed, replicate);
    let mut network = generate_synthetic_population(&config.population, seeds.network)?;
    let mut state = SimState::new(network.len(), seeds.epidemic);
    let seeded = state.seed_infections(config.disease.initial_infections, seeds.seeding, &config.disease)?;
    let mut series = MetricsTimeSeries::new(
        RunMeta {
            label: config.label(),
            strategy: config.strategy.name().into(),
            schedule: config.schedule.label(config.population.n),
            replicate,
            network_seed: seeds.network,
            epidemic_seed: seeds.epidemic,
        },
        seeded.len(),
    );
    let preempt = config.preempt_params();
    for day in 1..=config.horizon {
        let mut doses = 0;
        if let Some(batch) = schedule.batch_on(day) {
            if config.strategy != Strategy::None {
                let chosen = if batch == 0 {
                    Vec::new()
                } else {
                    let ctx = SelectionContext::from_state(&state, &network, batch, preempt, seeds.for_round(day));
                    config.strategy.select(&ctx)?.seeds
                };
                doses = state.apply_vaccination(&mut network, &chosen)?;
                series.rounds.push(RoundRecord {
                    day,
                    requested: batch,
                    administered: doses,
                });
            }
        }
        let outcome = state.step_day(&mut network, &config.disease);
        series.record_day(day, &outcome, &state, doses)?;
    }
    Ok(series)
}

/// Runs every replicate on the current rayon pool.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    config.validate()?;
    let schedule = config.schedule()?;
    let series = (0..config.replicates)
        .into_par_iter()
        .map(|r| run_replicate(config, &schedule, r))
        .collect::<Result<Vec<_>>>()?;
    let label = config.label();
    let mean = MeanSeries::from_replicates(&label, &series)?;
    Ok(ExperimentResult {
        label,
        schedule,
        series,
        mean,
    })
}

/// Runs configurations that share horizon, population, replicate count and
/// master seed, so replicate `r` of each sees the same network and epidemic
/// randomness.
pub fn run_comparison(configs: &[ExperimentConfig]) -> Result<Vec<ExperimentResult>> {
    if let Some(first) = configs.first() {
        for c in &configs[1..] {
            if c.horizon != first.horizon {
                return Err(Error::config("experiment.horizon", "compared configurations must share the horizon"));
            }
            if c.population != first.population {
                return Err(Error::config("population", "compared configurations must share the population"));
            }
            if c.replicates != first.replicates {
                return Err(Error::config("experiment.replicates", "compared configurations must share the replicate count"));
            }
            if c.master_seed != first.master_seed {
                return Err(Error::config("experiment.seed", "compared configurations must share the master seed"));
            }
        }
    }
    let mut labels: Vec<String> = configs.iter().map(|c| c.label()).collect();
    labels.sort();
    if let Some(dup) = labels.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::config("compare", format!("duplicate configuration label `{}`", dup[0])));
    }
    configs.iter().map(run_experiment).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(strategy: Strategy, schedule: ScheduleSpec) -> ExperimentConfig {
        ExperimentConfig {
            horizon: 60,
            strategy,
            schedule,
            population: PopulationConfig { n: 300, ..Default::default() },
            disease: DiseaseParams { initial_infections: 5, ..Default::default() },
            replicates: 2,
            master_seed: 17,
            preempt_samples: 16,
            ..Default::default()
        }
    }

    #[test]
    fn schedule_examples() {
        let u = build_schedule(&ScheduleSpec::Uniform { batch: Amount::Count(1000), rounds: 20 }, 31, 7, 170, 100_000).unwrap();
        let days: Vec<u32> = u.rounds().iter().map(|r| r.day).collect();
        assert_eq!(days, (0..20).map(|i| 31 + 7 * i).collect::<Vec<_>>());
        assert_eq!(*days.last().unwrap(), 164);
        assert!(u.rounds().iter().all(|r| r.batch == 1000));
        assert_eq!(u.total_doses(), 20_000);

        let s = build_schedule(&ScheduleSpec::Single(Amount::Count(20_000)), 31, 7, 170, 100_000).unwrap();
        assert_eq!(s.rounds(), &[Round { day: 31, batch: 20_000 }]);

        let top = ScheduleSpec::parse("explicit:2000x5,1000x5,500x10").unwrap();
        let t = build_schedule(&top, 31, 7, 170, 100_000).unwrap();
        assert_eq!(t.rounds().len(), 20);
        assert_eq!(t.rounds().last().unwrap().day, 164);
        assert_eq!(t.total_doses(), 20_000);
        assert_eq!(t.rounds()[4].batch, 2000);
        assert_eq!(t.rounds()[5].batch, 1000);
        assert_eq!(t.rounds()[10].batch, 500);
    }

    #[test]
    fn schedule_errors() {
        let too_long = ScheduleSpec::Uniform { batch: Amount::Count(1), rounds: 21 };
        assert!(build_schedule(&too_long, 31, 7, 170, 10).is_err());
        assert!(ScheduleSpec::parse("single:-5").unwrap_err().contains("negative"));
        assert!(ScheduleSpec::parse("weekly:3").is_err());
        assert!(InterventionSchedule::new(vec![Round { day: 5, batch: 1 }, Round { day: 5, batch: 1 }], 10).is_err());
    }

    #[test]
    fn schedule_grammar_round_trips() {
        for g in ["none", "single:0.2", "single:400", "uniform:0.01x20", "explicit:40,40,20"] {
            let spec = ScheduleSpec::parse(g).unwrap();
            assert_eq!(spec.grammar(), g);
        }
        assert_eq!(ScheduleSpec::parse("single:0.2").unwrap().resolved(2000).grammar(), "single:400");
        assert_eq!(ScheduleSpec::parse("uniform:0.01x20").unwrap().label(2000), "20_20");
    }

    #[test]
    fn empty_and_zero_schedules_match_baseline() {
        let base = run_experiment(&small(Strategy::None, ScheduleSpec::None)).unwrap();
        let zeros = run_experiment(&small(Strategy::Preempt, ScheduleSpec::Uniform { batch: Amount::Count(0), rounds: 3 })).unwrap();
        for (a, b) in base.series.iter().zip(&zeros.series) {
            assert_eq!(a.records, b.records);
        }
        let ignored = run_experiment(&small(Strategy::None, ScheduleSpec::Single(Amount::Count(50)))).unwrap();
        assert_eq!(base.series[0].records, ignored.series[0].records);
    }

    #[test]
    fn doses_never_exceed_batches() {
        let cfg = small(Strategy::Degree, ScheduleSpec::Uniform { batch: Amount::Count(40), rounds: 3 });
        let res = run_experiment(&cfg).unwrap();
        for s in &res.series {
            assert_eq!(s.rounds.len(), 3);
            assert!(s.rounds.iter().all(|r| r.administered <= r.requested));
            assert_eq!(s.total_doses(), s.rounds.iter().map(|r| r.administered).sum::<usize>());
        }
    }

    #[test]
    fn exhaustion_is_reported() {
        let mut cfg = small(Strategy::Random, ScheduleSpec::Single(Amount::Count(1000)));
        cfg.population.n = 200;
        let res = run_experiment(&cfg).unwrap();
        let s = &res.series[0];
        let r = s.rounds[0];
        assert_eq!(r.requested, 1000);
        assert!(r.administered < 200);
        assert_eq!(s.records[30].doses, r.administered);
        assert_eq!(s.unfilled_doses(), 1000 - r.administered);
    }

    #[test]
    fn comparison_rejects_mismatched_horizons() {
        let a = small(Strategy::None, ScheduleSpec::None);
        let mut b = small(Strategy::Degree, ScheduleSpec::Single(Amount::Count(10)));
        b.horizon = 61;
        assert!(matches!(
            run_comparison(&[a.clone(), b]),
            Err(Error::InvalidConfig { ref key, .. }) if key == "experiment.horizon"
        ));
        assert_eq!(run_comparison(&[a]).unwrap().len(), 1);
    }

    #[test]
    fn replicate_depends_only_on_its_index() {
        let mut cfg = small(Strategy::Preempt, ScheduleSpec::Single(Amount::Count(30)));
        let schedule = cfg.schedule().unwrap();
        let alone = run_replicate(&cfg, &schedule, 1).unwrap();
        cfg.replicates = 3;
        let all = run_experiment(&cfg).unwrap();
        assert_eq!(all.series[1], alone);
    }
}
