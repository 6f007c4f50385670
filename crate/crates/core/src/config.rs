//! Flat `key = value` configuration files and run manifests.
//!
//! ```text
//! # comment
//! experiment.strategy = preempt
//! schedule.kind = uniform
//! schedule.batch = 0.01
//! schedule.rounds = 20
//! population.n = 2000
//! ```
//!
//! Unknown keys are rejected. A manifest written by [`manifest`] is itself a
//! valid config that reproduces the run.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::network::{Layer, PopulationConfig};
use crate::selection::Strategy;
use crate::workflow::{ExperimentConfig, ReplicateSeeds, ScheduleSpec};

pub const SEED_ENV: &str = "EPICONTROL_SEED";

/// A parsed config file: one experiment plus optional comparison axes.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConfigFile {
    pub experiment: ExperimentConfig,
    /// Whether `experiment.seed` was given explicitly.
    pub seed_set: bool,
    pub compare_strategies: Option<Vec<Strategy>>,
    pub compare_schedules: Option<Vec<ScheduleSpec>>,
    parts: ScheduleParts,
}

#[derive(Debug, Clone, PartialEq, Default)]
struct ScheduleParts {
    kind: Option<String>,
    batch: Option<String>,
    rounds: Option<String>,
    batches: Option<String>,
}

impl ScheduleParts {
    fn is_empty(&self) -> bool {
        self.kind.is_none() && self.batch.is_none() && self.rounds.is_none() && self.batches.is_none()
    }

    fn assemble(&self) -> Result<ScheduleSpec> {
        let need = |v: &Option<String>, key: &str| {
            v.clone()
                .ok_or_else(|| Error::config(key, "required by schedule.kind"))
        };
        let kind = need(&self.kind, "schedule.kind")?;
        let grammar = match kind.as_str() {
            "none" => "none".to_string(),
            "single" => format!("single:{}", need(&self.batch, "schedule.batch")?),
            "uniform" => format!(
                "uniform:{}x{}",
                need(&self.batch, "schedule.batch")?,
                need(&self.rounds, "schedule.rounds")?
            ),
            "explicit" => format!("explicit:{}", need(&self.batches, "schedule.batches")?),
            other => {
                return Err(Error::config(
                    "schedule.kind",
                    format!("unknown schedule kind `{other}` (expected none, single, uniform or explicit)"),
                ))
            }
        };
        ScheduleSpec::parse(&grammar).map_err(|r| Error::config("schedule", r))
    }
}

/// Splits `text` into `(line, key, value)` triples.
pub fn parse_pairs(text: &str, path: &str) -> Result<Vec<(usize, String, String)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
            path: path.into(),
            line: i + 1,
            reason: format!("expected `key = value`, got `{line}`"),
        })?;
        out.push((i + 1, k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

fn num<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::config(key, format!("cannot parse `{value}`")))
}

fn list(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn set_population(p: &mut PopulationConfig, key: &str, value: &str) -> Result<()> {
    let field = &key["population.".len()..];
    match field {
        "n" => p.n = num(key, value)?,
        "household_mean" => p.household_mean = num(key, value)?,
        "school_class_size" => {
            p.school_class_size = if value == "none" { None } else { Some(num(key, value)?) }
        }
        "workplace_mean" => p.workplace_mean = if value == "none" { None } else { Some(num(key, value)?) },
        "community_mean_degree" => p.community_mean_degree = num(key, value)?,
        "trans_sigma" => p.trans_sigma = num(key, value)?,
        "sus_sigma" => p.sus_sigma = num(key, value)?,
        "age_histogram" => {
            p.age_histogram = if value == "none" {
                None
            } else {
                Some(list(value).map(|x| num(key, x)).collect::<Result<Vec<f64>>>()?)
            }
        }
        _ => {
            let (array, layer) = if let Some(l) = field.strip_prefix("beta_") {
                (&mut p.beta, l)
            } else if let Some(l) = field.strip_prefix("freq_") {
                (&mut p.contact_freq, l)
            } else {
                return Err(Error::config(key, "unknown configuration key"));
            };
            let layer = Layer::from_name(layer).ok_or_else(|| Error::config(key, "unknown configuration key"))?;
            array[layer.index()] = num(key, value)?;
        }
    }
    Ok(())
}

impl ConfigFile {
    /// Parses a config; call [`ConfigFile::finish`] once all overrides are in.
    pub fn parse(text: &str, path: &str) -> Result<Self> {
        let mut cfg = ConfigFile::default();
        for (_, k, v) in parse_pairs(text, path)? {
            cfg.set(&k, &v)?;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, &path.display().to_string())
    }

    /// Applies `key=value` overrides.
    pub fn apply_overrides<'a>(&mut self, pairs: impl IntoIterator<Item = &'a str>) -> Result<()> {
        for p in pairs {
            let (k, v) = p
                .split_once('=')
                .ok_or_else(|| Error::arg(format!("override `{p}` is not of the form key=value")))?;
            self.set(k.trim(), v.trim())?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let e = &mut self.experiment;
        let bad = |reason: String| Error::config(key, reason);
        match key {
            "experiment.horizon" => e.horizon = num(key, value)?,
            "experiment.first_round_day" => e.first_round_day = num(key, value)?,
            "experiment.round_interval" => e.round_interval = num(key, value)?,
            "experiment.replicates" => e.replicates = num(key, value)?,
            "experiment.seed" => {
                e.master_seed = num(key, value)?;
                self.seed_set = true;
            }
            "experiment.strategy" => e.strategy = value.parse()?,
            "experiment.label" => e.label = (!value.is_empty()).then(|| value.to_string()),
            "schedule" => {
                e.schedule = ScheduleSpec::parse(value).map_err(bad)?;
                self.parts = ScheduleParts::default();
            }
            "schedule.kind" => self.parts.kind = Some(value.into()),
            "schedule.batch" => self.parts.batch = Some(value.into()),
            "schedule.rounds" => self.parts.rounds = Some(value.into()),
            "schedule.batches" => self.parts.batches = Some(value.into()),
            "preempt.samples" => e.preempt_samples = num(key, value)?,
            "preempt.retention" => e.retention = value.parse().map_err(bad)?,
            "disease.latent_mean_days" => e.disease.latent_mean_days = num(key, value)?,
            "disease.infectious_mean_days" => e.disease.infectious_mean_days = num(key, value)?,
            "disease.case_fatality" => e.disease.case_fatality = num(key, value)?,
            "disease.initial_infections" => e.disease.initial_infections = num(key, value)?,
            "compare.strategies" => {
                self.compare_strategies = Some(list(value).map(str::parse).collect::<Result<Vec<Strategy>>>()?)
            }
            "compare.schedules" => {
                self.compare_schedules = Some(
                    value
                        .split(';')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(|s| ScheduleSpec::parse(s).map_err(|r| Error::config(key, r)))
                        .collect::<Result<Vec<_>>>()?,
                )
            }
            k if k.starts_with("population.") => set_population(&mut e.population, key, value)?,
            _ => return Err(Error::config(key, "unknown configuration key")),
        }
        Ok(())
    }

    /// Replaces the schedule, discarding any `schedule.*` parts.
    pub fn set_schedule(&mut self, spec: ScheduleSpec) {
        self.experiment.schedule = spec;
        self.parts = ScheduleParts::default();
    }

    /// Assembles `schedule.*` parts, resolves fractions and validates.
    pub fn finish(&mut self) -> Result<()> {
        if !self.parts.is_empty() {
            self.experiment.schedule = self.parts.assemble()?;
            self.parts = ScheduleParts::default();
        }
        self.experiment.validate()
    }
}

/// Seed precedence: explicit flag, then config file, then `EPICONTROL_SEED`, then 0.
pub fn resolve_seed(flag: Option<u64>, file: Option<u64>, env: Option<&str>) -> Result<u64> {
    if let Some(s) = flag.or(file) {
        return Ok(s);
    }
    match env {
        Some(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::config(SEED_ENV, format!("cannot parse `{v}` as a seed"))),
        None => Ok(0),
    }
}

fn fmt_opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "none".to_string(), |x| x.to_string())
}

/// Canonical config lines with fractions resolved to counts.
pub fn canonical(cfg: &ExperimentConfig) -> String {
    let p = &cfg.population;
    let d = &cfg.disease;
    let mut s = String::new();
    let mut kv = |k: &str, v: String| {
        let _ = writeln!(s, "{k} = {v}");
    };
    kv("experiment.horizon", cfg.horizon.to_string());
    kv("experiment.first_round_day", cfg.first_round_day.to_string());
    kv("experiment.round_interval", cfg.round_interval.to_string());
    kv("experiment.replicates", cfg.replicates.to_string());
    kv("experiment.seed", cfg.master_seed.to_string());
    kv("experiment.strategy", cfg.strategy.name().to_string());
    if let Some(l) = &cfg.label {
        kv("experiment.label", l.clone());
    }
    kv("schedule", cfg.schedule.resolved(p.n).grammar());
    kv("preempt.samples", cfg.preempt_samples.to_string());
    kv("preempt.retention", cfg.retention.name().to_string());
    kv("disease.latent_mean_days", d.latent_mean_days.to_string());
    kv("disease.infectious_mean_days", d.infectious_mean_days.to_string());
    kv("disease.case_fatality", d.case_fatality.to_string());
    kv("disease.initial_infections", d.initial_infections.to_string());
    kv("population.n", p.n.to_string());
    kv("population.household_mean", p.household_mean.to_string());
    kv("population.school_class_size", fmt_opt(&p.school_class_size));
    kv("population.workplace_mean", fmt_opt(&p.workplace_mean));
    kv("population.community_mean_degree", p.community_mean_degree.to_string());
    for l in Layer::ALL {
        kv(&format!("population.beta_{}", l.name()), p.beta[l.index()].to_string());
    }
    for l in Layer::ALL {
        kv(&format!("population.freq_{}", l.name()), p.contact_freq[l.index()].to_string());
    }
    kv("population.trans_sigma", p.trans_sigma.to_string());
    kv("population.sus_sigma", p.sus_sigma.to_string());
    kv(
        "population.age_histogram",
        p.age_histogram.as_ref().map_or_else(
            || "none".to_string(),
            |h| h.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
        ),
    );
    s
}

/// Run manifest: the resolved config followed by the derived per-replicate
/// seeds as comments. Holds no paths, timestamps or worker counts, so it is
/// byte-identical across repeated invocations.
pub fn manifest(cfg: &ExperimentConfig, compare: Option<(&[Strategy], &[ScheduleSpec])>) -> String {
    let mut s = String::from("# epicontrol run manifest\n");
    s.push_str(&canonical(cfg));
    if let Some((strategies, schedules)) = compare {
        let names: Vec<&str> = strategies.iter().map(|s| s.name()).collect();
        let _ = writeln!(s, "compare.strategies = {}", names.join(","));
        let scheds: Vec<String> = schedules.iter().map(|x| x.resolved(cfg.population.n).grammar()).collect();
        let _ = writeln!(s, "compare.schedules = {}", scheds.join(";"));
    }
    for r in 0..cfg.replicates {
        let seeds = ReplicateSeeds::derive(cfg.master_seed, r);
        let _ = writeln!(
            s,
            "# replicate {r}: network_seed={} epidemic_seed={} seeding_seed={} selection_seed={}",
            seeds.network, seeds.epidemic, seeds.seeding, seeds.selection
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workflow::Amount;

    #[test]
    fn parses_keys_and_comments() {
        let text = "# base\nexperiment.strategy = preempt  # trailing\npopulation.n = 500\n\nschedule.kind = uniform\nschedule.batch = 0.01\nschedule.rounds = 20\npopulation.beta_work = 0.3\n";
        let mut cfg = ConfigFile::parse(text, "base.cfg").unwrap();
        cfg.finish().unwrap();
        let e = &cfg.experiment;
        assert_eq!(e.strategy, Strategy::Preempt);
        assert_eq!(e.population.n, 500);
        assert_eq!(e.population.beta[Layer::Work.index()], 0.3);
        assert_eq!(e.schedule, ScheduleSpec::Uniform { batch: Amount::Fraction(0.01), rounds: 20 });
        assert!(!cfg.seed_set);
    }

    #[test]
    fn rejects_unknown_keys_by_name() {
        for bad in ["experiment.colour = red", "population.beta_pub = 0.1", "foo = 1"] {
            let err = ConfigFile::parse(bad, "x").unwrap_err();
            let key = bad.split('=').next().unwrap().trim();
            assert!(err.to_string().contains(key), "{err}");
            assert!(err.is_validation());
        }
        let err = ConfigFile::parse("experiment.strategy = frobnicate", "x").unwrap_err();
        assert!(err.to_string().contains("strategy"));
        assert!(matches!(ConfigFile::parse("no equals sign", "x"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn incomplete_schedule_names_the_missing_key() {
        let mut cfg = ConfigFile::parse("schedule.kind = uniform\nschedule.batch = 10", "x").unwrap();
        let err = cfg.finish().unwrap_err();
        assert!(err.to_string().contains("schedule.rounds"));
    }

    #[test]
    fn seed_precedence() {
        assert_eq!(resolve_seed(Some(7), Some(3), Some("9")).unwrap(), 7);
        assert_eq!(resolve_seed(None, Some(3), Some("9")).unwrap(), 3);
        assert_eq!(resolve_seed(None, None, Some("9")).unwrap(), 9);
        assert_eq!(resolve_seed(None, None, None).unwrap(), 0);
        assert!(resolve_seed(None, None, Some("x")).is_err());
    }

    #[test]
    fn manifest_round_trips() {
        let mut cfg = ConfigFile::default();
        cfg.experiment.strategy = Strategy::Degree;
        cfg.experiment.schedule = ScheduleSpec::parse("explicit:0.02x2,0.01").unwrap();
        cfg.experiment.population.age_histogram = Some(vec![1.0; 101]);
        cfg.experiment.population.workplace_mean = None;
        cfg.experiment.master_seed = 42;
        cfg.experiment.replicates = 3;
        let m = manifest(&cfg.experiment, None);
        let mut back = ConfigFile::parse(&m, "manifest.txt").unwrap();
        back.finish().unwrap();
        assert_eq!(back.experiment.schedule, ScheduleSpec::parse("explicit:40,40,20").unwrap());
        let mut expected = cfg.experiment.clone();
        expected.schedule = back.experiment.schedule.clone();
        assert_eq!(back.experiment, expected);
        assert_eq!(manifest(&back.experiment, None), m);
        assert_eq!(m.lines().filter(|l| l.starts_with("# replicate")).count(), 3);
    }
}
