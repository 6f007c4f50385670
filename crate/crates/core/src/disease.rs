//! Discrete-time SEIR dynamics with death and vaccination compartments.
//!
//! Every random outcome is keyed by the replicate's epidemic seed:
//! transmission trials by `(day, edge)`, stay durations and fate by agent.
//! Two runs that share the seed therefore see the same coin for the same
//! contact on the same day, whatever the intervention did elsewhere.

use std::fmt;

use rand::seq::index;

use crate::error::{Error, Result};
use crate::network::{AgentId, ContactNetwork};
use crate::rng::{self, tag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Compartment {
    Susceptible = 0,
    Exposed = 1,
    Infectious = 2,
    Recovered = 3,
    Dead = 4,
    Vaccinated = 5,
}

impl Compartment {
    pub const ALL: [Compartment; 6] = [
        Compartment::Susceptible,
        Compartment::Exposed,
        Compartment::Infectious,
        Compartment::Recovered,
        Compartment::Dead,
        Compartment::Vaccinated,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Compartment::Susceptible => "susceptible",
            Compartment::Exposed => "exposed",
            Compartment::Infectious => "infectious",
            Compartment::Recovered => "recovered",
            Compartment::Dead => "dead",
            Compartment::Vaccinated => "vaccinated",
        }
    }

    pub fn is_absorbing(self) -> bool {
        matches!(self, Compartment::Dead | Compartment::Vaccinated)
    }

    pub fn is_infected(self) -> bool {
        matches!(self, Compartment::Exposed | Compartment::Infectious)
    }
}

impl fmt::Display for Compartment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiseaseParams {
    pub latent_mean_days: f64,
    pub infectious_mean_days: f64,
    pub case_fatality: f64,
    pub initial_infections: usize,
}

impl Default for DiseaseParams {
    fn default() -> Self {
        DiseaseParams {
            latent_mean_days: 3.0,
            infectious_mean_days: 7.0,
            case_fatality: 0.02,
            initial_infections: 10,
        }
    }
}

impl DiseaseParams {
    pub fn validate(&self) -> Result<()> {
        for (key, v) in [
            ("disease.latent_mean_days", self.latent_mean_days),
            ("disease.infectious_mean_days", self.infectious_mean_days),
        ] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::config(key, format!("mean duration {v} must be > 0")));
            }
        }
        if !(0.0..=1.0).contains(&self.case_fatality) {
            return Err(Error::config(
                "disease.case_fatality",
                format!("probability {} outside [0,1]", self.case_fatality),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DayOutcome {
    pub new_infections: usize,
    pub new_deaths: usize,
    pub new_recoveries: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimState {
    day: u32,
    compartments: Vec<Compartment>,
    remaining: Vec<u32>,
    counts: [usize; 6],
    ever_infected: usize,
    deaths: usize,
    epidemic_seed: u64,
}

impl SimState {
    /// All-susceptible population of `n` agents at day 0.
    pub fn new(n: usize, epidemic_seed: u64) -> Self {
        let mut counts = [0; 6];
        counts[Compartment::Susceptible as usize] = n;
        SimState {
            day: 0,
            compartments: vec![Compartment::Susceptible; n],
            remaining: vec![0; n],
            counts,
            ever_infected: 0,
            deaths: 0,
            epidemic_seed,
        }
    }

    pub fn day(&self) -> u32 {
        self.day
    }

    pub fn len(&self) -> usize {
        self.compartments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.compartments.is_empty()
    }

    pub fn compartment(&self, id: AgentId) -> Compartment {
        self.compartments[id as usize]
    }

    pub fn compartments(&self) -> &[Compartment] {
        &self.compartments
    }

    /// Days left in the current Exposed or Infectious stay.
    pub fn remaining_days(&self, id: AgentId) -> u32 {
        self.remaining[id as usize]
    }

    pub fn count(&self, c: Compartment) -> usize {
        self.counts[c as usize]
    }

    pub fn counts(&self) -> [usize; 6] {
        self.counts
    }

    pub fn ever_infected(&self) -> usize {
        self.ever_infected
    }

    pub fn deaths(&self) -> usize {
        self.deaths
    }

    pub fn epidemic_seed(&self) -> u64 {
        self.epidemic_seed
    }

    /// Currently Exposed or Infectious agents, ascending.
    pub fn infected(&self) -> Vec<AgentId> {
        self.ids_where(|c| c.is_infected())
    }

    pub fn ids_where(&self, pred: impl Fn(Compartment) -> bool) -> Vec<AgentId> {
        self.compartments
            .iter()
            .enumerate()
            .filter(|(_, c)| pred(**c))
            .map(|(i, _)| i as AgentId)
            .collect()
    }

    fn set(&mut self, id: AgentId, to: Compartment) {
        let slot = &mut self.compartments[id as usize];
        self.counts[*slot as usize] -= 1;
        self.counts[to as usize] += 1;
        if *slot == Compartment::Susceptible && to.is_infected() {
            self.ever_infected += 1;
        }
        if to == Compartment::Dead {
            self.deaths += 1;
        }
        *slot = to;
    }

    fn latent_days(&self, id: AgentId, params: &DiseaseParams) -> u32 {
        rng::geometric_days(
            rng::derive2(self.epidemic_seed, tag::LATENT, id as u64),
            params.latent_mean_days,
        )
    }

    fn infectious_days(&self, id: AgentId, params: &DiseaseParams) -> u32 {
        rng::geometric_days(
            rng::derive2(self.epidemic_seed, tag::INFECTIOUS, id as u64),
            params.infectious_mean_days,
        )
    }

    /// Places a Susceptible agent directly into Exposed or Infectious with an
    /// explicit stay length. Used to set up scenarios; normal runs go through
    /// [`SimState::seed_infections`].
    pub fn place(&mut self, id: AgentId, to: Compartment, days: u32) -> Result<()> {
        if id as usize >= self.len() {
            return Err(Error::arg(format!("agent id {id} outside [0,{})", self.len())));
        }
        if !to.is_infected() || days == 0 {
            return Err(Error::arg("placement must be Exposed or Infectious for >= 1 day"));
        }
        if self.compartment(id) != Compartment::Susceptible {
            return Err(Error::arg(format!("agent {id} is not susceptible")));
        }
        self.set(id, to);
        self.remaining[id as usize] = days;
        Ok(())
    }

    /// Exposes `count` uniformly chosen susceptible agents. Returns them ascending.
    pub fn seed_infections(
        &mut self,
        count: usize,
        seed: u64,
        params: &DiseaseParams,
    ) -> Result<Vec<AgentId>> {
        let susceptible = self.ids_where(|c| c == Compartment::Susceptible);
        if count > susceptible.len() {
            return Err(Error::arg(format!(
                "cannot seed {count} infections among {} susceptible agents",
                susceptible.len()
            )));
        }
        if count == 0 {
            return Ok(Vec::new());
        }
        let mut rng = rng::stream(seed, &[tag::SEEDING]);
        let mut chosen: Vec<AgentId> = index::sample(&mut rng, susceptible.len(), count)
            .into_iter()
            .map(|i| susceptible[i])
            .collect();
        chosen.sort_unstable();
        for &id in &chosen {
            self.set(id, Compartment::Exposed);
            self.remaining[id as usize] = self.latent_days(id, params);
        }
        Ok(chosen)
    }

    /// Advances one day.
    ///
    /// Infectious agents (ascending id) try every susceptible out-neighbour
    /// once with the edge weight as success probability. Then Infectious stays
    /// that began before today tick down and end in death or recovery, and
    /// every Exposed stay (including today's exposures) ticks down, with
    /// expired ones turning Infectious. An agent exposed today therefore
    /// transmits no earlier than tomorrow. Dead agents leave the network.
    pub fn step_day(&mut self, network: &mut ContactNetwork, params: &DiseaseParams) -> DayOutcome {
        let today = self.day + 1;
        let mut outcome = DayOutcome::default();
        let infectious = self.ids_where(|c| c == Compartment::Infectious);

        for &u in &infectious {
            for e in network.out_edges(u) {
                let v = e.dst;
                if self.compartments[v as usize] != Compartment::Susceptible || e.weight <= 0.0 {
                    continue;
                }
                let key = rng::derive(
                    self.epidemic_seed,
                    &[tag::TRANSMIT, today as u64, e.index as u64],
                );
                if rng::coin(key, e.weight) {
                    self.set(v, Compartment::Exposed);
                    self.remaining[v as usize] = self.latent_days(v, params);
                    outcome.new_infections += 1;
                }
            }
        }

        let mut dead = Vec::new();
        for &u in &infectious {
            let left = &mut self.remaining[u as usize];
            *left = left.saturating_sub(1);
            if *left == 0 {
                let fate = rng::derive2(self.epidemic_seed, tag::FATE, u as u64);
                if rng::coin(fate, params.case_fatality) {
                    self.set(u, Compartment::Dead);
                    dead.push(u);
                    outcome.new_deaths += 1;
                } else {
                    self.set(u, Compartment::Recovered);
                    outcome.new_recoveries += 1;
                }
            }
        }

        for u in 0..self.len() as AgentId {
            if self.compartments[u as usize] != Compartment::Exposed {
                continue;
            }
            let left = &mut self.remaining[u as usize];
            *left = left.saturating_sub(1);
            if *left == 0 {
                self.set(u, Compartment::Infectious);
                self.remaining[u as usize] = self.infectious_days(u, params);
            }
        }

        network
            .remove_nodes(dead.iter().copied())
            .expect("dead agents are valid ids");
        self.day = today;
        outcome
    }

    /// Vaccinates the Susceptible members of `seeds` and removes them from
    /// the network. Doses given to any other compartment are wasted. Returns
    /// the number of agents actually vaccinated.
    pub fn apply_vaccination(
        &mut self,
        network: &mut ContactNetwork,
        seeds: &[AgentId],
    ) -> Result<usize> {
        if let Some(&bad) = seeds.iter().find(|&&v| v as usize >= self.len()) {
            return Err(Error::arg(format!("agent id {bad} outside [0,{})", self.len())));
        }
        let mut protected = Vec::new();
        for &v in seeds {
            if self.compartments[v as usize] == Compartment::Susceptible {
                self.set(v, Compartment::Vaccinated);
                protected.push(v);
            }
        }
        network.remove_nodes(protected.iter().copied())?;
        Ok(protected.len())
    }
}
