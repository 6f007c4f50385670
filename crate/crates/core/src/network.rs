//! Multi-layer contact network.
//!
//! Agents are dense ids `0..n`. Contacts are stored as compressed out-edge
//! rows carrying `(dst, layer, weight)`, one row per agent. Every connected
//! pair carries both directed edges in the same layer; the two weights differ
//! when the endpoints have different per-agent factors.
//!
//! Vaccinated and dead agents are tombstoned in a removal mask rather than
//! compacted out, so ids stay stable for a whole run.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::io::{BufRead, Write};
use std::ops::Range;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::distr::weighted::WeightedIndex;
use rand_distr::{Distribution, LogNormal, Poisson};

use crate::error::{Error, Result};
use crate::rng;

pub type AgentId = u32;

pub const MAX_AGE: u8 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Agent {
    pub id: AgentId,
    pub age: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Layer {
    Household = 0,
    School = 1,
    Work = 2,
    Community = 3,
}

impl Layer {
    pub const ALL: [Layer; 4] = [Layer::Household, Layer::School, Layer::Work, Layer::Community];

    pub fn name(self) -> &'static str {
        match self {
            Layer::Household => "household",
            Layer::School => "school",
            Layer::Work => "work",
            Layer::Community => "community",
        }
    }

    pub fn from_name(s: &str) -> Option<Layer> {
        Layer::ALL.into_iter().find(|l| l.name() == s)
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactEdge {
    pub src: AgentId,
    pub dst: AgentId,
    pub layer: Layer,
    pub weight: f64,
}

/// One stored out-edge together with its position in the edge arrays.
/// The position is stable for the lifetime of the network and keys the
/// counter-based random streams.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeRef {
    pub index: usize,
    pub dst: AgentId,
    pub layer: Layer,
    pub weight: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LayerStats {
    pub directed_edges: usize,
}

/// Parameters of the synthetic population generator.
#[derive(Debug, Clone, PartialEq)]
pub struct PopulationConfig {
    pub n: usize,
    pub household_mean: f64,
    /// Class size for agents aged 5-18; `None` disables the school layer.
    pub school_class_size: Option<usize>,
    /// Mean workplace size for agents aged 19-65; `None` disables the work layer.
    pub workplace_mean: Option<f64>,
    /// Mean community-layer degree; 0 disables the layer.
    pub community_mean_degree: f64,
    /// Per-layer base transmissibility, indexed by [`Layer::index`].
    pub beta: [f64; 4],
    /// Per-layer contact frequency factor in (0, 1].
    pub contact_freq: [f64; 4],
    /// Log-normal sigma of the per-agent relative transmissibility.
    pub trans_sigma: f64,
    /// Log-normal sigma of the per-agent relative susceptibility.
    pub sus_sigma: f64,
    /// Optional 101-bin age weights; uniform over 0..=100 when absent.
    pub age_histogram: Option<Vec<f64>>,
}

impl Default for PopulationConfig {
    fn default() -> Self {
        PopulationConfig {
            n: 2_000,
            household_mean: 3.0,
            school_class_size: Some(20),
            workplace_mean: Some(8.0),
            community_mean_degree: 6.0,
            beta: [0.06, 0.03, 0.03, 0.012],
            contact_freq: [1.0, 0.5, 0.5, 0.5],
            trans_sigma: 0.2,
            sus_sigma: 0.2,
            age_histogram: None,
        }
    }
}

impl PopulationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::config("population.n", "must be at least 1"));
        }
        if self.n > u32::MAX as usize {
            return Err(Error::config("population.n", "exceeds the 32-bit id space"));
        }
        if !self.household_mean.is_finite() || self.household_mean < 1.0 {
            return Err(Error::config("population.household_mean", "must be >= 1"));
        }
        if self.school_class_size == Some(0) {
            return Err(Error::config("population.school_class_size", "must be >= 1"));
        }
        if let Some(m) = self.workplace_mean {
            if !m.is_finite() || m < 1.0 {
                return Err(Error::config("population.workplace_mean", "must be >= 1"));
            }
        }
        if !self.community_mean_degree.is_finite() || self.community_mean_degree < 0.0 {
            return Err(Error::config(
                "population.community_mean_degree",
                "must be a finite value >= 0",
            ));
        }
        for layer in Layer::ALL {
            let b = self.beta[layer.index()];
            if !(0.0..=1.0).contains(&b) {
                return Err(Error::config(
                    format!("population.beta_{}", layer.name()),
                    format!("probability {b} outside [0,1]"),
                ));
            }
            let f = self.contact_freq[layer.index()];
            if !(f > 0.0 && f <= 1.0) {
                return Err(Error::config(
                    format!("population.freq_{}", layer.name()),
                    format!("factor {f} outside (0,1]"),
                ));
            }
        }
        for (key, s) in [
            ("population.trans_sigma", self.trans_sigma),
            ("population.sus_sigma", self.sus_sigma),
        ] {
            if !s.is_finite() || s < 0.0 {
                return Err(Error::config(key, "must be a finite value >= 0"));
            }
        }
        if let Some(h) = &self.age_histogram {
            if h.len() != MAX_AGE as usize + 1 {
                return Err(Error::config(
                    "population.age_histogram",
                    format!("expected {} bins, got {}", MAX_AGE as usize + 1, h.len()),
                ));
            }
            if h.iter().any(|w| !w.is_finite() || *w < 0.0) || h.iter().sum::<f64>() <= 0.0
            {
                return Err(Error::config(
                    "population.age_histogram",
                    "weights must be nonnegative with a positive sum",
                ));
            }
        }
        Ok(())
    }
}

/// Per-contact transmission probability: the product of layer
/// infectiousness, source transmissibility, destination susceptibility and
/// contact frequency, clamped to 1.
pub fn edge_weight(
    beta_layer: f64,
    rel_trans_src: f64,
    rel_sus_dst: f64,
    contact_freq: f64,
) -> Result<f64> {
    let inputs = [beta_layer, rel_trans_src, rel_sus_dst, contact_freq];
    if inputs.iter().any(|x| x.is_nan() || *x < 0.0) {
        return Err(Error::arg(format!(
            "edge weight factors must be nonnegative, got {inputs:?}"
        )));
    }
    Ok((beta_layer * rel_trans_src * rel_sus_dst * contact_freq).min(1.0))
}

#[derive(Debug, Clone)]
pub struct ContactNetwork {
    agents: Vec<Agent>,
    offsets: Vec<usize>,
    targets: Vec<AgentId>,
    layers: Vec<Layer>,
    weights: Vec<f64>,
    removed: Vec<bool>,
    removed_count: usize,
}

impl ContactNetwork {
    /// Builds a network from agents and a directed edge list, enforcing the
    /// structural invariants (dense ids, no self-loops, weights in [0,1],
    /// no duplicate `(src, dst, layer)`, reverse edge present in the same layer).
    pub fn from_edges(agents: Vec<Agent>, mut edges: Vec<ContactEdge>) -> Result<Self> {
        let n = agents.len();
        for (i, a) in agents.iter().enumerate() {
            if a.id as usize != i {
                return Err(Error::arg(format!("agent at position {i} has id {}", a.id)));
            }
            if a.age > MAX_AGE {
                return Err(Error::arg(format!("agent {} has age {}", a.id, a.age)));
            }
        }
        for e in &edges {
            if e.src as usize >= n || e.dst as usize >= n {
                return Err(Error::arg(format!(
                    "edge {}->{} references an agent outside [0,{n})",
                    e.src, e.dst
                )));
            }
            if e.src == e.dst {
                return Err(Error::arg(format!("self-loop on agent {}", e.src)));
            }
            if !(0.0..=1.0).contains(&e.weight) {
                return Err(Error::arg(format!(
                    "edge {}->{} has weight {} outside [0,1]",
                    e.src, e.dst, e.weight
                )));
            }
        }
        edges.sort_by_key(|e| (e.src, e.dst, e.layer));
        for w in edges.windows(2) {
            if (w[0].src, w[0].dst, w[0].layer) == (w[1].src, w[1].dst, w[1].layer) {
                return Err(Error::arg(format!(
                    "duplicate edge {}->{} in layer {}",
                    w[0].src, w[0].dst, w[0].layer
                )));
            }
        }
        let mut offsets = vec![0usize; n + 1];
        for e in &edges {
            offsets[e.src as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let net = ContactNetwork {
            agents,
            offsets,
            targets: edges.iter().map(|e| e.dst).collect(),
            layers: edges.iter().map(|e| e.layer).collect(),
            weights: edges.iter().map(|e| e.weight).collect(),
            removed: vec![false; n],
            removed_count: 0,
        };
        for e in &edges {
            if !net.has_edge(e.dst, e.src, e.layer) {
                return Err(Error::arg(format!(
                    "edge {}->{} in layer {} has no reverse edge",
                    e.src, e.dst, e.layer
                )));
            }
        }
        Ok(net)
    }

    pub fn len(&self) -> usize {
        self.agents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.agents.is_empty()
    }

    pub fn agents(&self) -> &[Agent] {
        &self.agents
    }

    /// Total stored directed edges, including those masked by removal.
    pub fn num_edges(&self) -> usize {
        self.targets.len()
    }

    /// Directed edges between non-removed agents.
    pub fn num_active_edges(&self) -> usize {
        (0..self.len() as AgentId)
            .map(|u| self.out_edges(u).count())
            .sum()
    }

    pub fn is_removed(&self, id: AgentId) -> bool {
        self.removed[id as usize]
    }

    pub fn removed_mask(&self) -> &[bool] {
        &self.removed
    }

    pub fn removed_count(&self) -> usize {
        self.removed_count
    }

    /// Stored edge positions of `u`'s out-row, ignoring the removal mask.
    pub fn edge_range(&self, u: AgentId) -> Range<usize> {
        self.offsets[u as usize]..self.offsets[u as usize + 1]
    }

    #[inline]
    pub fn edge_at(&self, index: usize) -> EdgeRef {
        EdgeRef {
            index,
            dst: self.targets[index],
            layer: self.layers[index],
            weight: self.weights[index],
        }
    }

    #[inline]
    pub fn edge_target(&self, index: usize) -> AgentId {
        self.targets[index]
    }

    #[inline]
    pub fn edge_weight_at(&self, index: usize) -> f64 {
        self.weights[index]
    }

    /// Out-edges of `u` that avoid removed agents. Empty when `u` is removed.
    pub fn out_edges(&self, u: AgentId) -> impl Iterator<Item = EdgeRef> + '_ {
        let range = if self.removed[u as usize] {
            0..0
        } else {
            self.edge_range(u)
        };
        range
            .map(move |i| self.edge_at(i))
            .filter(move |e| !self.removed[e.dst as usize])
    }

    /// Distinct non-removed agents adjacent to `u` in any layer.
    pub fn neighbors(&self, u: AgentId) -> Vec<AgentId> {
        let mut out: Vec<AgentId> = self.out_edges(u).map(|e| e.dst).collect();
        out.dedup();
        out
    }

    pub fn has_edge(&self, src: AgentId, dst: AgentId, layer: Layer) -> bool {
        let range = self.edge_range(src);
        let row = &self.targets[range.clone()];
        let start = row.partition_point(|&t| t < dst);
        row[start..]
            .iter()
            .zip(&self.layers[range.start + start..range.end])
            .take_while(|(t, _)| **t == dst)
            .any(|(_, l)| *l == layer)
    }

    /// All active directed edges in `(src, dst, layer)` order.
    pub fn edges(&self) -> impl Iterator<Item = ContactEdge> + '_ {
        (0..self.len() as AgentId).flat_map(move |u| {
            self.out_edges(u).map(move |e| ContactEdge {
                src: u,
                dst: e.dst,
                layer: e.layer,
                weight: e.weight,
            })
        })
    }

    pub fn layer_stats(&self) -> [LayerStats; 4] {
        let mut stats = [LayerStats::default(); 4];
        for e in self.edges() {
            stats[e.layer.index()].directed_edges += 1;
        }
        stats
    }

    /// Tombstones `nodes`. Idempotent; ids out of range leave the network
    /// untouched and return an error.
    pub fn remove_nodes<I>(&mut self, nodes: I) -> Result<()>
    where
        I: IntoIterator<Item = AgentId>,
        I::IntoIter: Clone,
    {
        let iter = nodes.into_iter();
        if let Some(bad) = iter.clone().find(|&v| v as usize >= self.len()) {
            return Err(Error::arg(format!(
                "agent id {bad} outside [0,{})",
                self.len()
            )));
        }
        for v in iter {
            let slot = &mut self.removed[v as usize];
            if !*slot {
                *slot = true;
                self.removed_count += 1;
            }
        }
        Ok(())
    }

    /// In-degree of every agent counting only edges between non-removed
    /// agents. Removed agents report 0.
    pub fn in_degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.len()];
        for u in 0..self.len() as AgentId {
            for e in self.out_edges(u) {
                deg[e.dst as usize] += 1;
            }
        }
        deg
    }

    /// Histogram of in-degree over non-removed agents.
    pub fn degree_distribution(&self) -> BTreeMap<u32, usize> {
        let deg = self.in_degrees();
        let mut hist = BTreeMap::new();
        for (v, d) in deg.into_iter().enumerate() {
            if !self.removed[v] {
                *hist.entry(d).or_insert(0) += 1;
            }
        }
        hist
    }
}

fn draw_age<R: Rng>(rng: &mut R, hist: Option<&WeightedIndex<f64>>) -> u8 {
    match hist {
        Some(w) => w.sample(rng) as u8,
        None => rng.random_range(0..=MAX_AGE),
    }
}

/// Group sizes `1 + Poisson(mean - 1)` until `total` members are placed; the
/// last group is truncated to fit.
fn group_sizes<R: Rng>(rng: &mut R, total: usize, mean: f64) -> Vec<usize> {
    let extra = (mean - 1.0).max(0.0);
    let poisson = (extra > 0.0).then(|| Poisson::new(extra).expect("positive rate"));
    let mut sizes = Vec::new();
    let mut left = total;
    while left > 0 {
        let draw = poisson.as_ref().map_or(0.0, |p| p.sample(rng));
        let s = (1 + draw as usize).min(left);
        sizes.push(s);
        left -= s;
    }
    sizes
}

fn push_clique(pairs: &mut Vec<(AgentId, AgentId, Layer)>, members: &[AgentId], layer: Layer) {
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            pairs.push((a, b, layer));
        }
    }
}

/// Household, school and work cliques plus uniform random community contacts.
/// Deterministic in `(config, seed)`.
pub fn generate_synthetic_population(config: &PopulationConfig, seed: u64) -> Result<ContactNetwork> {
    config.validate()?;
    let n = config.n;
    let mut rng = rng::stream(seed, &[rng::tag::NETWORK]);

    let age_index = match &config.age_histogram {
        Some(h) => Some(
            WeightedIndex::new(h.iter().copied())
                .map_err(|e| Error::config("population.age_histogram", e.to_string()))?,
        ),
        None => None,
    };
    let agents: Vec<Agent> = (0..n)
        .map(|i| Agent {
            id: i as AgentId,
            age: draw_age(&mut rng, age_index.as_ref()),
        })
        .collect();

    let lognormal = |sigma: f64| LogNormal::new(-sigma * sigma / 2.0, sigma).expect("finite sigma");
    let trans_dist = lognormal(config.trans_sigma);
    let sus_dist = lognormal(config.sus_sigma);
    let rel_trans: Vec<f64> = (0..n).map(|_| trans_dist.sample(&mut rng)).collect();
    let rel_sus: Vec<f64> = (0..n).map(|_| sus_dist.sample(&mut rng)).collect();

    // Undirected pairs (a < b); expanded to both directions below.
    let mut pairs: Vec<(AgentId, AgentId, Layer)> = Vec::new();

    let mut start = 0usize;
    for size in group_sizes(&mut rng, n, config.household_mean) {
        let members: Vec<AgentId> = (start..start + size).map(|i| i as AgentId).collect();
        push_clique(&mut pairs, &members, Layer::Household);
        start += size;
    }

    if let Some(class) = config.school_class_size {
        let mut pupils: Vec<AgentId> = agents
            .iter()
            .filter(|a| (5..=18).contains(&a.age))
            .map(|a| a.id)
            .collect();
        pupils.shuffle(&mut rng);
        for chunk in pupils.chunks(class) {
            let mut members = chunk.to_vec();
            members.sort_unstable();
            push_clique(&mut pairs, &members, Layer::School);
        }
    }

    if let Some(mean) = config.workplace_mean {
        let mut workers: Vec<AgentId> = agents
            .iter()
            .filter(|a| (19..=65).contains(&a.age))
            .map(|a| a.id)
            .collect();
        workers.shuffle(&mut rng);
        let mut at = 0usize;
        for size in group_sizes(&mut rng, workers.len(), mean) {
            let mut members = workers[at..at + size].to_vec();
            members.sort_unstable();
            push_clique(&mut pairs, &members, Layer::Work);
            at += size;
        }
    }

    if config.community_mean_degree > 0.0 && n >= 2 {
        let max_pairs = n as u128 * (n as u128 - 1) / 2;
        let wanted = ((n as f64 * config.community_mean_degree / 2.0).round() as u128).min(max_pairs);
        // Rejection sampling degrades near saturation; dense targets fall back
        // to a full enumeration and shuffle.
        if wanted * 2 > max_pairs {
            let mut all: Vec<(AgentId, AgentId)> = (0..n as AgentId)
                .flat_map(|a| (a + 1..n as AgentId).map(move |b| (a, b)))
                .collect();
            all.shuffle(&mut rng);
            all.truncate(wanted as usize);
            pairs.extend(all.into_iter().map(|(a, b)| (a, b, Layer::Community)));
        } else {
            let mut seen: HashSet<(AgentId, AgentId)> = HashSet::with_capacity(wanted as usize);
            let mut picked = Vec::with_capacity(wanted as usize);
            while (picked.len() as u128) < wanted {
                let a = rng.random_range(0..n as AgentId);
                let b = rng.random_range(0..n as AgentId);
                if a == b {
                    continue;
                }
                let key = (a.min(b), a.max(b));
                if seen.insert(key) {
                    picked.push(key);
                }
            }
            pairs.extend(picked.into_iter().map(|(a, b)| (a, b, Layer::Community)));
        }
    }

    let mut edges = Vec::with_capacity(pairs.len() * 2);
    for (a, b, layer) in pairs {
        let beta = config.beta[layer.index()];
        let freq = config.contact_freq[layer.index()];
        for (src, dst) in [(a, b), (b, a)] {
            edges.push(ContactEdge {
                src,
                dst,
                layer,
                weight: edge_weight(beta, rel_trans[src as usize], rel_sus[dst as usize], freq)?,
            });
        }
    }
    ContactNetwork::from_edges(agents, edges)
}

/// Decimal rendering that round-trips exactly and shows at least six
/// decimal places.
pub fn format_weight(w: f64) -> String {
    let mut s = format!("{w}");
    if !s.contains('.') {
        s.push('.');
    }
    let decimals = s.len() - s.find('.').unwrap_or(s.len()) - 1;
    s.extend(std::iter::repeat_n('0', 6usize.saturating_sub(decimals)));
    s
}

/// Writes `# nodes=<n>` followed by one `src dst layer weight` line per edge.
pub fn write_edge_records<W, I>(mut out: W, n: usize, edges: I) -> std::io::Result<()>
where
    W: Write,
    I: IntoIterator<Item = ContactEdge>,
{
    writeln!(out, "# nodes={n}")?;
    for e in edges {
        writeln!(out, "{} {} {} {}", e.src, e.dst, e.layer, format_weight(e.weight))?;
    }
    out.flush()
}

pub fn write_ages<W: Write>(mut out: W, agents: &[Agent]) -> std::io::Result<()> {
    for a in agents {
        writeln!(out, "{} {}", a.id, a.age)?;
    }
    out.flush()
}

pub fn write_degree_csv<W: Write>(mut out: W, hist: &BTreeMap<u32, usize>) -> std::io::Result<()> {
    writeln!(out, "degree,count")?;
    for (d, c) in hist {
        writeln!(out, "{d},{c}")?;
    }
    out.flush()
}

/// Companion ages file path for an edge-list path.
pub fn ages_path(edge_list: &Path) -> std::path::PathBuf {
    let mut s = edge_list.as_os_str().to_owned();
    s.push(".ages");
    s.into()
}

impl ContactNetwork {
    /// Exports the active network as an edge list plus the companion ages file.
    pub fn save(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        write_edge_records(std::io::BufWriter::new(file), self.len(), self.edges())
            .map_err(|e| Error::io(path, e))?;
        let ages = ages_path(path);
        let file = std::fs::File::create(&ages).map_err(|e| Error::io(&ages, e))?;
        write_ages(std::io::BufWriter::new(file), &self.agents).map_err(|e| Error::io(&ages, e))
    }

    /// Loads an edge list. Ages come from the companion file when present and
    /// default to 0 otherwise.
    pub fn load(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        let reader = std::io::BufReader::new(file);
        let mut n: Option<usize> = None;
        let mut edges = Vec::new();
        let parse_err = |line: usize, reason: String| Error::Parse {
            path: path.to_path_buf(),
            line,
            reason,
        };
        for (i, line) in reader.lines().enumerate() {
            let line = line.map_err(|e| Error::io(path, e))?;
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            if let Some(rest) = t.strip_prefix('#') {
                if let Some(v) = rest.trim().strip_prefix("nodes=") {
                    n = Some(v.trim().parse().map_err(|_| parse_err(i + 1, format!("bad node count `{v}`")))?);
                }
                continue;
            }
            let fields: Vec<&str> = t.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(parse_err(i + 1, "expected `src dst layer weight`".into()));
            }
            let id = |s: &str| s.parse::<AgentId>().map_err(|_| parse_err(i + 1, format!("bad agent id `{s}`")));
            edges.push(ContactEdge {
                src: id(fields[0])?,
                dst: id(fields[1])?,
                layer: Layer::from_name(fields[2])
                    .ok_or_else(|| parse_err(i + 1, format!("unknown layer `{}`", fields[2])))?,
                weight: fields[3]
                    .parse()
                    .map_err(|_| parse_err(i + 1, format!("bad weight `{}`", fields[3])))?,
            });
        }
        let n = n.ok_or_else(|| parse_err(1, "missing `# nodes=<n>` header".into()))?;
        let mut agents: Vec<Agent> = (0..n).map(|i| Agent { id: i as AgentId, age: 0 }).collect();
        let ages = ages_path(path);
        if ages.exists() {
            let file = std::fs::File::open(&ages).map_err(|e| Error::io(&ages, e))?;
            for (i, line) in std::io::BufReader::new(file).lines().enumerate() {
                let line = line.map_err(|e| Error::io(&ages, e))?;
                let t = line.trim();
                if t.is_empty() || t.starts_with('#') {
                    continue;
                }
                let bad = || Error::Parse {
                    path: ages.clone(),
                    line: i + 1,
                    reason: format!("expected `id age`, got `{t}`"),
                };
                let mut it = t.split_whitespace();
                let id: usize = it.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
                let age: u8 = it.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
                if id >= n || age > MAX_AGE {
                    return Err(bad());
                }
                agents[id].age = age;
            }
        }
        ContactNetwork::from_edges(agents, edges)
    }
}
