//! Live-edge realizations of the spreading process and reachability on them.
//!
//! Sample `i` keeps edge `e` when a coin keyed by `(master_seed, i, e)` lands
//! below the edge's retention probability. Because the coin is a pure
//! function of that key, a sample can be materialized in full or only over
//! the region reachable from a source set, and both agree on that region.

use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::network::{AgentId, ContactEdge, ContactNetwork};
use crate::rng::{self, tag};

/// How a per-contact weight becomes a per-sample retention probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Retention {
    /// Keep the edge with probability equal to its weight.
    PerContact,
    /// Keep the edge with the probability that at least one daily trial
    /// succeeds over a geometric infectious stay of the given mean. With
    /// daily exit probability `q = 1/mean` this is `w / (w + q - q*w)`.
    InfectiousPeriod { mean_days: f64 },
}

impl Retention {
    #[inline]
    pub fn probability(self, w: f64) -> f64 {
        match self {
            Retention::PerContact => w,
            Retention::InfectiousPeriod { mean_days } => {
                let q = (1.0 / mean_days).clamp(0.0, 1.0);
                if w <= 0.0 {
                    0.0
                } else {
                    (w / (w + q - q * w)).min(1.0)
                }
            }
        }
    }
}

/// A network as seen by the sampler: removed agents are always skipped and
/// `blocked` can mask further agents (e.g. recovered ones).
#[derive(Debug, Clone, Copy)]
pub struct SamplingView<'a> {
    pub network: &'a ContactNetwork,
    pub blocked: Option<&'a [bool]>,
    pub retention: Retention,
}

impl<'a> SamplingView<'a> {
    pub fn new(network: &'a ContactNetwork) -> Self {
        SamplingView {
            network,
            blocked: None,
            retention: Retention::PerContact,
        }
    }

    pub fn with_blocked(mut self, blocked: &'a [bool]) -> Self {
        self.blocked = Some(blocked);
        self
    }

    pub fn with_retention(mut self, retention: Retention) -> Self {
        self.retention = retention;
        self
    }

    #[inline]
    fn is_open(&self, v: AgentId) -> bool {
        !self.network.is_removed(v) && self.blocked.is_none_or(|b| !b[v as usize])
    }

    /// Retained out-edges of `u` in sample `index`, as `(dst, edge position)`.
    fn live_out<'s>(
        &'s self,
        u: AgentId,
        index: usize,
        master_seed: u64,
    ) -> impl Iterator<Item = (AgentId, u32)> + 's {
        let stream = rng::derive(master_seed, &[tag::SAMPLE, index as u64]);
        let open = self.is_open(u);
        self.network
            .edge_range(u)
            .filter(move |_| open)
            .filter_map(move |i| {
                let dst = self.network.edge_target(i);
                if !self.is_open(dst) {
                    return None;
                }
                let p = self.retention.probability(self.network.edge_weight_at(i));
                (p > 0.0 && rng::coin(rng::derive2(stream, i as u64, 0), p)).then_some((dst, i as u32))
            })
    }
}

impl<'a> From<&'a ContactNetwork> for SamplingView<'a> {
    fn from(network: &'a ContactNetwork) -> Self {
        SamplingView::new(network)
    }
}

/// Retained out-edges of one realization, in compressed rows over the full
/// id space. Rows of agents outside the materialized region are empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiveEdgeSample {
    index: usize,
    offsets: Vec<u32>,
    targets: Vec<AgentId>,
    edge_ids: Vec<u32>,
}

impl LiveEdgeSample {
    fn from_rows(index: usize, n: usize, rows: Vec<(AgentId, Vec<(AgentId, u32)>)>) -> Self {
        let mut offsets = vec![0u32; n + 1];
        for (u, row) in &rows {
            offsets[*u as usize + 1] = row.len() as u32;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let total = offsets[n] as usize;
        let mut targets = vec![0; total];
        let mut edge_ids = vec![0; total];
        for (u, row) in rows {
            let start = offsets[u as usize] as usize;
            for (k, (dst, id)) in row.into_iter().enumerate() {
                targets[start + k] = dst;
                edge_ids[start + k] = id;
            }
        }
        LiveEdgeSample {
            index,
            offsets,
            targets,
            edge_ids,
        }
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn num_nodes(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn num_edges(&self) -> usize {
        self.targets.len()
    }

    #[inline]
    pub fn out(&self, u: AgentId) -> &[AgentId] {
        &self.targets[self.offsets[u as usize] as usize..self.offsets[u as usize + 1] as usize]
    }

    /// `(src, dst)` of every retained edge.
    pub fn edges(&self) -> impl Iterator<Item = (AgentId, AgentId)> + '_ {
        (0..self.num_nodes() as AgentId).flat_map(move |u| self.out(u).iter().map(move |&v| (u, v)))
    }

    /// Source-network positions of the retained edges, row by row.
    pub fn edge_positions(&self) -> &[u32] {
        &self.edge_ids
    }

    /// Dumps the sample in the network edge-list format.
    pub fn write_edge_list<W: Write>(&self, out: W, network: &ContactNetwork) -> std::io::Result<()> {
        let records = (0..self.num_nodes() as AgentId).flat_map(move |u| {
            let range = self.offsets[u as usize] as usize..self.offsets[u as usize + 1] as usize;
            range.map(move |k| {
                let e = network.edge_at(self.edge_ids[k] as usize);
                ContactEdge {
                    src: u,
                    dst: e.dst,
                    layer: e.layer,
                    weight: e.weight,
                }
            })
        });
        crate::network::write_edge_records(out, self.num_nodes(), records)
    }
}

/// Full realization `index` of `view`.
pub fn sample_subgraph(view: SamplingView<'_>, index: usize, master_seed: u64) -> LiveEdgeSample {
    let n = view.network.len();
    let rows = (0..n as AgentId)
        .map(|u| (u, view.live_out(u, index, master_seed).collect::<Vec<_>>()))
        .filter(|(_, row)| !row.is_empty())
        .collect();
    LiveEdgeSample::from_rows(index, n, rows)
}

/// Realization `index` materialized only on the region reachable from
/// `sources`. Agrees with [`sample_subgraph`] on every row it contains.
pub fn sample_reachable(
    view: SamplingView<'_>,
    index: usize,
    master_seed: u64,
    sources: &[AgentId],
) -> LiveEdgeSample {
    let n = view.network.len();
    let mut seen = vec![false; n];
    let mut queue: Vec<AgentId> = Vec::new();
    for &b in sources {
        if (b as usize) < n && !seen[b as usize] && view.is_open(b) {
            seen[b as usize] = true;
            queue.push(b);
        }
    }
    let mut rows = Vec::new();
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        let row: Vec<(AgentId, u32)> = view.live_out(u, index, master_seed).collect();
        for &(v, _) in &row {
            if !seen[v as usize] {
                seen[v as usize] = true;
                queue.push(v);
            }
        }
        if !row.is_empty() {
            rows.push((u, row));
        }
    }
    LiveEdgeSample::from_rows(index, n, rows)
}

/// `N` realizations sharing a master seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSet {
    samples: Vec<LiveEdgeSample>,
    master_seed: u64,
}

impl SampleSet {
    pub fn from_samples(samples: Vec<LiveEdgeSample>, master_seed: u64) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::arg("a sample set needs at least one sample"));
        }
        let n = samples[0].num_nodes();
        if samples.iter().any(|s| s.num_nodes() != n) {
            return Err(Error::arg("samples disagree on the node count"));
        }
        Ok(SampleSet {
            samples,
            master_seed,
        })
    }

    /// Builds a set directly from per-sample `(src, dst)` edge lists.
    pub fn from_edge_lists(n: usize, lists: &[Vec<(AgentId, AgentId)>]) -> Result<Self> {
        let samples = lists
            .iter()
            .enumerate()
            .map(|(i, edges)| {
                if let Some(&(a, b)) = edges.iter().find(|(a, b)| *a as usize >= n || *b as usize >= n) {
                    return Err(Error::arg(format!("edge {a}->{b} outside [0,{n})")));
                }
                let mut rows: Vec<Vec<(AgentId, u32)>> = vec![Vec::new(); n];
                for (k, &(a, b)) in edges.iter().enumerate() {
                    rows[a as usize].push((b, k as u32));
                }
                let rows = rows
                    .into_iter()
                    .enumerate()
                    .filter(|(_, r)| !r.is_empty())
                    .map(|(u, r)| (u as AgentId, r))
                    .collect();
                Ok(LiveEdgeSample::from_rows(i, n, rows))
            })
            .collect::<Result<Vec<_>>>()?;
        SampleSet::from_samples(samples, 0)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn num_nodes(&self) -> usize {
        self.samples[0].num_nodes()
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn samples(&self) -> &[LiveEdgeSample] {
        &self.samples
    }
}

/// Full realizations `0..n_samples`, built in parallel on the current rayon
/// pool. The result does not depend on the pool size.
pub fn build_sample_set(view: SamplingView<'_>, n_samples: usize, master_seed: u64) -> Result<SampleSet> {
    if n_samples == 0 {
        return Err(Error::arg("sampling effort N must be at least 1"));
    }
    let samples = (0..n_samples)
        .into_par_iter()
        .map(|i| sample_subgraph(view, i, master_seed))
        .collect();
    SampleSet::from_samples(samples, master_seed)
}

/// Like [`build_sample_set`] but each sample covers only the region
/// reachable from `sources`.
pub fn build_reachable_sample_set(
    view: SamplingView<'_>,
    n_samples: usize,
    master_seed: u64,
    sources: &[AgentId],
) -> Result<SampleSet> {
    if n_samples == 0 {
        return Err(Error::arg("sampling effort N must be at least 1"));
    }
    let samples = (0..n_samples)
        .into_par_iter()
        .map(|i| sample_reachable(view, i, master_seed, sources))
        .collect();
    SampleSet::from_samples(samples, master_seed)
}

/// Reusable BFS buffers; epoch stamps avoid clearing between queries.
#[derive(Debug, Clone, Default)]
pub struct ReachScratch {
    visited: Vec<u32>,
    blocked: Vec<u32>,
    epoch: u32,
    queue: Vec<AgentId>,
}

impl ReachScratch {
    pub fn new(n: usize) -> Self {
        ReachScratch {
            visited: vec![0; n],
            blocked: vec![0; n],
            epoch: 0,
            queue: Vec::new(),
        }
    }

    fn next_epoch(&mut self, n: usize) {
        if self.visited.len() < n {
            self.visited.resize(n, 0);
            self.blocked.resize(n, 0);
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.visited.iter_mut().for_each(|x| *x = 0);
            self.blocked.iter_mut().for_each(|x| *x = 0);
            self.epoch = 1;
        }
    }

    /// Size of the union of nodes reachable from `sources` after deleting
    /// `deleted`. A source inside `deleted` contributes nothing. Ids must be
    /// in range.
    pub fn reach_count(&mut self, sample: &LiveEdgeSample, sources: &[AgentId], deleted: &[AgentId]) -> usize {
        self.next_epoch(sample.num_nodes());
        let e = self.epoch;
        for &s in deleted {
            self.blocked[s as usize] = e;
        }
        self.queue.clear();
        for &b in sources {
            if self.blocked[b as usize] != e && self.visited[b as usize] != e {
                self.visited[b as usize] = e;
                self.queue.push(b);
            }
        }
        let mut head = 0;
        while head < self.queue.len() {
            let u = self.queue[head];
            head += 1;
            for &v in sample.out(u) {
                if self.visited[v as usize] != e && self.blocked[v as usize] != e {
                    self.visited[v as usize] = e;
                    self.queue.push(v);
                }
            }
        }
        self.queue.len()
    }
}

pub(crate) fn check_ids(n: usize, ids: &[AgentId], what: &str) -> Result<()> {
    match ids.iter().find(|&&v| v as usize >= n) {
        Some(bad) => Err(Error::arg(format!("{what} contains id {bad} outside [0,{n})"))),
        None => Ok(()),
    }
}

/// Number of agents infected on `sample` from `infected` when `deleted` is
/// removed first.
pub fn sigma_on_sample(sample: &LiveEdgeSample, infected: &[AgentId], deleted: &[AgentId]) -> Result<usize> {
    check_ids(sample.num_nodes(), infected, "infected set")?;
    check_ids(sample.num_nodes(), deleted, "intervention set")?;
    Ok(ReachScratch::new(sample.num_nodes()).reach_count(sample, infected, deleted))
}

/// `sigma_on_sample` for every sample, in sample order.
pub fn sigma_per_sample(samples: &SampleSet, infected: &[AgentId], deleted: &[AgentId]) -> Result<Vec<usize>> {
    check_ids(samples.num_nodes(), infected, "infected set")?;
    check_ids(samples.num_nodes(), deleted, "intervention set")?;
    let n = samples.num_nodes();
    Ok(samples
        .samples()
        .par_iter()
        .map_init(|| ReachScratch::new(n), |scratch, s| scratch.reach_count(s, infected, deleted))
        .collect())
}

/// Mean of `sigma_on_sample` over the set.
pub fn sigma_estimate(samples: &SampleSet, infected: &[AgentId], deleted: &[AgentId]) -> Result<f64> {
    let total: u64 = sigma_per_sample(samples, infected, deleted)?
        .into_iter()
        .map(|x| x as u64)
        .sum();
    Ok(total as f64 / samples.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::tests::undirected;

    fn directed_path(n: usize) -> SampleSet {
        let edges: Vec<_> = (0..n as AgentId - 1).map(|i| (i, i + 1)).collect();
        SampleSet::from_edge_lists(n, &[edges]).unwrap()
    }

    #[test]
    fn all_or_nothing_weights() {
        let ones = undirected(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], 1.0);
        let s = sample_subgraph(SamplingView::new(&ones), 3, 99);
        assert_eq!(s.num_edges(), ones.num_edges());
        let zeros = undirected(4, &[(0, 1), (1, 2)], 0.0);
        assert_eq!(sample_subgraph(SamplingView::new(&zeros), 3, 99).num_edges(), 0);
    }

    #[test]
    fn sample_set_basics() {
        let net = undirected(30, &(0..29).map(|i| (i, i + 1)).collect::<Vec<_>>(), 0.5);
        let view = SamplingView::new(&net);
        assert!(build_sample_set(view, 0, 1).is_err());
        let one = build_sample_set(view, 1, 7).unwrap();
        assert_eq!(one.samples()[0], sample_subgraph(view, 0, 7));
        assert_eq!(build_sample_set(view, 5, 7).unwrap(), build_sample_set(view, 5, 7).unwrap());
    }

    #[test]
    fn reachable_region_agrees_with_full_sample() {
        let pairs: Vec<_> = (0..59).map(|i| (i, i + 1)).chain((0..50).map(|i| (i, i + 10))).collect();
        let net = undirected(60, &pairs, 0.4);
        let view = SamplingView::new(&net);
        for i in 0..10 {
            let full = sample_subgraph(view, i, 5);
            let part = sample_reachable(view, i, 5, &[3, 40]);
            for u in 0..60 {
                if !part.out(u).is_empty() {
                    assert_eq!(part.out(u), full.out(u));
                }
            }
            assert_eq!(
                sigma_on_sample(&part, &[3, 40], &[]).unwrap(),
                sigma_on_sample(&full, &[3, 40], &[]).unwrap()
            );
        }
    }

    #[test]
    fn removed_and_blocked_nodes_are_skipped() {
        let mut net = undirected(3, &[(0, 1), (1, 2)], 1.0);
        let blocked = [false, false, true];
        let s = sample_subgraph(SamplingView::new(&net).with_blocked(&blocked), 0, 0);
        assert_eq!(s.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 0)]);
        net.remove_nodes([1]).unwrap();
        assert_eq!(sample_subgraph(SamplingView::new(&net), 0, 0).num_edges(), 0);
    }

    #[test]
    fn sigma_examples() {
        let path = directed_path(5);
        let s = &path.samples()[0];
        assert_eq!(sigma_on_sample(s, &[], &[]).unwrap(), 0);
        assert_eq!(sigma_on_sample(s, &[0], &[]).unwrap(), 5);
        assert_eq!(sigma_on_sample(s, &[0], &[1]).unwrap(), 1);
        assert_eq!(sigma_on_sample(s, &[0], &[0]).unwrap(), 0);
        assert!(sigma_on_sample(s, &[5], &[]).is_err());
        assert!(sigma_on_sample(s, &[0], &[9]).is_err());
    }

    #[test]
    fn retention_over_infectious_period() {
        let r = Retention::InfectiousPeriod { mean_days: 7.0 };
        assert_eq!(r.probability(0.0), 0.0);
        assert_eq!(r.probability(1.0), 1.0);
        // Direct sum of P(D = d) * (1 - (1-w)^d) for geometric D.
        let (w, q): (f64, f64) = (0.1, 1.0 / 7.0);
        let direct: f64 = (1..2000)
            .map(|d| q * (1.0 - q).powi(d - 1) * (1.0 - (1.0 - w).powi(d)))
            .sum();
        assert!((r.probability(w) - direct).abs() < 1e-12);
        assert_eq!(Retention::PerContact.probability(0.3), 0.3);
    }

    #[test]
    fn debug_dump_uses_edge_list_format() {
        let net = undirected(3, &[(0, 1), (1, 2)], 1.0);
        let s = sample_subgraph(SamplingView::new(&net), 0, 0);
        let mut buf = Vec::new();
        s.write_edge_list(&mut buf, &net).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("# nodes=3\n0 1 community 1.000000\n"));
        assert_eq!(text.lines().count(), 5);
    }
}
