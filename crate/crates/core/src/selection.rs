//! Seed selection strategies.
//!
//! `preempt` maximizes the expected number of lives saved,
//! `λ(B,S) = σ(B,∅) − σ(B,S)`, with lazy greedy over a fresh sample set.
//!
//! Marginal gains come from dominator trees: on one sample, deleting `v`
//! spares exactly the agents whose every path from the infected set passes
//! through `v`, which is the size of `v`'s subtree in the dominator tree
//! rooted at a virtual source feeding the infected set. One dominator pass
//! therefore prices every candidate on that sample at once. After a pick,
//! only samples on which the pick was reachable need recomputing.
//! [`reference`] keeps the plain BFS route for cross-checking.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::Rng;
use rayon::prelude::*;

use crate::disease::{Compartment, SimState};
use crate::error::{Error, Result};
use crate::network::{AgentId, ContactNetwork};
use crate::rng::{self, tag};
use crate::sampler::{
    build_reachable_sample_set, check_ids, sigma_per_sample, LiveEdgeSample, Retention, SampleSet,
    SamplingView,
};

pub const DEFAULT_SAMPLES: usize = 128;
pub const DEFAULT_BRUTE_FORCE_CAP: u128 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    None,
    Random,
    Degree,
    Preempt,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [Strategy::None, Strategy::Random, Strategy::Degree, Strategy::Preempt];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::None => "none",
            Strategy::Random => "random",
            Strategy::Degree => "degree",
            Strategy::Preempt => "preempt",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Strategy::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                Error::config(
                    "experiment.strategy",
                    format!("unknown strategy `{s}` (expected none, random, degree or preempt)"),
                )
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PreemptParams {
    pub samples: usize,
    pub retention: Retention,
}

impl Default for PreemptParams {
    fn default() -> Self {
        PreemptParams {
            samples: DEFAULT_SAMPLES,
            retention: Retention::InfectiousPeriod { mean_days: 7.0 },
        }
    }
}

/// Everything a strategy may look at when choosing one round's seeds.
#[derive(Debug, Clone)]
pub struct SelectionContext<'a> {
    pub network: &'a ContactNetwork,
    /// Agents that cannot catch or pass on infection besides removed ones.
    pub blocked: Vec<bool>,
    /// Eligible agents, ascending.
    pub candidates: Vec<AgentId>,
    /// Current infection sources, ascending.
    pub infected: Vec<AgentId>,
    pub budget: usize,
    pub preempt: PreemptParams,
    pub seed: u64,
}

impl<'a> SelectionContext<'a> {
    pub fn new(
        network: &'a ContactNetwork,
        mut infected: Vec<AgentId>,
        mut candidates: Vec<AgentId>,
        budget: usize,
    ) -> Result<Self> {
        check_ids(network.len(), &infected, "infected set")?;
        check_ids(network.len(), &candidates, "candidate set")?;
        infected.sort_unstable();
        infected.dedup();
        candidates.sort_unstable();
        candidates.dedup();
        if let Some(v) = candidates.iter().find(|&&v| network.is_removed(v)) {
            return Err(Error::arg(format!("candidate {v} is removed from the network")));
        }
        if let Some(v) = candidates.iter().find(|v| infected.binary_search(v).is_ok()) {
            return Err(Error::arg(format!("candidate {v} is infected")));
        }
        Ok(SelectionContext {
            network,
            blocked: vec![false; network.len()],
            candidates,
            infected,
            budget,
            preempt: PreemptParams::default(),
            seed: 0,
        })
    }

    /// Context for the live simulation: sources are the Exposed and
    /// Infectious agents, candidates are the Susceptible agents still in the
    /// network, and Recovered agents are impassable.
    pub fn from_state(
        state: &SimState,
        network: &'a ContactNetwork,
        budget: usize,
        preempt: PreemptParams,
        seed: u64,
    ) -> Self {
        let candidates = state
            .ids_where(|c| c == Compartment::Susceptible)
            .into_iter()
            .filter(|&v| !network.is_removed(v))
            .collect();
        SelectionContext {
            network,
            blocked: state
                .compartments()
                .iter()
                .map(|&c| c == Compartment::Recovered)
                .collect(),
            candidates,
            infected: state.infected(),
            budget,
            preempt,
            seed,
        }
    }

    pub fn with_preempt(mut self, preempt: PreemptParams) -> Self {
        self.preempt = preempt;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_blocked(mut self, blocked: Vec<bool>) -> Self {
        self.blocked = blocked;
        self
    }

    fn target_size(&self) -> usize {
        self.budget.min(self.candidates.len())
    }
}

/// Chosen agents in selection order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SeedSet {
    pub seeds: Vec<AgentId>,
    /// Estimated lives saved, for strategies that compute it.
    pub objective: Option<f64>,
}

impl Strategy {
    pub fn select(self, ctx: &SelectionContext<'_>) -> Result<SeedSet> {
        match self {
            Strategy::None => Ok(SeedSet::default()),
            Strategy::Random => {
                let mut rng = rng::stream(ctx.seed, &[tag::SELECTION]);
                Ok(select_random(ctx, &mut rng))
            }
            Strategy::Degree => Ok(select_degree(ctx)),
            Strategy::Preempt => select_preempt(ctx),
        }
    }
}

/// Uniform sample without replacement from the candidates.
pub fn select_random<R: Rng + ?Sized>(ctx: &SelectionContext<'_>, rng: &mut R) -> SeedSet {
    let k = ctx.target_size();
    if k == 0 {
        return SeedSet::default();
    }
    let seeds = index::sample(rng, ctx.candidates.len(), k)
        .into_iter()
        .map(|i| ctx.candidates[i])
        .collect();
    SeedSet { seeds, objective: None }
}

/// Highest current in-degree first, ties by ascending id.
pub fn select_degree(ctx: &SelectionContext<'_>) -> SeedSet {
    let deg = ctx.network.in_degrees();
    let mut ranked = ctx.candidates.clone();
    ranked.sort_by_key(|&v| (Reverse(deg[v as usize]), v));
    ranked.truncate(ctx.target_size());
    SeedSet {
        seeds: ranked,
        objective: None,
    }
}

/// Per-sample `σ(B,∅) − σ(B,S)`.
pub fn lives_saved_per_sample(samples: &SampleSet, infected: &[AgentId], seeds: &[AgentId]) -> Result<Vec<u64>> {
    let base = sigma_per_sample(samples, infected, &[])?;
    let with = sigma_per_sample(samples, infected, seeds)?;
    Ok(base.into_iter().zip(with).map(|(a, b)| (a - b) as u64).collect())
}

/// Mean lives saved over the sample set.
pub fn lives_saved(samples: &SampleSet, infected: &[AgentId], seeds: &[AgentId]) -> Result<f64> {
    let total: u64 = lives_saved_per_sample(samples, infected, seeds)?.into_iter().sum();
    Ok(total as f64 / samples.len() as f64)
}

/// Exact marginal-gain provider for the greedy drivers. Gains are integer
/// totals over all samples.
pub trait GainOracle {
    fn gain(&mut self, v: AgentId) -> u64;
    fn commit(&mut self, v: AgentId);
    /// Lives saved by the committed set, summed over samples.
    fn saved_total(&self) -> u64;
}

/// Dominator-tree subtree sizes of one sample under the current deletions.
#[derive(Debug, Clone, Default)]
struct SampleGains {
    /// `(agent, agents spared by deleting it)`, sorted by agent.
    entries: Vec<(AgentId, u32)>,
    reach: u32,
}

impl SampleGains {
    fn contains(&self, v: AgentId) -> bool {
        self.entries.binary_search_by_key(&v, |e| e.0).is_ok()
    }
}

const UNDEF: u32 = u32::MAX;

/// Buffers for one dominator computation. `local` maps agents to postorder
/// numbers for the current epoch.
#[derive(Debug, Default)]
struct DomScratch {
    stamp: Vec<u32>,
    post: Vec<u32>,
    epoch: u32,
    order: Vec<AgentId>,
    stack: Vec<(AgentId, u32)>,
    pred_off: Vec<u32>,
    preds: Vec<u32>,
    idom: Vec<u32>,
    size: Vec<u32>,
}

impl DomScratch {
    fn new(n: usize) -> Self {
        DomScratch {
            stamp: vec![0; n],
            post: vec![0; n],
            ..Default::default()
        }
    }

    fn begin(&mut self) -> u32 {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        self.epoch
    }

    /// Iterative dominators (Cooper, Harvey, Kennedy) on the part of
    /// `sample` reachable from `sources` avoiding `deleted`.
    fn compute(&mut self, sample: &LiveEdgeSample, sources: &[AgentId], deleted: &[bool]) -> SampleGains {
        let e = self.begin();
        // Postorder DFS; `stamp == e` marks discovered agents.
        self.order.clear();
        for &b in sources {
            if deleted[b as usize] || self.stamp[b as usize] == e {
                continue;
            }
            self.stamp[b as usize] = e;
            self.stack.push((b, 0));
            while let Some(top) = self.stack.last_mut() {
                let (u, pos) = *top;
                let out = sample.out(u);
                if (pos as usize) < out.len() {
                    top.1 += 1;
                    let v = out[pos as usize];
                    if self.stamp[v as usize] != e && !deleted[v as usize] {
                        self.stamp[v as usize] = e;
                        self.stack.push((v, 0));
                    }
                } else {
                    self.stack.pop();
                    self.post[u as usize] = self.order.len() as u32;
                    self.order.push(u);
                }
            }
        }
        let m = self.order.len();
        let root = m as u32;

        // Predecessors by postorder number; the virtual root feeds every source.
        self.pred_off.clear();
        self.pred_off.resize(m + 2, 0);
        for &u in &self.order {
            for &v in sample.out(u) {
                if self.stamp[v as usize] == e && !deleted[v as usize] {
                    self.pred_off[self.post[v as usize] as usize + 2] += 1;
                }
            }
        }
        for &b in sources {
            if self.stamp[b as usize] == e && !deleted[b as usize] {
                self.pred_off[self.post[b as usize] as usize + 2] += 1;
            }
        }
        for i in 2..m + 2 {
            self.pred_off[i] += self.pred_off[i - 1];
        }
        self.preds.clear();
        self.preds.resize(self.pred_off[m + 1] as usize, 0);
        for &u in &self.order {
            let pu = self.post[u as usize];
            for &v in sample.out(u) {
                if self.stamp[v as usize] == e && !deleted[v as usize] {
                    let slot = &mut self.pred_off[self.post[v as usize] as usize + 1];
                    self.preds[*slot as usize] = pu;
                    *slot += 1;
                }
            }
        }
        for &b in sources {
            if self.stamp[b as usize] == e && !deleted[b as usize] {
                let slot = &mut self.pred_off[self.post[b as usize] as usize + 1];
                self.preds[*slot as usize] = root;
                *slot += 1;
            }
        }
        // pred_off[i]..pred_off[i+1] now spans node i's predecessors.

        self.idom.clear();
        self.idom.resize(m + 1, UNDEF);
        self.idom[m] = root;
        let mut changed = true;
        while changed {
            changed = false;
            for b in (0..m).rev() {
                let mut new_idom = UNDEF;
                for k in self.pred_off[b]..self.pred_off[b + 1] {
                    let p = self.preds[k as usize];
                    if self.idom[p as usize] == UNDEF {
                        continue;
                    }
                    new_idom = if new_idom == UNDEF {
                        p
                    } else {
                        let (mut x, mut y) = (p, new_idom);
                        while x != y {
                            while x < y {
                                x = self.idom[x as usize];
                            }
                            while y < x {
                                y = self.idom[y as usize];
                            }
                        }
                        x
                    };
                }
                if self.idom[b] != new_idom {
                    self.idom[b] = new_idom;
                    changed = true;
                }
            }
        }

        // Dominators sit higher in postorder, so one ascending pass
        // accumulates subtree sizes.
        self.size.clear();
        self.size.resize(m + 1, 1);
        for b in 0..m {
            let d = self.idom[b] as usize;
            self.size[d] += self.size[b];
        }
        let mut entries: Vec<(AgentId, u32)> = (0..m).map(|b| (self.order[b], self.size[b])).collect();
        entries.sort_unstable_by_key(|x| x.0);
        SampleGains {
            entries,
            reach: m as u32,
        }
    }
}

/// Gains from dominator subtree sizes, maintained incrementally.
pub struct DominatorGains<'s> {
    samples: &'s SampleSet,
    sources: Vec<AgentId>,
    deleted: Vec<bool>,
    per_sample: Vec<SampleGains>,
    gain: Vec<u64>,
    base_reach: u64,
}

impl<'s> DominatorGains<'s> {
    pub fn new(samples: &'s SampleSet, infected: &[AgentId]) -> Result<Self> {
        let n = samples.num_nodes();
        check_ids(n, infected, "infected set")?;
        let mut sources = infected.to_vec();
        sources.sort_unstable();
        sources.dedup();
        let deleted = vec![false; n];
        let per_sample: Vec<SampleGains> = samples
            .samples()
            .par_iter()
            .map_init(|| DomScratch::new(n), |scratch, s| scratch.compute(s, &sources, &deleted))
            .collect();
        let mut gain = vec![0u64; n];
        for sg in &per_sample {
            for &(v, sz) in &sg.entries {
                gain[v as usize] += sz as u64;
            }
        }
        let base_reach = per_sample.iter().map(|s| s.reach as u64).sum();
        Ok(DominatorGains {
            samples,
            sources,
            deleted,
            per_sample,
            gain,
            base_reach,
        })
    }

    fn current_reach(&self) -> u64 {
        self.per_sample.iter().map(|s| s.reach as u64).sum()
    }
}

impl GainOracle for DominatorGains<'_> {
    fn gain(&mut self, v: AgentId) -> u64 {
        if self.deleted[v as usize] {
            0
        } else {
            self.gain[v as usize]
        }
    }

    fn commit(&mut self, v: AgentId) {
        if self.deleted[v as usize] {
            return;
        }
        self.deleted[v as usize] = true;
        let dirty: Vec<usize> = (0..self.per_sample.len())
            .filter(|&i| self.per_sample[i].contains(v))
            .collect();
        if dirty.is_empty() {
            return;
        }
        let n = self.samples.num_nodes();
        let fresh: Vec<SampleGains> = dirty
            .par_iter()
            .map_init(
                || DomScratch::new(n),
                |scratch, &i| scratch.compute(&self.samples.samples()[i], &self.sources, &self.deleted),
            )
            .collect();
        for (i, sg) in dirty.into_iter().zip(fresh) {
            for &(u, sz) in &self.per_sample[i].entries {
                self.gain[u as usize] -= sz as u64;
            }
            for &(u, sz) in &sg.entries {
                self.gain[u as usize] += sz as u64;
            }
            self.per_sample[i] = sg;
        }
    }

    fn saved_total(&self) -> u64 {
        self.base_reach - self.current_reach()
    }
}

/// Lazy greedy (CELF): cached gains sit in a max-heap ordered by
/// `(gain desc, id asc)`; the top is re-priced until it is fresh for the
/// current solution size, then taken. Once the fresh top gains nothing, the
/// rest of the budget is filled by ascending id.
pub fn lazy_greedy<O: GainOracle>(oracle: &mut O, candidates: &[AgentId], k: usize) -> Vec<AgentId> {
    let k = k.min(candidates.len());
    let mut chosen = Vec::with_capacity(k);
    if k == 0 {
        return chosen;
    }
    let mut heap: BinaryHeap<(u64, Reverse<AgentId>, usize)> = candidates
        .iter()
        .map(|&v| (oracle.gain(v), Reverse(v), 0))
        .collect();
    let mut exhausted = false;
    while chosen.len() < k {
        let Some((g, Reverse(v), stamp)) = heap.pop() else { break };
        if stamp == chosen.len() {
            if g == 0 {
                exhausted = true;
                heap.push((g, Reverse(v), stamp));
                break;
            }
            oracle.commit(v);
            chosen.push(v);
        } else {
            heap.push((oracle.gain(v), Reverse(v), chosen.len()));
        }
    }
    if exhausted {
        let mut rest: Vec<AgentId> = heap.into_iter().map(|(_, Reverse(v), _)| v).collect();
        rest.sort_unstable();
        for v in rest.into_iter().take(k - chosen.len()) {
            oracle.commit(v);
            chosen.push(v);
        }
    }
    chosen
}

/// Lazy greedy over a fixed sample set.
pub fn select_preempt_on_samples(
    samples: &SampleSet,
    infected: &[AgentId],
    candidates: &[AgentId],
    k: usize,
) -> Result<SeedSet> {
    check_ids(samples.num_nodes(), candidates, "candidate set")?;
    let mut sorted = candidates.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut oracle = DominatorGains::new(samples, infected)?;
    let seeds = lazy_greedy(&mut oracle, &sorted, k);
    Ok(SeedSet {
        seeds,
        objective: Some(oracle.saved_total() as f64 / samples.len() as f64),
    })
}

/// Samples the live network from the current sources and runs lazy greedy.
pub fn select_preempt(ctx: &SelectionContext<'_>) -> Result<SeedSet> {
    if ctx.preempt.samples == 0 {
        return Err(Error::arg("sampling effort N must be at least 1"));
    }
    if ctx.target_size() == 0 {
        return Ok(SeedSet {
            seeds: Vec::new(),
            objective: Some(0.0),
        });
    }
    let view = SamplingView::new(ctx.network)
        .with_blocked(&ctx.blocked)
        .with_retention(ctx.preempt.retention);
    let samples = build_reachable_sample_set(view, ctx.preempt.samples, ctx.seed, &ctx.infected)?;
    select_preempt_on_samples(&samples, &ctx.infected, &ctx.candidates, ctx.budget)
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Exact maximizer of lives saved over all `k`-subsets of `candidates`;
/// ties go to the lexicographically smallest ascending id sequence.
pub fn brute_force_optimal(
    samples: &SampleSet,
    infected: &[AgentId],
    candidates: &[AgentId],
    k: usize,
    cap: u128,
) -> Result<(SeedSet, f64)> {
    check_ids(samples.num_nodes(), infected, "infected set")?;
    check_ids(samples.num_nodes(), candidates, "candidate set")?;
    let mut pool = candidates.to_vec();
    pool.sort_unstable();
    pool.dedup();
    let k = k.min(pool.len());
    let count = binomial(pool.len(), k);
    if count > cap {
        return Err(Error::CombinationCap { count, cap });
    }
    let base: u64 = sigma_per_sample(samples, infected, &[])?.iter().map(|&x| x as u64).sum();
    let mut idx: Vec<usize> = (0..k).collect();
    let mut best: Option<(u64, Vec<AgentId>)> = None;
    let mut subset = Vec::with_capacity(k);
    loop {
        subset.clear();
        subset.extend(idx.iter().map(|&i| pool[i]));
        let after: u64 = sigma_per_sample(samples, infected, &subset)?.iter().map(|&x| x as u64).sum();
        let saved = base - after;
        if best.as_ref().is_none_or(|(b, _)| saved > *b) {
            best = Some((saved, subset.clone()));
        }
        // Next combination in lexicographic order.
        let mut i = k;
        loop {
            if i == 0 {
                let (saved, seeds) = best.expect("at least one subset");
                let value = saved as f64 / samples.len() as f64;
                return Ok((
                    SeedSet {
                        seeds,
                        objective: Some(value),
                    },
                    value,
                ));
            }
            i -= 1;
            if idx[i] < pool.len() - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Straightforward implementations used to cross-check the fast paths.
pub mod reference {
    use super::*;
    use crate::sampler::ReachScratch;

    /// Marginal gains by rerunning the multi-source BFS on every sample.
    pub struct BfsGains<'s> {
        samples: &'s SampleSet,
        infected: Vec<AgentId>,
        chosen: Vec<AgentId>,
        current: Vec<u64>,
        base: u64,
        scratch: ReachScratch,
    }

    impl<'s> BfsGains<'s> {
        pub fn new(samples: &'s SampleSet, infected: &[AgentId]) -> Result<Self> {
            let current: Vec<u64> = sigma_per_sample(samples, infected, &[])?.into_iter().map(|x| x as u64).collect();
            Ok(BfsGains {
                samples,
                infected: infected.to_vec(),
                chosen: Vec::new(),
                base: current.iter().sum(),
                current,
                scratch: ReachScratch::new(samples.num_nodes()),
            })
        }
    }

    impl GainOracle for BfsGains<'_> {
        fn gain(&mut self, v: AgentId) -> u64 {
            if self.chosen.contains(&v) {
                return 0;
            }
            self.chosen.push(v);
            let mut g = 0;
            for (s, &cur) in self.samples.samples().iter().zip(&self.current) {
                g += cur - self.scratch.reach_count(s, &self.infected, &self.chosen) as u64;
            }
            self.chosen.pop();
            g
        }

        fn commit(&mut self, v: AgentId) {
            if self.chosen.contains(&v) {
                return;
            }
            self.chosen.push(v);
            for (s, cur) in self.samples.samples().iter().zip(self.current.iter_mut()) {
                *cur = self.scratch.reach_count(s, &self.infected, &self.chosen) as u64;
            }
        }

        fn saved_total(&self) -> u64 {
            self.base - self.current.iter().sum::<u64>()
        }
    }

    /// Non-lazy greedy: every remaining candidate is re-priced each step.
    pub fn plain_greedy<O: GainOracle>(oracle: &mut O, candidates: &[AgentId], k: usize) -> Vec<AgentId> {
        let mut pool = candidates.to_vec();
        pool.sort_unstable();
        pool.dedup();
        let k = k.min(pool.len());
        let mut chosen = Vec::with_capacity(k);
        while chosen.len() < k {
            let (best_i, best_g) = pool
                .iter()
                .enumerate()
                .map(|(i, &v)| (i, oracle.gain(v)))
                .fold((0, 0), |acc, x| if x.1 > acc.1 { x } else { acc });
            let pick = if best_g == 0 { 0 } else { best_i };
            let v = pool.remove(pick);
            oracle.commit(v);
            chosen.push(v);
        }
        chosen
    }

    /// Lazy greedy driven by BFS gains.
    pub fn preempt_with_bfs(
        samples: &SampleSet,
        infected: &[AgentId],
        candidates: &[AgentId],
        k: usize,
    ) -> Result<SeedSet> {
        let mut sorted = candidates.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut oracle = BfsGains::new(samples, infected)?;
        let seeds = lazy_greedy(&mut oracle, &sorted, k);
        Ok(SeedSet {
            seeds,
            objective: Some(oracle.saved_total() as f64 / samples.len() as f64),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::reference::*;
    use super::*;
    use crate::network::tests::undirected;
    use proptest::prelude::{prop, prop_assert_eq, proptest, Just};
    use proptest::strategy::Strategy as PropStrategy;

    fn path5() -> SampleSet {
        SampleSet::from_edge_lists(5, &[vec![(0, 1), (1, 2), (2, 3), (3, 4)]]).unwrap()
    }

    fn star(leaves: usize) -> SampleSet {
        let edges: Vec<_> = (1..=leaves as AgentId).flat_map(|l| [(0, l), (l, 0)]).collect();
        SampleSet::from_edge_lists(leaves + 1, &[edges]).unwrap()
    }

    #[test]
    fn lives_saved_examples() {
        let p = path5();
        assert_eq!(lives_saved(&p, &[0], &[]).unwrap(), 0.0);
        assert_eq!(lives_saved(&p, &[0], &[1]).unwrap(), 4.0);
        assert_eq!(lives_saved(&p, &[0], &[4]).unwrap(), 1.0);
    }

    #[test]
    fn preempt_path_picks_first_hop() {
        let p = path5();
        let s = select_preempt_on_samples(&p, &[0], &[1, 2, 3, 4], 1).unwrap();
        assert_eq!(s.seeds, vec![1]);
        assert_eq!(s.objective, Some(4.0));
        let (bf, v) = brute_force_optimal(&p, &[0], &[1, 2, 3, 4], 1, DEFAULT_BRUTE_FORCE_CAP).unwrap();
        assert_eq!(bf.seeds, vec![1]);
        assert_eq!(v, 4.0);
        let empty = select_preempt_on_samples(&p, &[0], &[1, 2, 3, 4], 0).unwrap();
        assert!(empty.seeds.is_empty());
        assert_eq!(empty.objective, Some(0.0));
    }

    #[test]
    fn preempt_star_picks_center() {
        let s = star(6);
        let cands: Vec<AgentId> = (0..=6).filter(|&v| v != 1).collect();
        let pick = select_preempt_on_samples(&s, &[1], &cands, 1).unwrap();
        assert_eq!(pick.seeds, vec![0]);
        assert_eq!(pick.objective, Some(6.0));
    }

    #[test]
    fn brute_force_edges() {
        let p = path5();
        let (s, v) = brute_force_optimal(&p, &[0], &[1, 2, 3], 0, 10).unwrap();
        assert!(s.seeds.is_empty());
        assert_eq!(v, 0.0);
        let (s, v) = brute_force_optimal(&p, &[0], &[2, 3, 4], 3, 10).unwrap();
        assert_eq!(s.seeds, vec![2, 3, 4]);
        assert_eq!(v, 3.0);
        let cands: Vec<AgentId> = (0..5).collect();
        assert!(matches!(
            brute_force_optimal(&p, &[0], &cands, 2, 5),
            Err(Error::CombinationCap { count: 10, cap: 5 })
        ));
    }

    #[test]
    fn zero_gain_fills_by_ascending_id() {
        // No infection: every candidate is worthless.
        let p = path5();
        let s = select_preempt_on_samples(&p, &[], &[4, 2, 3], 2).unwrap();
        assert_eq!(s.seeds, vec![2, 3]);
        assert_eq!(s.objective, Some(0.0));
    }

    #[test]
    fn degree_and_random_examples() {
        let star_net = undirected(5, &[(0, 1), (0, 2), (0, 3), (0, 4)], 0.5);
        let ctx = SelectionContext::new(&star_net, vec![], (0..5).collect(), 1).unwrap();
        assert_eq!(select_degree(&ctx).seeds, vec![0]);

        let ring = undirected(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)], 0.5);
        let ctx = SelectionContext::new(&ring, vec![], (0..6).rev().collect(), 3).unwrap();
        assert_eq!(select_degree(&ctx).seeds, vec![0, 1, 2]);

        let ctx0 = SelectionContext::new(&ring, vec![], (0..6).collect(), 0).unwrap();
        let mut rng = rng::stream(1, &[]);
        assert!(select_random(&ctx0, &mut rng).seeds.is_empty());
        let all = SelectionContext::new(&ring, vec![], (0..6).collect(), 10).unwrap();
        let mut got = select_random(&all, &mut rng).seeds;
        got.sort_unstable();
        assert_eq!(got, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn context_rejects_overlap() {
        let ring = undirected(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], 0.5);
        assert!(SelectionContext::new(&ring, vec![1], vec![1, 2], 1).is_err());
        let mut removed = ring.clone();
        removed.remove_nodes([2]).unwrap();
        assert!(SelectionContext::new(&removed, vec![], vec![2], 1).is_err());
        assert!(SelectionContext::new(&ring, vec![], vec![9], 1).is_err());
    }

    #[test]
    fn preempt_needs_samples() {
        let ring = undirected(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], 0.5);
        let ctx = SelectionContext::new(&ring, vec![0], vec![1, 2], 1)
            .unwrap()
            .with_preempt(PreemptParams { samples: 0, retention: Retention::PerContact });
        assert!(select_preempt(&ctx).is_err());
    }

    #[test]
    fn strategy_names() {
        for s in Strategy::ALL {
            assert_eq!(s.name().parse::<Strategy>().unwrap(), s);
        }
        assert!(matches!(
            "frobnicate".parse::<Strategy>(),
            Err(Error::InvalidConfig { ref key, .. }) if key == "experiment.strategy"
        ));
    }

    type Instance = (usize, Vec<Vec<(AgentId, AgentId)>>, Vec<AgentId>);

    fn arb_samples() -> impl PropStrategy<Value = Instance> {
        (3usize..14).prop_flat_map(|n| {
            let edge = (0..n as AgentId, 0..n as AgentId).prop_filter("no loops", |(a, b)| a != b);
            (
                Just(n),
                prop::collection::vec(prop::collection::vec(edge, 0..3 * n), 1..5),
                prop::collection::vec(0..n as AgentId, 1..4),
            )
        })
    }

    proptest! {
        #[test]
        fn dominator_gains_match_bfs((n, lists, infected) in arb_samples(), picks in prop::collection::vec(0u32..14, 0..5)) {
            let set = SampleSet::from_edge_lists(n, &lists).unwrap();
            let mut fast = DominatorGains::new(&set, &infected).unwrap();
            let mut slow = BfsGains::new(&set, &infected).unwrap();
            for p in picks.into_iter().filter(|&p| (p as usize) < n) {
                for v in 0..n as AgentId {
                    prop_assert_eq!(fast.gain(v), slow.gain(v), "gain of {}", v);
                }
                fast.commit(p);
                slow.commit(p);
                prop_assert_eq!(fast.saved_total(), slow.saved_total());
            }
        }

        #[test]
        fn lazy_greedy_oracles_agree((n, lists, infected) in arb_samples(), k in 0usize..5) {
            let set = SampleSet::from_edge_lists(n, &lists).unwrap();
            let cands: Vec<AgentId> = (0..n as AgentId).filter(|v| !infected.contains(v)).collect();
            let fast = select_preempt_on_samples(&set, &infected, &cands, k).unwrap();
            let slow = preempt_with_bfs(&set, &infected, &cands, k).unwrap();
            prop_assert_eq!(&fast, &slow);
            prop_assert_eq!(fast.seeds.len(), k.min(cands.len()));
            prop_assert_eq!(fast.objective.unwrap(), lives_saved(&set, &infected, &fast.seeds).unwrap());
        }
    }
}
