//! Synthetic dynamic networks with planted communities and evolving nodes.
//!
//! Degrees follow a truncated power law. The first timestep is wired like a
//! configuration model with most stubs kept inside the node's community.
//! Every later timestep applies three rules:
//!
//! * an evolving node changes 3 to 5 incident edges, a stable node at most 2;
//! * an evolving node drops edges outside its target community and gains
//!   edges inside it, while stable nodes only rewire within their community;
//! * an evolving node's additions and deletions differ by at most one.

use std::collections::BTreeSet;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed::{self, Rng};
use crate::temporal_graph::{build_by_time, DynamicNetwork, EventStream, TemporalEdge};
use crate::NodeId;

/// Wiring attempts before giving up.
const MAX_REGENERATIONS: usize = 20;
const MAX_STEP_RETRIES: usize = 50;
/// Share of stubs that may stay unmatched in an accepted wiring.
const MAX_DROPPED_STUBS: f64 = 0.05;
/// Change budget of a stable node per timestep.
const STABLE_BUDGET: usize = 2;
/// Candidate probes when looking for a partner node.
const PARTNER_PROBES: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SynthConfig {
    pub nodes: usize,
    /// Power-law exponent of the degree distribution.
    pub alpha: f64,
    /// Power-law scale; bounds the maximum degree at `ceil(c^(1/alpha))`.
    pub c: f64,
    pub communities: usize,
    pub evolving_fraction: f64,
    pub timesteps: usize,
    /// Expected share of a node's initial edges inside its community.
    pub intra_ratio: f64,
    /// Probability that a stable node rewires one edge in a timestep.
    pub stable_rewire: f64,
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            nodes: 500,
            alpha: 2.0,
            c: 100.0,
            communities: 4,
            evolving_fraction: 0.10,
            timesteps: 10,
            intra_ratio: 0.8,
            stable_rewire: 0.1,
            seed: 0,
        }
    }
}

impl SynthConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::InvalidConfig(m.to_string()));
        if !(self.alpha.is_finite() && self.alpha > 1.0) {
            return fail("power-law exponent must exceed 1");
        }
        if !(self.c.is_finite() && self.c > 0.0) {
            return fail("power-law scale must be positive");
        }
        if self.communities < 2 {
            return fail("at least two communities are required");
        }
        if self.nodes < self.communities || self.nodes < 2 {
            return fail("need at least as many nodes as communities");
        }
        if !(self.evolving_fraction > 0.0 && self.evolving_fraction < 1.0) {
            return fail("evolving fraction must lie in (0, 1)");
        }
        if !(self.intra_ratio > 0.5 && self.intra_ratio <= 1.0) {
            return fail("intra-community ratio must lie in (0.5, 1]");
        }
        if !(0.0..=1.0).contains(&self.stable_rewire) {
            return fail("stable rewiring probability must lie in [0, 1]");
        }
        if self.timesteps < 1 {
            return fail("at least one timestep is required");
        }
        Ok(())
    }

    /// Largest degree the power law can produce.
    pub fn max_degree(&self) -> usize {
        let k = (self.c.powf(1.0 / self.alpha) - 1e-9).ceil().max(1.0) as usize;
        k.min(self.nodes - 1)
    }

    pub fn evolving_count(&self) -> usize {
        (self.nodes as f64 * self.evolving_fraction).round() as usize
    }
}

/// Draws `nodes` degrees with `P(k) ∝ c·k^(-alpha)` on `1..=max_degree`,
/// then makes the sum even by incrementing one node.
pub fn sample_degrees(config: &SynthConfig) -> Result<Vec<usize>> {
    config.validate()?;
    let mut rng = seed::rng(seed::named(config.seed, "degrees"));
    sample_degrees_with(config, &mut rng)
}

fn sample_degrees_with(config: &SynthConfig, rng: &mut Rng) -> Result<Vec<usize>> {
    let k_max = config.max_degree();
    let weights: Vec<f64> = (1..=k_max).map(|k| config.c * (k as f64).powf(-config.alpha)).collect();
    let dist = WeightedIndex::new(&weights).map_err(|e| Error::Generation(e.to_string()))?;
    let mut degrees: Vec<usize> = (0..config.nodes).map(|_| dist.sample(rng) + 1).collect();
    if degrees.iter().sum::<usize>() % 2 == 1 {
        let candidates: Vec<usize> = (0..degrees.len()).filter(|&i| degrees[i] < config.nodes - 1).collect();
        let &i = candidates
            .choose(rng)
            .ok_or_else(|| Error::Generation("cannot make the degree sum even".into()))?;
        degrees[i] += 1;
    }
    Ok(degrees)
}

/// Planned migration of one evolving node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Migration {
    pub node: NodeId,
    pub source: usize,
    pub target: usize,
    /// Edges added at each transition (`timesteps - 1` entries).
    pub additions: Vec<usize>,
    /// Edges removed at each transition.
    pub deletions: Vec<usize>,
}

/// Generated network with its ground truth.
#[derive(Debug, Clone)]
pub struct SynthNetwork {
    pub network: DynamicNetwork,
    pub stream: EventStream,
    /// Planted evolving nodes, ascending.
    pub evolving_nodes: Vec<NodeId>,
    /// `community_of[node][t]`.
    pub community_of: Vec<Vec<usize>>,
    pub migrations: Vec<Migration>,
    /// Undirected edge set `(u < v)` of every timestep.
    pub edges: Vec<Vec<(NodeId, NodeId)>>,
    /// Wirings rejected before one was accepted.
    pub regenerations: usize,
}

impl SynthNetwork {
    /// Sum of the per-timestep edge counts.
    pub fn edge_volume(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    pub fn is_evolving(&self, node: NodeId) -> bool {
        self.evolving_nodes.binary_search(&node).is_ok()
    }
}

#[derive(Clone)]
struct Graph {
    adj: Vec<BTreeSet<NodeId>>,
}

impl Graph {
    fn new(n: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); n],
        }
    }

    fn has(&self, u: NodeId, v: NodeId) -> bool {
        self.adj[u as usize].contains(&v)
    }

    fn add(&mut self, u: NodeId, v: NodeId) {
        self.adj[u as usize].insert(v);
        self.adj[v as usize].insert(u);
    }

    fn remove(&mut self, u: NodeId, v: NodeId) {
        self.adj[u as usize].remove(&v);
        self.adj[v as usize].remove(&u);
    }

    fn edges(&self) -> Vec<(NodeId, NodeId)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| {
                let u = u as NodeId;
                ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v))
            })
            .collect()
    }
}

/// Pairs stubs greedily: each stub takes the first admissible partner found
/// scanning from a random offset. Returns the number of stubs left unmatched.
fn pair_stubs(
    mut stubs: Vec<NodeId>,
    graph: &mut Graph,
    admissible: impl Fn(NodeId, NodeId) -> bool,
    rng: &mut Rng,
) -> (usize, Vec<NodeId>) {
    stubs.shuffle(rng);
    let mut leftover = Vec::new();
    while let Some(a) = stubs.pop() {
        if stubs.is_empty() {
            leftover.push(a);
            break;
        }
        let n = stubs.len();
        let offset = rng.random_range(0..n);
        let found = (0..n).map(|k| (offset + k) % n).find(|&j| {
            let b = stubs[j];
            a != b && !graph.has(a, b) && admissible(a, b)
        });
        match found {
            Some(j) => {
                let b = stubs.swap_remove(j);
                graph.add(a, b);
            }
            None => leftover.push(a),
        }
    }
    (leftover.len(), leftover)
}

fn wire_initial(config: &SynthConfig, community: &[usize], rng: &mut Rng) -> Result<(Graph, usize)> {
    let n = config.nodes;
    let mut graph = Graph::new(n);
    let degrees = sample_degrees_with(config, rng)?;
    let total: usize = degrees.iter().sum();

    let mut intra: Vec<Vec<NodeId>> = vec![Vec::new(); config.communities];
    let mut inter: Vec<NodeId> = Vec::new();
    for (v, &k) in degrees.iter().enumerate() {
        for _ in 0..k {
            if rng.random_bool(config.intra_ratio) {
                intra[community[v]].push(v as NodeId);
            } else {
                inter.push(v as NodeId);
            }
        }
    }
    for stubs in intra {
        let (_, leftover) = pair_stubs(stubs, &mut graph, |_, _| true, rng);
        inter.extend(leftover);
    }
    let (dropped, _) = pair_stubs(
        inter,
        &mut graph,
        |a, b| community[a as usize] != community[b as usize],
        rng,
    );
    Ok((graph, dropped.min(total)))
}

/// Per-step bookkeeping of the evolution rules.
struct Evolution<'a> {
    home: &'a [usize],
    members: &'a [Vec<NodeId>],
    target_of: &'a [Option<usize>],
    /// Incident edge changes of every node in the current step.
    changes: Vec<usize>,
    /// `(additions, deletions)` of evolving nodes in the current step.
    counts: Vec<(usize, usize)>,
    /// `(changes, planned deletions)` drawn in the deletion phase.
    plan: Vec<(usize, usize)>,
    /// Target-community edges an evolving node dropped this step.
    dropped_target: Vec<usize>,
    finished: Vec<bool>,
    /// Edges removed this step; re-adding one would cancel the change.
    removed: BTreeSet<(NodeId, NodeId)>,
}

impl<'a> Evolution<'a> {
    fn new(home: &'a [usize], members: &'a [Vec<NodeId>], target_of: &'a [Option<usize>]) -> Self {
        let n = home.len();
        Evolution {
            home,
            members,
            target_of,
            changes: vec![0; n],
            counts: vec![(0, 0); n],
            plan: vec![(0, 0); n],
            dropped_target: vec![0; n],
            finished: vec![false; n],
            removed: BTreeSet::new(),
        }
    }

    fn is_evolving(&self, v: NodeId) -> bool {
        self.target_of[v as usize].is_some()
    }

    fn available(&self, graph: &Graph, u: NodeId, v: NodeId) -> bool {
        v != u && self.stable_with_budget(v) && !graph.has(u, v) && !self.removed.contains(&(u.min(v), u.max(v)))
    }

    fn remove(&mut self, graph: &mut Graph, u: NodeId, v: NodeId) {
        graph.remove(u, v);
        self.removed.insert((u.min(v), u.max(v)));
    }

    fn stable_with_budget(&self, v: NodeId) -> bool {
        !self.is_evolving(v) && self.changes[v as usize] < STABLE_BUDGET
    }

    /// A stable node of `community` with spare budget, not adjacent to `u`.
    fn find_partner(&self, graph: &Graph, u: NodeId, community: usize, rng: &mut Rng) -> Option<NodeId> {
        let pool = &self.members[community];
        for _ in 0..PARTNER_PROBES {
            let &v = pool.choose(rng)?;
            if self.available(graph, u, v) {
                return Some(v);
            }
        }
        let candidates: Vec<NodeId> = pool.iter().copied().filter(|&v| self.available(graph, u, v)).collect();
        candidates.choose(rng).copied()
    }

    /// Whether `e` may drop its edge to `x`. For an evolving `x` the edge
    /// must lie outside `x`'s target, and the drop counts as one of `x`'s
    /// deletions, so once `x` has balanced its step its additions must
    /// still cover it.
    fn can_drop(&self, e: NodeId, x: NodeId) -> bool {
        match self.target_of[x as usize] {
            Some(target) => {
                let (a, d) = self.counts[x as usize];
                target != self.home[e as usize] && (!self.finished[x as usize] || a > d)
            }
            None => self.changes[x as usize] < STABLE_BUDGET,
        }
    }

    fn droppable(&self, graph: &Graph, e: NodeId, outside: bool) -> Vec<NodeId> {
        let target = self.target_of[e as usize].expect("evolving node");
        graph.adj[e as usize]
            .iter()
            .copied()
            .filter(|&x| self.can_drop(e, x) && (self.home[x as usize] != target) == outside)
            .collect()
    }

    fn drop_edge(&mut self, graph: &mut Graph, e: NodeId, x: NodeId) {
        self.remove(graph, e, x);
        for v in [e, x] {
            self.changes[v as usize] += 1;
            if self.is_evolving(v) {
                self.counts[v as usize].1 += 1;
            }
        }
    }

    fn add_edge(&mut self, graph: &mut Graph, e: NodeId, rng: &mut Rng) -> Option<NodeId> {
        let target = self.target_of[e as usize].expect("evolving node");
        let v = self.find_partner(graph, e, target, rng)?;
        graph.add(e, v);
        self.changes[e as usize] += 1;
        self.changes[v as usize] += 1;
        self.counts[e as usize].0 += 1;
        Some(v)
    }

    /// First phase: draw the step's change count and drop edges outside the
    /// target community. Deletion partners are the scarce resource, so every
    /// evolving node gets its deletions before anyone adds edges.
    fn delete_outside(&mut self, graph: &mut Graph, e: NodeId, rng: &mut Rng) {
        let target = self.target_of[e as usize].expect("evolving node");
        let migrating =
            self.counts[e as usize].1 > 0 || graph.adj[e as usize].iter().any(|&x| self.home[x as usize] != target);
        let changes = rng.random_range(3..=5usize);
        let planned_del = if migrating { changes.div_ceil(2) } else { changes / 2 };
        self.plan[e as usize] = (changes, planned_del);

        let mut outside = self.droppable(graph, e, true);
        outside.shuffle(rng);
        for x in outside {
            if self.counts[e as usize].1 >= planned_del {
                break;
            }
            if self.can_drop(e, x) {
                self.drop_edge(graph, e, x);
            }
        }

        // Target edges go too when nothing else is left, as long as the
        // planned additions will replace them.
        let planned_add = changes - planned_del;
        let mut inside = self.droppable(graph, e, false);
        inside.shuffle(rng);
        for x in inside {
            if self.counts[e as usize].1 >= planned_del || self.dropped_target[e as usize] >= planned_add {
                break;
            }
            if self.can_drop(e, x) {
                self.drop_edge(graph, e, x);
                self.dropped_target[e as usize] += 1;
            }
        }
    }

    /// Second phase: add edges into the target, drop target edges only as
    /// far as the additions cover them, then balance the step so that it
    /// has more than two changes and additions within one of deletions.
    fn add_and_balance(&mut self, graph: &mut Graph, e: NodeId, rng: &mut Rng) {
        let (changes, planned_del) = self.plan[e as usize];
        let planned_add = changes - planned_del;
        let mut added = Vec::new();
        while self.counts[e as usize].0 < planned_add {
            match self.add_edge(graph, e, rng) {
                Some(v) => added.push(v),
                None => break,
            }
        }

        let want_del = planned_del.min(self.counts[e as usize].0 + 1);
        if self.counts[e as usize].1 < want_del {
            let mut inside: Vec<NodeId> = self
                .droppable(graph, e, false)
                .into_iter()
                .filter(|x| !added.contains(x))
                .collect();
            inside.shuffle(rng);
            for x in inside {
                let (a, d) = self.counts[e as usize];
                if d >= want_del || self.dropped_target[e as usize] >= a {
                    break;
                }
                self.drop_edge(graph, e, x);
                self.dropped_target[e as usize] += 1;
            }
        }

        loop {
            let (a, d) = self.counts[e as usize];
            if !((a + d < 3 && a <= d) || a + 1 < d) {
                break;
            }
            match self.add_edge(graph, e, rng) {
                Some(v) => added.push(v),
                None => break,
            }
        }
        loop {
            let (a, d) = self.counts[e as usize];
            if a <= d + 1 || a <= self.dropped_target[e as usize] {
                break;
            }
            let Some(v) = added.pop() else { break };
            graph.remove(e, v);
            self.changes[e as usize] -= 1;
            self.changes[v as usize] -= 1;
            self.counts[e as usize].0 -= 1;
        }
        self.finished[e as usize] = true;
    }

    /// Stable node `s` swaps one in-community edge for another.
    fn rewire_stable(&mut self, graph: &mut Graph, s: NodeId, rng: &mut Rng) {
        if self.changes[s as usize] != 0 {
            return;
        }
        let community = self.home[s as usize];
        let olds: Vec<NodeId> = graph.adj[s as usize]
            .iter()
            .copied()
            .filter(|&x| self.home[x as usize] == community && self.stable_with_budget(x))
            .collect();
        let Some(&old) = olds.choose(rng) else {
            return;
        };
        let Some(new) = self.find_partner(graph, s, community, rng) else {
            return;
        };
        self.remove(graph, s, old);
        graph.add(s, new);
        self.changes[s as usize] += 2;
        self.changes[old as usize] += 1;
        self.changes[new as usize] += 1;
    }

    /// Whether every evolving node met the per-step rules.
    fn balanced(&self, evolving: &[NodeId]) -> bool {
        evolving.iter().all(|&e| {
            let (a, d) = self.counts[e as usize];
            a + d > 2 && a.abs_diff(d) <= 1
        })
    }
}

/// Runs the evolving nodes' changes for one step, retrying with fresh draws
/// when some node cannot meet the per-step rules (typically leaves hanging
/// off a hub whose budget is spent).
fn evolve_step<'a>(
    graph: &Graph,
    evolving: &[NodeId],
    home: &'a [usize],
    members: &'a [Vec<NodeId>],
    target_of: &'a [Option<usize>],
    rng: &mut Rng,
) -> Option<(Graph, Evolution<'a>)> {
    for retry in 0..MAX_STEP_RETRIES {
        let mut next = graph.clone();
        let mut evo = Evolution::new(home, members, target_of);
        let mut movers = evolving.to_vec();
        movers.shuffle(rng);
        // Nodes with few edges have the fewest deletion options.
        movers.sort_by_key(|&e| next.adj[e as usize].len());
        for &e in &movers {
            evo.delete_outside(&mut next, e, rng);
        }
        for &e in &movers {
            evo.add_and_balance(&mut next, e, rng);
        }
        if evo.balanced(evolving) {
            return Some((next, evo));
        }
        log::debug!("evolution step rejected, retry {}", retry + 1);
    }
    None
}

/// Generates a dynamic network following `config`.
///
/// When the initial wiring leaves too many stubs unmatched, or some step
/// cannot give every evolving node a valid set of changes, the whole
/// network is regenerated from a fresh sub-seed; the count is reported in
/// [`SynthNetwork::regenerations`].
pub fn generate(config: &SynthConfig) -> Result<SynthNetwork> {
    config.validate()?;
    for attempt in 0..MAX_REGENERATIONS {
        let mut rng = seed::rng(seed::derive(seed::named(config.seed, "synth"), &[attempt as u64]));
        match attempt_generation(config, &mut rng)? {
            Some(mut synth) => {
                synth.regenerations = attempt;
                if attempt > 0 {
                    log::info!("synthetic network regenerated {attempt} time(s)");
                }
                return Ok(synth);
            }
            None => log::debug!("generation attempt {attempt} rejected"),
        }
    }
    Err(Error::Generation(format!(
        "no valid network after {MAX_REGENERATIONS} attempts"
    )))
}

fn attempt_generation(config: &SynthConfig, rng: &mut Rng) -> Result<Option<SynthNetwork>> {
    let n = config.nodes;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut home = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        home[v] = i % config.communities;
    }
    let mut members: Vec<Vec<NodeId>> = vec![Vec::new(); config.communities];
    for v in 0..n {
        members[home[v]].push(v as NodeId);
    }

    let (mut graph, dropped) = wire_initial(config, &home, rng)?;
    let stubs: usize = graph.adj.iter().map(BTreeSet::len).sum::<usize>() + dropped;
    if dropped as f64 > MAX_DROPPED_STUBS * stubs as f64 {
        return Ok(None);
    }

    let mut picks: Vec<NodeId> = (0..n as NodeId).collect();
    picks.shuffle(rng);
    // Evolving nodes need an edge to drop every step. They start isolated
    // from each other, and no node neighbours more of them than it can
    // release edges to in one step, or leaves sharing a hub would deadlock.
    let mut evolving_around = vec![0usize; n];
    let mut evolving_nodes: Vec<NodeId> = Vec::with_capacity(config.evolving_count());
    for &v in &picks {
        if evolving_nodes.len() == config.evolving_count() {
            break;
        }
        let adj = &graph.adj[v as usize];
        if !adj.is_empty()
            && evolving_around[v as usize] == 0
            && adj.iter().all(|&w| evolving_around[w as usize] < STABLE_BUDGET)
        {
            for &w in adj {
                evolving_around[w as usize] += 1;
            }
            evolving_nodes.push(v);
        }
    }
    if evolving_nodes.len() < config.evolving_count() {
        return Ok(None);
    }
    evolving_nodes.sort_unstable();
    let mut target_of = vec![None; n];
    let mut migrations: Vec<Migration> = Vec::with_capacity(evolving_nodes.len());
    for &e in &evolving_nodes {
        let source = home[e as usize];
        let others: Vec<usize> = (0..config.communities).filter(|&c| c != source).collect();
        let target = *others.choose(rng).expect("at least two communities");
        target_of[e as usize] = Some(target);
        migrations.push(Migration {
            node: e,
            source,
            target,
            additions: Vec::new(),
            deletions: Vec::new(),
        });
    }

    // An evolving node belongs to its target once most of its edges do.
    let community_at = |graph: &Graph, v: usize| -> usize {
        match target_of[v] {
            None => home[v],
            Some(target) => {
                let inside = graph.adj[v].iter().filter(|&&x| home[x as usize] == target).count();
                if 2 * inside > graph.adj[v].len() {
                    target
                } else {
                    home[v]
                }
            }
        }
    };

    let mut edges = vec![graph.edges()];
    let mut community_of: Vec<Vec<usize>> = home.iter().map(|&c| vec![c]).collect();
    let stable: Vec<NodeId> = (0..n as NodeId).filter(|&v| target_of[v as usize].is_none()).collect();

    for _ in 1..config.timesteps {
        let Some((next, mut evo)) = evolve_step(&graph, &evolving_nodes, &home, &members, &target_of, rng) else {
            return Ok(None);
        };
        graph = next;
        for m in &mut migrations {
            let (a, d) = evo.counts[m.node as usize];
            m.additions.push(a);
            m.deletions.push(d);
        }

        let mut order = stable.clone();
        order.shuffle(rng);
        for s in order {
            if rng.random_bool(config.stable_rewire) {
                evo.rewire_stable(&mut graph, s, rng);
            }
        }
        edges.push(graph.edges());
        for (v, row) in community_of.iter_mut().enumerate() {
            row.push(community_at(&graph, v));
        }
    }

    let temporal: Vec<TemporalEdge> = edges
        .iter()
        .enumerate()
        .flat_map(|(t, es)| es.iter().map(move |&(u, v)| TemporalEdge::new(u, v, (t + 1) as f64)))
        .collect();
    let stream = EventStream::from_edges(temporal, (0..n as u64).collect())?;
    let network = build_by_time(&stream, 1.0, 1.0)?;

    Ok(Some(SynthNetwork {
        network,
        stream,
        evolving_nodes,
        community_of,
        migrations,
        edges,
        regenerations: 0,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn max_degree_rule() {
        let c = SynthConfig::default();
        assert_eq!(c.max_degree(), 10);
        let c = SynthConfig {
            alpha: 3.0,
            c: 1e4,
            nodes: 5000,
            ..SynthConfig::default()
        };
        assert_eq!(c.max_degree(), 22);
        let c = SynthConfig {
            nodes: 5,
            c: 1e4,
            ..SynthConfig::default()
        };
        assert_eq!(c.max_degree(), 4);
    }

    #[test]
    fn degree_sum_is_even_and_bounded() {
        for seed in 0..5 {
            let c = SynthConfig {
                seed,
                ..SynthConfig::default()
            };
            let d = sample_degrees(&c).unwrap();
            assert_eq!(d.len(), 500);
            assert_eq!(d.iter().sum::<usize>() % 2, 0);
            assert!(d.iter().all(|&k| (1..=11).contains(&k)));
        }
    }

    #[test]
    fn evolving_count() {
        let s = generate(&SynthConfig::default()).unwrap();
        assert_eq!(s.evolving_nodes.len(), 50);
        assert_eq!(s.network.len(), 10);
        assert_eq!(s.migrations.len(), 50);
        assert!(s
            .migrations
            .iter()
            .all(|m| m.additions.len() == 9 && m.source != m.target));
    }

    #[test]
    fn rejects_invalid_config() {
        for c in [
            SynthConfig {
                alpha: 1.0,
                ..SynthConfig::default()
            },
            SynthConfig {
                c: 0.0,
                ..SynthConfig::default()
            },
            SynthConfig {
                nodes: 3,
                ..SynthConfig::default()
            },
            SynthConfig {
                evolving_fraction: 1.0,
                ..SynthConfig::default()
            },
            SynthConfig {
                intra_ratio: 0.5,
                ..SynthConfig::default()
            },
        ] {
            assert!(generate(&c).is_err());
        }
    }
}
