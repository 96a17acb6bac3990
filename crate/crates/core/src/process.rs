//! The constrained `{K_3, K_{s,t}}`-free random graph process and a probe
//! for large induced subgraphs of diameter two.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};
use crate::graph6::to_graph6;
use crate::properties::MAX_KST_S;

/// Identifies the edge-order generator recorded in every trace.
pub const PERMUTATION_SCHEME: &str = "chacha8-fisher-yates-v1";

/// Why a pair could not be added: the structure it would complete.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    /// `w` is a common neighbour of the pair.
    Triangle { w: usize },
    /// Complete bipartite `s_side × t_side` once the pair is added; the
    /// pair has one end on each side.
    Biclique { s_side: Vec<usize>, t_side: Vec<usize> },
}

/// Certificate entry for one non-edge of the final graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Blocked {
    pub u: usize,
    pub v: usize,
    pub obstruction: Obstruction,
}

fn graph_as_graph6<S: Serializer>(g: &Graph, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&to_graph6(g))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProcessTrace {
    pub n: usize,
    pub s: usize,
    pub t: usize,
    pub seed: u64,
    pub permutation: String,
    /// Accepted edges in acceptance order.
    pub accepted: Vec<(usize, usize)>,
    #[serde(serialize_with = "graph_as_graph6")]
    pub final_graph: Graph,
    pub rejected: usize,
    /// One entry per non-edge of the final graph, sorted by pair.
    pub certificate: Vec<Blocked>,
}

impl ProcessTrace {
    /// Checks every certificate entry against the final graph, and that
    /// the entries cover exactly the non-edges.
    pub fn verify_certificate(&self) -> bool {
        let g = &self.final_graph;
        let mut covered = 0usize;
        for b in &self.certificate {
            if b.u == b.v || g.has_edge(b.u, b.v) {
                return false;
            }
            if !obstruction_holds(g, b.u, b.v, &b.obstruction, self.s, self.t) {
                return false;
            }
            covered += 1;
        }
        let mut pairs: Vec<(usize, usize)> = self.certificate.iter().map(|b| (b.u.min(b.v), b.u.max(b.v))).collect();
        pairs.sort_unstable();
        pairs.dedup();
        pairs.len() == covered && covered == g.n() * (g.n() - 1) / 2 - g.edge_count()
    }
}

/// Whether `obstruction` is present in `g + uv`.
pub fn obstruction_holds(g: &Graph, u: usize, v: usize, obstruction: &Obstruction, s: usize, t: usize) -> bool {
    match obstruction {
        Obstruction::Triangle { w } => *w != u && *w != v && g.has_edge(u, *w) && g.has_edge(v, *w),
        Obstruction::Biclique { s_side, t_side } => {
            let a: VertexSet = s_side.iter().copied().collect();
            let b: VertexSet = t_side.iter().copied().collect();
            let spans = (a.contains(u) && b.contains(v)) || (a.contains(v) && b.contains(u));
            spans
                && a.len() == s
                && b.len() == t
                && s_side.len() == s
                && t_side.len() == t
                && a.intersection(&b).is_empty()
                && s_side.iter().all(|&x| {
                    t_side
                        .iter()
                        .all(|&y| g.has_edge(x, y) || (x, y) == (u, v) || (x, y) == (v, u))
                })
        }
    }
}

/// All pairs of `0..n` in a uniformly random order.
pub fn shuffled_pairs(n: usize, seed: u64) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in (1..pairs.len()).rev() {
        let j = rng.gen_range(0..=i);
        pairs.swap(i, j);
    }
    pairs
}

/// `K_{s,t}` that adding `uv` would complete, with `u` on the `s` side.
fn biclique_through(g: &Graph, u: usize, v: usize, s: usize, t: usize) -> Option<Obstruction> {
    // s side {u} ∪ A with A ⊆ N(v), t side {v} ∪ B with B ⊆ N(u) ∩ N(A)
    fn grow(
        g: &Graph,
        pool: &[usize],
        from: usize,
        need: usize,
        common: VertexSet,
        t: usize,
        chosen: &mut Vec<usize>,
    ) -> Option<VertexSet> {
        if common.len() + 1 < t {
            return None;
        }
        if chosen.len() == need {
            return Some(common);
        }
        for i in from..pool.len() {
            chosen.push(pool[i]);
            let next = common.intersection(&g.neighbours(pool[i]));
            if let Some(c) = grow(g, pool, i + 1, need, next, t, chosen) {
                return Some(c);
            }
            chosen.pop();
        }
        None
    }
    let pool: Vec<usize> = g.neighbours(v).iter().filter(|&a| g.degree(a) + 1 >= t).collect();
    let mut chosen = Vec::with_capacity(s - 1);
    let common = grow(g, &pool, 0, s - 1, g.neighbours(u), t, &mut chosen)?;
    let mut s_side = vec![u];
    s_side.extend(&chosen);
    let mut t_side = vec![v];
    t_side.extend(common.iter().take(t - 1));
    Some(Obstruction::Biclique { s_side, t_side })
}

/// The structure that makes `uv` unaddable to `g`, if any.
pub fn blocking_structure(g: &Graph, u: usize, v: usize, s: usize, t: usize) -> Option<Obstruction> {
    if let Some(w) = g.common_neighbours(u, v).first() {
        return Some(Obstruction::Triangle { w });
    }
    biclique_through(g, u, v, s, t).or_else(|| biclique_through(g, v, u, s, t))
}

/// One pass over a seeded random ordering of all pairs, adding each pair
/// unless it completes a triangle or a `K_{s,t}`.
pub fn run_process(n: usize, s: usize, t: usize, seed: u64) -> Result<ProcessTrace> {
    if !(4..=MAX_VERTICES).contains(&n) {
        return Err(Error::InvalidArgument(format!("n must lie in 4..={MAX_VERTICES}, got {n}")));
    }
    if s < 2 || s > t {
        return Err(Error::InvalidArgument(format!("need 2 <= s <= t, got s={s}, t={t}")));
    }
    if s > MAX_KST_S {
        return Err(Error::Unsupported(format!("s = {s} > {MAX_KST_S}")));
    }
    let mut g = Graph::empty(n)?;
    let mut accepted = Vec::new();
    let mut certificate = Vec::new();
    for (u, v) in shuffled_pairs(n, seed) {
        match blocking_structure(&g, u, v, s, t) {
            None => {
                g.set_edge(u, v);
                accepted.push((u, v));
            }
            // the graph only grows, so the obstruction stays valid
            Some(obstruction) => certificate.push(Blocked { u, v, obstruction }),
        }
    }
    certificate.sort_by_key(|b| (b.u, b.v));
    Ok(ProcessTrace {
        n,
        s,
        t,
        seed,
        permutation: format!("{PERMUTATION_SCHEME}:{seed}"),
        rejected: certificate.len(),
        accepted,
        final_graph: g,
        certificate,
    })
}

/// `m* = sqrt(n³ ln n / 2)`.
pub fn diameter2_threshold(n: usize) -> f64 {
    let n = n as f64;
    (n * n * n * n.ln() / 2.0).sqrt()
}

/// `½ n² exp(-4m²/n³)`.
pub fn expected_uncovered_pairs(n: usize, m: usize) -> f64 {
    let (n, m) = (n as f64, m as f64);
    0.5 * n * n * (-4.0 * m * m / (n * n * n)).exp()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeResult {
    /// Sorted vertex set whose induced subgraph has diameter at most 2.
    pub vertices: Vec<usize>,
    pub order: usize,
    /// True when proved optimal by exhaustive search.
    pub exact: bool,
}

/// Whether `g[set]` has diameter at most two.
pub fn induced_diameter_at_most_two(g: &Graph, set: &VertexSet) -> bool {
    let vs = set.to_vec();
    vs.iter().enumerate().all(|(i, &a)| {
        let na = g.neighbours(a).intersection(set);
        vs[i + 1..]
            .iter()
            .all(|&b| na.contains(b) || na.intersection_len(&g.neighbours(b)) > 0)
    })
}

struct Exact<'a> {
    g: &'a Graph,
    nbrs: Vec<VertexSet>,
    best: VertexSet,
    nodes: u64,
    budget: Option<u64>,
    exhausted: bool,
}

impl Exact<'_> {
    /// Pair `a, b` can still be joined within `avail` (adjacent or a
    /// common neighbour in `avail`).
    fn joinable(&self, a: usize, b: usize, avail: &VertexSet) -> bool {
        self.nbrs[a].contains(b) || self.nbrs[a].intersection(&self.nbrs[b]).intersection_len(avail) > 0
    }

    fn search(&mut self, chosen: VertexSet, mut open: VertexSet) {
        if self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.budget.is_some_and(|b| self.nodes > b) {
            self.exhausted = true;
            return;
        }
        // drop open vertices that can never coexist with the chosen ones
        loop {
            let avail = chosen.union(&open);
            let dead: VertexSet = open
                .iter()
                .filter(|&x| chosen.iter().any(|c| !self.joinable(c, x, &avail)))
                .collect();
            if dead.is_empty() {
                break;
            }
            open = open.difference(&dead);
        }
        if chosen.len() + open.len() <= self.best.len() {
            return;
        }
        let avail = chosen.union(&open);
        let cs = chosen.to_vec();
        for (i, &a) in cs.iter().enumerate() {
            if cs[i + 1..].iter().any(|&b| !self.joinable(a, b, &avail)) {
                return;
            }
        }
        let Some(x) = open.first() else {
            // every chosen pair is joinable inside `chosen` itself
            self.best = chosen;
            return;
        };
        let mut with = chosen;
        with.insert(x);
        let mut rest = open;
        rest.remove(x);
        self.search(with, rest);
        self.search(chosen, rest);
    }
}

/// Lowest-index-tie-break peeling: repeatedly delete the vertex in the
/// most violating pairs until the induced subgraph has diameter two.
fn peel(g: &Graph, start: VertexSet) -> VertexSet {
    let mut set = start;
    loop {
        let vs = set.to_vec();
        let mut count = vec![0usize; g.n()];
        let mut any = false;
        for (i, &a) in vs.iter().enumerate() {
            let na = g.neighbours(a).intersection(&set);
            for &b in &vs[i + 1..] {
                if !na.contains(b) && na.intersection_len(&g.neighbours(b)) == 0 {
                    count[a] += 1;
                    count[b] += 1;
                    any = true;
                }
            }
        }
        if !any {
            return set;
        }
        let worst = vs.iter().copied().max_by_key(|&v| (count[v], std::cmp::Reverse(v))).expect("non-empty");
        set.remove(worst);
    }
}

/// Grows `start` greedily by the lowest-index vertex that keeps the
/// induced diameter at most two.
fn grow(g: &Graph, start: VertexSet) -> VertexSet {
    let mut set = start;
    let mut progress = true;
    while progress {
        progress = false;
        for x in 0..g.n() {
            if set.contains(x) {
                continue;
            }
            let mut bigger = set;
            bigger.insert(x);
            if induced_diameter_at_most_two(g, &bigger) {
                set = bigger;
                progress = true;
            }
        }
    }
    set
}

fn heuristic(g: &Graph) -> VertexSet {
    let mut best = grow(g, peel(g, VertexSet::full(g.n())));
    for v in 0..g.n() {
        let mut star = g.neighbours(v);
        star.insert(v);
        if star.len() + (g.n() - star.len()) <= best.len() {
            continue;
        }
        let s = grow(g, star);
        if s.len() > best.len() {
            best = s;
        }
    }
    best
}

/// Largest vertex set inducing a subgraph of diameter at most two.
///
/// Exact branch and bound when `n <= exact_limit` and the node budget
/// suffices; otherwise the better of peeling and greedy growth from each
/// closed neighbourhood, flagged as inexact.
pub fn max_diameter2_subgraph(g: &Graph, exact_limit: usize, budget: Option<u64>) -> ProbeResult {
    let mut exact = false;
    let mut best = VertexSet::new();
    if g.n() <= exact_limit {
        let seed = heuristic(g);
        let mut e = Exact {
            g,
            nbrs: (0..g.n()).map(|v| g.neighbours(v)).collect(),
            best: seed,
            nodes: 0,
            budget,
            exhausted: false,
        };
        e.search(VertexSet::new(), VertexSet::full(g.n()));
        debug_assert!(induced_diameter_at_most_two(e.g, &e.best));
        exact = !e.exhausted;
        best = e.best;
    }
    if !exact {
        let h = heuristic(g);
        if h.len() > best.len() {
            best = h;
        }
    }
    ProbeResult {
        order: best.len(),
        vertices: best.to_vec(),
        exact,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialSummary {
    pub trial: usize,
    pub seed: u64,
    pub edges: usize,
    pub rejected: usize,
    pub edge_ratio: f64,
    pub saturated: bool,
    pub probe_order: usize,
    pub probe_exact: bool,
    pub max_degree: usize,
    pub graph6: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentSummary {
    pub n: usize,
    pub s: usize,
    pub t: usize,
    pub seed: u64,
    pub threshold: f64,
    pub trials: Vec<TrialSummary>,
    pub edges_min: usize,
    pub edges_max: usize,
    pub edges_mean: f64,
    pub edge_ratio_mean: f64,
    /// Probe order to number of trials.
    pub probe_orders: BTreeMap<usize, usize>,
    pub all_saturated: bool,
    /// Trials whose probe exceeded 13, the paper's observed bound.
    pub probe_above_13: usize,
}

/// Seed of trial `i` in an experiment seeded with `seed`.
pub fn trial_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_add(i as u64)
}

/// Runs independent seeded trials and aggregates them.
pub fn experiment(n: usize, s: usize, t: usize, trials: usize, seed: u64, exact_limit: usize) -> Result<ExperimentSummary> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let threshold = diameter2_threshold(n);
    let results: Vec<Result<TrialSummary>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let trial_seed = trial_seed(seed, i);
            let trace = run_process(n, s, t, trial_seed)?;
            let probe = max_diameter2_subgraph(&trace.final_graph, exact_limit, Some(1 << 22));
            let g = &trace.final_graph;
            Ok(TrialSummary {
                trial: i,
                seed: trial_seed,
                edges: g.edge_count(),
                rejected: trace.rejected,
                edge_ratio: g.edge_count() as f64 / threshold,
                saturated: trace.verify_certificate(),
                probe_order: probe.order,
                probe_exact: probe.exact,
                max_degree: g.max_degree(),
                graph6: to_graph6(g),
            })
        })
        .collect();
    let trials: Vec<TrialSummary> = results.into_iter().collect::<Result<_>>()?;
    let k = trials.len() as f64;
    let mut probe_orders = BTreeMap::new();
    for tr in &trials {
        *probe_orders.entry(tr.probe_order).or_insert(0) += 1;
    }
    Ok(ExperimentSummary {
        n,
        s,
        t,
        seed,
        threshold,
        edges_min: trials.iter().map(|t| t.edges).min().unwrap_or(0),
        edges_max: trials.iter().map(|t| t.edges).max().unwrap_or(0),
        edges_mean: trials.iter().map(|t| t.edges as f64).sum::<f64>() / k,
        edge_ratio_mean: trials.iter().map(|t| t.edge_ratio).sum::<f64>() / k,
        all_saturated: trials.iter().all(|t| t.saturated),
        probe_above_13: trials.iter().filter(|t| t.probe_order > 13).count(),
        probe_orders,
        trials,
    })
}
