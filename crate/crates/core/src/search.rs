//! Isomorph-free enumeration of `(s,t)`-witnesses and the closure engines
//! (edge rotation, Ryser switch, induced subgraph).
//!
//! Enumeration grows triangle-free `K_{s,t}`-free graphs one vertex at a
//! time by canonical augmentation. A child is accepted when its new vertex
//! is in the orbit of the canonical deletion vertex: the minimum-degree
//! vertex (ties broken by neighbour degree sum, then by largest canonical
//! position). Accepted siblings are deduplicated by canonical form.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::VertexSet;
use crate::canon::{canonical_form, canonical_labeling, CanonicalReport};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::to_graph6;
use crate::properties::{check_degree_bound, find_kst, is_star, witness_report, MAX_KST_S};

/// Order at which the augmentation tree is split across workers.
const SPLIT_ORDER: usize = 7;

/// Pruning switches for [`enumerate_witnesses`]. All are sound; turning
/// one off only slows the search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PruneFlags {
    /// Partial-degree form of `Σ(d² + (t-2)d) <= (t-1)n(n-1)`; `s = 2` only.
    pub degree_sum: bool,
    /// Theorem 2.1 on completed witnesses (a check, never removes one);
    /// `s = 2` only.
    pub degree_bound: bool,
    /// For `s = 2`, extend only by neighbourhoods that keep co-degrees
    /// `<= t-1`; otherwise test `K_{s,t}` on every child.
    pub codegree_cap: bool,
    /// Distance-two deficits must be repairable by the remaining vertices.
    pub lookahead: bool,
}

impl Default for PruneFlags {
    fn default() -> Self {
        PruneFlags {
            degree_sum: true,
            degree_bound: true,
            codegree_cap: true,
            lookahead: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub n_max: usize,
    pub s: usize,
    pub t: usize,
    pub prune: PruneFlags,
    /// Worker threads; 0 uses the global rayon pool.
    pub workers: usize,
    /// Stop after this many accepted tree nodes.
    pub node_budget: Option<u64>,
}

impl SearchConfig {
    pub fn new(n_max: usize, s: usize, t: usize) -> Self {
        SearchConfig {
            n_max,
            s,
            t,
            prune: PruneFlags::default(),
            workers: 0,
            node_budget: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(4..=20).contains(&self.n_max) {
            return Err(Error::InvalidArgument(format!("n_max must lie in 4..=20, got {}", self.n_max)));
        }
        if self.s < 2 || self.s > self.t {
            return Err(Error::InvalidArgument(format!("need 2 <= s <= t, got s={}, t={}", self.s, self.t)));
        }
        if self.s > MAX_KST_S {
            return Err(Error::Unsupported(format!("s = {} > {MAX_KST_S}", self.s)));
        }
        Ok(())
    }
}

/// One enumerated witness, canonically labelled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub n: usize,
    pub graph6: String,
    pub edges: usize,
    pub degrees: Vec<usize>,
    pub girth: GirthClass,
    #[serde(flatten)]
    pub canonical: CanonicalReport,
    #[serde(skip)]
    pub graph: Graph,
}

impl Witness {
    pub fn from_graph(g: &Graph) -> Witness {
        let canonical = crate::canon::canonicalize(g);
        let graph = crate::graph6::from_graph6(&canonical.canonical_form).expect("own encoding");
        let mut degrees = graph.degrees();
        degrees.sort_unstable();
        Witness {
            n: graph.n(),
            graph6: canonical.canonical_form.clone(),
            edges: graph.edge_count(),
            degrees,
            girth: GirthClass::of(&graph),
            canonical,
            graph,
        }
    }
}

/// Girth as the census reports it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GirthClass {
    Four,
    Five,
    Other,
}

impl GirthClass {
    pub fn of(g: &Graph) -> GirthClass {
        match g.girth() {
            Some(4) => GirthClass::Four,
            Some(5) => GirthClass::Five,
            _ => GirthClass::Other,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            GirthClass::Four => "4",
            GirthClass::Five => "5",
            GirthClass::Other => "other",
        }
    }
}

/// Witnesses sharing order, edge count, degree multiset and girth class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub n: usize,
    pub edge_count: usize,
    /// `(degree, multiplicity)`, increasing degree.
    pub degrees: Vec<(usize, usize)>,
    pub girth: GirthClass,
    #[serde(serialize_with = "crate::canon::serialize_biguint")]
    pub aut_order_min: BigUint,
    #[serde(serialize_with = "crate::canon::serialize_biguint")]
    pub aut_order_max: BigUint,
    pub orbits_min: usize,
    pub orbits_max: usize,
    pub count: usize,
}

/// Groups witnesses into census rows ordered by `(n, edges, degrees, girth)`.
pub fn census_rows(witnesses: &[Witness]) -> Vec<CensusRow> {
    let mut groups: BTreeMap<(usize, usize, Vec<(usize, usize)>, GirthClass), Vec<&Witness>> = BTreeMap::new();
    for w in witnesses {
        groups
            .entry((w.n, w.edges, degree_multiset(&w.degrees), w.girth))
            .or_default()
            .push(w);
    }
    groups
        .into_iter()
        .map(|((n, edge_count, degrees, girth), ws)| CensusRow {
            n,
            edge_count,
            degrees,
            girth,
            aut_order_min: ws.iter().map(|w| w.canonical.aut_order.clone()).min().expect("non-empty"),
            aut_order_max: ws.iter().map(|w| w.canonical.aut_order.clone()).max().expect("non-empty"),
            orbits_min: ws.iter().map(|w| w.canonical.orbit_count).min().expect("non-empty"),
            orbits_max: ws.iter().map(|w| w.canonical.orbit_count).max().expect("non-empty"),
            count: ws.len(),
        })
        .collect()
}

/// `(degree, multiplicity)` pairs of a degree list.
pub fn degree_multiset(degrees: &[usize]) -> Vec<(usize, usize)> {
    let mut m: BTreeMap<usize, usize> = BTreeMap::new();
    for &d in degrees {
        *m.entry(d).or_default() += 1;
    }
    m.into_iter().collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Accepted augmentation-tree nodes per order (index = order).
    pub nodes: Vec<u64>,
    /// Children that reached a canonical labeling.
    pub canonicalized: u64,
}

impl SearchStats {
    fn merge(&mut self, other: &SearchStats) {
        if self.nodes.len() < other.nodes.len() {
            self.nodes.resize(other.nodes.len(), 0);
        }
        for (a, b) in self.nodes.iter_mut().zip(&other.nodes) {
            *a += b;
        }
        self.canonicalized += other.canonicalized;
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Enumeration {
    /// Sorted by order, then canonical form.
    pub witnesses: Vec<Witness>,
    /// Witness count for every order `4..=n_max`.
    pub counts: Vec<(usize, usize)>,
    pub stats: SearchStats,
    /// True when the node budget stopped the search early.
    pub interrupted: bool,
    /// Witnesses that violated Theorem 2.1 (expected empty).
    pub degree_bound_violations: Vec<String>,
}

impl Enumeration {
    pub fn census(&self) -> Vec<CensusRow> {
        census_rows(&self.witnesses)
    }

    pub fn count(&self, n: usize) -> usize {
        self.counts.iter().find(|&&(m, _)| m == n).map_or(0, |&(_, c)| c)
    }
}

struct Walker<'a> {
    cfg: &'a SearchConfig,
    stats: SearchStats,
    found: Vec<Graph>,
    budget_left: Option<u64>,
    interrupted: bool,
}

impl<'a> Walker<'a> {
    fn new(cfg: &'a SearchConfig, budget_left: Option<u64>) -> Self {
        Walker {
            cfg,
            stats: SearchStats {
                nodes: vec![0; cfg.n_max + 1],
                canonicalized: 0,
            },
            found: Vec::new(),
            budget_left,
            interrupted: false,
        }
    }

    fn fast_kst(&self) -> bool {
        self.cfg.s == 2 && self.cfg.prune.codegree_cap
    }

    /// Accepted children of `parent`, each canonically labelled.
    fn children(&mut self, parent: &Graph) -> Vec<Graph> {
        let k = parent.n();
        let remaining = self.cfg.n_max - (k + 1);
        let mut seen: HashSet<Graph> = HashSet::new();
        let mut out = Vec::new();
        // the new vertex must have minimum degree in the child
        let degs = parent.degrees();
        let max_size = degs.iter().min().map_or(0, |&d| d + 1);
        let sets = if self.fast_kst() {
            extension_sets(parent, self.cfg.t, max_size)
        } else {
            independent_sets(parent, max_size)
        };
        for x in sets {
            let size = x.len();
            if (0..k).any(|u| degs[u] + usize::from(x.contains(u)) < size) {
                continue;
            }
            let child = parent.extended(&x).expect("order within cap");
            if !self.fast_kst() && find_kst(&child, self.cfg.s, self.cfg.t).expect("validated").is_some() {
                continue;
            }
            let rows = Rows::of(&child);
            let Some(candidates) = deletion_candidates(&rows, k) else { continue };
            if self.cfg.prune.degree_sum && self.cfg.s == 2 && !degree_sum_ok(&rows, self.cfg.n_max, self.cfg.t) {
                continue;
            }
            if self.cfg.prune.lookahead && !lookahead_ok(&rows, remaining, self.cfg.t, self.fast_kst()) {
                continue;
            }
            if remaining == 0 && (!child.has_diameter_at_most_two() || is_star(&child)) {
                continue;
            }
            self.stats.canonicalized += 1;
            let lab = canonical_labeling(&child);
            if candidates.len() > 1 {
                let pos = lab.positions();
                let chosen = *candidates.iter().max_by_key(|&&u| pos[u]).expect("non-empty");
                if lab.orbits[chosen] != lab.orbits[k] {
                    continue;
                }
            }
            let canon = lab.canonical_graph(&child);
            if seen.insert(canon.clone()) {
                out.push(canon);
            }
        }
        out
    }

    fn visit(&mut self, g: Graph) {
        if self.interrupted {
            return;
        }
        if let Some(left) = self.budget_left.as_mut() {
            if *left == 0 {
                self.interrupted = true;
                return;
            }
            *left -= 1;
        }
        let n = g.n();
        self.stats.nodes[n] += 1;
        if n >= 4 && g.has_diameter_at_most_two() && !is_star(&g) {
            self.found.push(g.clone());
        }
        if n < self.cfg.n_max {
            for child in self.children(&g) {
                self.visit(child);
            }
        }
    }

    /// Like [`visit`](Self::visit) but stops at `split`, returning those nodes.
    fn frontier(&mut self, g: Graph, split: usize, out: &mut Vec<Graph>) {
        if g.n() == split {
            out.push(g);
            return;
        }
        let n = g.n();
        self.stats.nodes[n] += 1;
        if n >= 4 && g.has_diameter_at_most_two() && !is_star(&g) {
            self.found.push(g.clone());
        }
        if n < self.cfg.n_max {
            for child in self.children(&g) {
                self.frontier(child, split, out);
            }
        }
    }
}

/// Independent sets `X` of `g` such that a new vertex joined to `X`
/// keeps every co-degree at most `t - 1`: pairs inside `X` have co-degree
/// `<= t-2`, and every vertex has at most `t-1` neighbours in `X`.
/// Only sets of at most `max_size` vertices are listed.
pub fn extension_sets(g: &Graph, t: usize, max_size: usize) -> Vec<VertexSet> {
    let n = g.n();
    let degs = g.degrees();
    let excl: Vec<VertexSet> = (0..n)
        .map(|v| {
            let mut e = g.neighbours(v);
            for w in 0..n {
                if w != v && g.codegree(v, w) + 1 >= t {
                    e.insert(w);
                }
            }
            e
        })
        .collect();
    let mut out = Vec::new();
    let mut cnt = vec![0usize; n];
    let mut chosen = VertexSet::new();
    let ctx = ExtContext { g, t, max_size, excl: &excl, degs: &degs };
    ext_dfs(&ctx, 0, VertexSet::new(), &mut cnt, &mut chosen, &mut out);
    out
}

struct ExtContext<'a> {
    g: &'a Graph,
    t: usize,
    max_size: usize,
    excl: &'a [VertexSet],
    degs: &'a [usize],
}

/// A vertex of degree below `|X|` must be in `X`; one of degree below
/// `|X| - 1` cannot be anywhere, and `X` only grows along a branch.
fn degree_dead(ctx: &ExtContext, size: usize, from: usize, blocked: &VertexSet, chosen: &VertexSet) -> bool {
    (0..ctx.g.n()).any(|u| {
        let d = ctx.degs[u];
        if chosen.contains(u) {
            d + 1 < size
        } else {
            d < size && (u < from || blocked.contains(u))
        }
    })
}

fn ext_dfs(
    ctx: &ExtContext,
    from: usize,
    blocked: VertexSet,
    cnt: &mut [usize],
    chosen: &mut VertexSet,
    out: &mut Vec<VertexSet>,
) {
    let size = chosen.len();
    if degree_dead(ctx, size, from, &blocked, chosen) {
        return;
    }
    out.push(*chosen);
    if size == ctx.max_size {
        return;
    }
    let g = ctx.g;
    for v in from..g.n() {
        if blocked.contains(v) {
            continue;
        }
        let mut next = blocked.union(&ctx.excl[v]);
        let nv = g.neighbours(v);
        for y in nv.iter() {
            cnt[y] += 1;
            if cnt[y] >= ctx.t - 1 {
                next = next.union(&g.neighbours(y));
            }
        }
        chosen.insert(v);
        ext_dfs(ctx, v + 1, next, cnt, chosen, out);
        chosen.remove(v);
        for y in nv.iter() {
            cnt[y] -= 1;
        }
    }
}

/// Independent sets of `g` with at most `max_size` vertices, including the empty set.
pub fn independent_sets(g: &Graph, max_size: usize) -> Vec<VertexSet> {
    fn dfs(g: &Graph, max_size: usize, from: usize, blocked: VertexSet, chosen: &mut VertexSet, out: &mut Vec<VertexSet>) {
        out.push(*chosen);
        if chosen.len() == max_size {
            return;
        }
        for v in from..g.n() {
            if !blocked.contains(v) {
                chosen.insert(v);
                dfs(g, max_size, v + 1, blocked.union(&g.neighbours(v)), chosen, out);
                chosen.remove(v);
            }
        }
    }
    let mut out = Vec::new();
    dfs(g, max_size, 0, VertexSet::new(), &mut VertexSet::new(), &mut out);
    out
}

/// Largest order handled by the single-word kernels below.
const SMALL: usize = 32;

/// Adjacency rows of a graph on at most [`SMALL`] vertices.
struct Rows {
    n: usize,
    adj: [u64; SMALL],
}

impl Rows {
    fn of(g: &Graph) -> Rows {
        debug_assert!(g.n() <= SMALL);
        let mut adj = [0u64; SMALL];
        for (v, row) in adj.iter_mut().enumerate().take(g.n()) {
            *row = g.row(v)[0];
        }
        Rows { n: g.n(), adj }
    }

    fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    fn codegree(&self, u: usize, v: usize) -> usize {
        (self.adj[u] & self.adj[v]).count_ones() as usize
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            v
        })
    })
}

/// Vertices tied for deletion, or `None` when `v` is not among them.
fn deletion_candidates(g: &Rows, v: usize) -> Option<Vec<usize>> {
    let key = |u: usize| (g.degree(u), bits(g.adj[u]).map(|w| g.degree(w)).sum::<usize>());
    let best = (0..g.n).map(key).min().expect("non-empty graph");
    if key(v) != best {
        return None;
    }
    Some((0..g.n).filter(|&u| key(u) == best).collect())
}

/// Partial degrees only grow and the final order is at most `n_max`.
fn degree_sum_ok(g: &Rows, n_max: usize, t: usize) -> bool {
    let lhs: usize = (0..g.n).map(|v| g.degree(v)).map(|d| d * d + (t - 2) * d).sum();
    lhs <= (t - 1) * n_max * (n_max - 1)
}

/// Whether the pairs at distance `> 2` could still be repaired by
/// `remaining` new vertices. A pair gains a common neighbour only through a
/// new vertex whose (independent) neighbourhood contains both ends.
fn lookahead_ok(g: &Rows, remaining: usize, t: usize, codegree_cap: bool) -> bool {
    let n = g.n;
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut far = [0u64; SMALL];
    let mut any_far = false;
    for u in 0..n {
        let mut reach = g.adj[u] | 1 << u;
        for w in bits(g.adj[u]) {
            reach |= g.adj[w];
        }
        far[u] = all & !reach;
        any_far |= far[u] != 0;
    }
    if !any_far {
        return true;
    }
    if remaining == 0 {
        return false;
    }
    // the i-th future vertex has minimum degree when added, so at most
    // δ + i old neighbours; it covers at most C(δ + i, 2) far pairs and at
    // most δ + i - 1 of them at any one old vertex
    let delta = (0..n).map(|v| g.degree(v)).min().unwrap_or(0);
    let far_pairs: usize = far[..n].iter().map(|f| f.count_ones() as usize).sum::<usize>() / 2;
    let pair_room: usize = (1..=remaining).map(|i| (delta + i) * (delta + i - 1) / 2).sum();
    let vertex_room: usize = (1..=remaining).map(|i| delta + i - 1).sum();
    if far_pairs > pair_room || far[..n].iter().any(|f| f.count_ones() as usize > vertex_room) {
        return false;
    }
    if remaining > 2 {
        return true;
    }
    // vertices that may never share a new neighbour: edges, and (under
    // the co-degree cap) pairs whose co-degree is already t-1
    let mut conflict = [0u64; SMALL];
    for u in 0..n {
        conflict[u] = g.adj[u];
        if codegree_cap {
            for w in 0..n {
                if w != u && g.codegree(u, w) + 1 >= t {
                    conflict[u] |= 1 << w;
                }
            }
        }
    }
    if remaining == 1 {
        let touched = (0..n).filter(|&u| far[u] != 0).fold(0u64, |m, u| m | 1 << u);
        return bits(touched).all(|u| conflict[u] & touched == 0)
            && (!codegree_cap || (0..n).all(|y| ((g.adj[y] & touched).count_ones() as usize) < t));
    }
    (0..n).all(|u| two_colourable(far[u], &conflict))
}

fn two_colourable(set: u64, conflict: &[u64; SMALL]) -> bool {
    let (mut red, mut blue) = (0u64, 0u64);
    for start in bits(set) {
        if (red | blue) >> start & 1 == 1 {
            continue;
        }
        red |= 1 << start;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            let own_red = red >> u & 1 == 1;
            for w in bits(conflict[u] & set) {
                let (same, other) = if own_red { (red, &mut blue) } else { (blue, &mut red) };
                if same >> w & 1 == 1 {
                    return false;
                }
                if *other >> w & 1 == 0 {
                    *other |= 1 << w;
                    stack.push(w);
                }
            }
        }
    }
    true
}

/// Every `(s,t)`-witness on `4..=n_max` vertices, one per isomorphism class.
pub fn enumerate_witnesses(cfg: &SearchConfig) -> Result<Enumeration> {
    cfg.validate()?;
    let run = || -> Enumeration {
        let root = Graph::empty(1).expect("one vertex");
        let mut top = Walker::new(cfg, None);
        let mut frontier = Vec::new();
        top.frontier(root, SPLIT_ORDER.min(cfg.n_max), &mut frontier);

        let budget = cfg.node_budget;
        let parts: Vec<Walker> = frontier
            .into_par_iter()
            .map(|g| {
                let mut w = Walker::new(cfg, budget);
                w.visit(g);
                w
            })
            .collect();

        let mut stats = top.stats.clone();
        let mut graphs = top.found;
        let mut interrupted = false;
        let mut spent = 0u64;
        for p in parts {
            stats.merge(&p.stats);
            spent += p.stats.nodes.iter().sum::<u64>();
            interrupted |= p.interrupted;
            graphs.extend(p.found);
        }
        if let Some(b) = budget {
            interrupted |= spent > b;
        }
        let mut witnesses: Vec<Witness> = graphs.iter().map(Witness::from_graph).collect();
        witnesses.sort_by(|a, b| (a.n, &a.graph6).cmp(&(b.n, &b.graph6)));
        witnesses.dedup_by(|a, b| a.graph6 == b.graph6);
        let degree_bound_violations = if cfg.prune.degree_bound && cfg.s == 2 {
            witnesses
                .iter()
                .filter(|w| !matches!(check_degree_bound(&w.graph, cfg.t), Ok(true)))
                .map(|w| w.graph6.clone())
                .collect()
        } else {
            Vec::new()
        };
        let counts = (4..=cfg.n_max)
            .map(|n| (n, witnesses.iter().filter(|w| w.n == n).count()))
            .collect();
        Enumeration {
            witnesses,
            counts,
            stats,
            interrupted,
            degree_bound_violations,
        }
    };
    if cfg.workers == 0 {
        Ok(run())
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("worker pool: {e}")))?;
        Ok(pool.install(run))
    }
}

fn is_witness_fast(g: &Graph, s: usize, t: usize) -> bool {
    g.n() >= 2
        && g.has_diameter_at_most_two()
        && !is_star(g)
        && crate::properties::is_triangle_free(g)
        && matches!(find_kst(g, s, t), Ok(None))
}

fn dedup_by_form(graphs: impl IntoIterator<Item = Graph>) -> Vec<Graph> {
    let mut by_form: BTreeMap<String, Graph> = BTreeMap::new();
    for g in graphs {
        by_form.entry(canonical_form(&g)).or_insert(g);
    }
    by_form.into_values().collect()
}

/// Witnesses `G - uv + uw`, one per isomorphism class, sorted by canonical form.
pub fn edge_rotation_neighbors(g: &Graph, s: usize, t: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for (a, b) in g.edges() {
        for (u, v) in [(a, b), (b, a)] {
            for w in 0..g.n() {
                if w != u && w != v && !g.has_edge(u, w) {
                    let mut h = g.without_edge(u, v);
                    h.set_edge(u, w);
                    if is_witness_fast(&h, s, t) {
                        out.push(h);
                    }
                }
            }
        }
    }
    dedup_by_form(out)
}

/// Witnesses `G - uv - wx + uw + vx` over distinct quadruples.
pub fn ryser_switch_neighbors(g: &Graph, s: usize, t: usize) -> Vec<Graph> {
    let edges = g.edges();
    let mut out = Vec::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            for (u, v) in [(a, b), (b, a)] {
                let (w, x) = (c, d);
                if [u, v].contains(&w) || [u, v].contains(&x) {
                    continue;
                }
                for (w, x) in [(w, x), (x, w)] {
                    if g.has_edge(u, w) || g.has_edge(v, x) {
                        continue;
                    }
                    let mut h = g.without_edge(u, v).without_edge(w, x);
                    h.set_edge(u, w);
                    h.set_edge(v, x);
                    if is_witness_fast(&h, s, t) {
                        out.push(h);
                    }
                }
            }
        }
    }
    dedup_by_form(out)
}

/// Induced subgraphs (on at least 4 vertices) that are witnesses, by
/// exhaustive subset scan for `n <= 20` and by single-vertex deletion
/// otherwise.
pub fn induced_witnesses(g: &Graph, s: usize, t: usize) -> Vec<Graph> {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 20 {
        for mask in 1u32..(1u32 << n) - 1 {
            if mask.count_ones() < 4 {
                continue;
            }
            let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let h = g.induced_subgraph(&vs).expect("non-empty");
            if is_witness_fast(&h, s, t) {
                out.push(h);
            }
        }
    } else {
        for v in 0..n {
            let vs: Vec<usize> = (0..n).filter(|&u| u != v).collect();
            let h = g.induced_subgraph(&vs).expect("non-empty");
            if is_witness_fast(&h, s, t) {
                out.push(h);
            }
        }
    }
    dedup_by_form(out)
}

/// Operations available to [`closure`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureOps {
    pub rotation: bool,
    pub switch: bool,
    pub induced: bool,
}

impl ClosureOps {
    pub const ALL: ClosureOps = ClosureOps {
        rotation: true,
        switch: true,
        induced: true,
    };
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureBudget {
    pub max_iterations: usize,
    pub max_size: usize,
}

impl Default for ClosureBudget {
    fn default() -> Self {
        ClosureBudget {
            max_iterations: 1000,
            max_size: 100_000,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureResult {
    /// Canonical graph6 forms of every witness reached, seeds included.
    pub forms: BTreeSet<String>,
    pub truncated: bool,
    pub iterations: usize,
}

/// Breadth-first fixpoint of the chosen operations from the witness seeds.
/// Seeds failing the witness predicate are dropped.
pub fn closure(seeds: &[Graph], ops: ClosureOps, s: usize, t: usize, budget: ClosureBudget) -> Result<ClosureResult> {
    if s < 1 || s > t || s > MAX_KST_S {
        return Err(Error::InvalidArgument(format!("unsupported (s,t) = ({s},{t})")));
    }
    let mut forms = BTreeSet::new();
    let mut layer = Vec::new();
    for g in seeds {
        if witness_report(g, s, t)?.is_witness && forms.insert(canonical_form(g)) {
            layer.push(g.clone());
        }
    }
    let mut iterations = 0;
    while !layer.is_empty() {
        if iterations == budget.max_iterations {
            return Ok(ClosureResult {
                forms,
                truncated: true,
                iterations,
            });
        }
        iterations += 1;
        let found: Vec<Vec<Graph>> = layer
            .par_iter()
            .map(|g| {
                let mut v = Vec::new();
                if ops.rotation {
                    v.extend(edge_rotation_neighbors(g, s, t));
                }
                if ops.switch {
                    v.extend(ryser_switch_neighbors(g, s, t));
                }
                if ops.induced {
                    v.extend(induced_witnesses(g, s, t));
                }
                v
            })
            .collect();
        let mut next = Vec::new();
        for h in found.into_iter().flatten() {
            if forms.insert(canonical_form(&h)) {
                next.push(h);
                if forms.len() > budget.max_size {
                    return Ok(ClosureResult {
                        forms,
                        truncated: true,
                        iterations,
                    });
                }
            }
        }
        layer = next;
    }
    Ok(ClosureResult {
        forms,
        truncated: false,
        iterations,
    })
}

/// Graph6 strings of a witness list.
pub fn graph6_lines(ws: &[Witness]) -> Vec<String> {
    ws.iter().map(|w| to_graph6(&w.graph)).collect()
}
