//! Immutable simple graphs stored as rows of adjacency bits.

use std::collections::VecDeque;
use std::fmt;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// Largest vertex count a [`Graph`] can hold.
pub const MAX_VERTICES: usize = 512;

/// Distance sentinel returned by [`Graph::distances_from`] for unreachable vertices.
pub const UNREACHABLE: usize = usize::MAX;

/// A simple undirected graph on vertices `0..n`, `1 <= n <= 512`.
///
/// Row `v` holds the neighbourhood of `v` as `ceil(n/64)` words. Rows are
/// symmetric and irreflexive; every constructor enforces this.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::InvalidArgument(format!(
                "vertex count {n} outside 1..={MAX_VERTICES}"
            )));
        }
        let stride = n.div_ceil(64);
        Ok(Graph {
            n,
            stride,
            bits: vec![0; n * stride],
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge ({u},{v}) out of range for n = {n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("loop at vertex {u}")));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Words per adjacency row.
    #[inline]
    pub fn stride(&self) -> usize {
        self.stride
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.stride..(v + 1) * self.stride]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.stride + (v >> 6)] >> (v & 63) & 1 == 1
    }

    pub fn neighbours(&self, v: usize) -> VertexSet {
        VertexSet::from_words(self.row(v))
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.neighbours(u).iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    /// Non-adjacent pairs `(u, v)` with `u < v`.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Size of `N(v) ∩ set`.
    #[inline]
    pub fn degree_into(&self, v: usize, set: &VertexSet) -> usize {
        self.row(v)
            .iter()
            .zip(set.0.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    #[inline]
    pub fn codegree(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// `N(u) ∩ N(v)`.
    pub fn common_neighbours(&self, u: usize, v: usize) -> VertexSet {
        assert_ne!(u, v, "common_neighbours needs distinct vertices");
        self.neighbours(u).intersection(&self.neighbours(v))
    }

    /// BFS distances from `v`; unreachable vertices get [`UNREACHABLE`].
    pub fn distances_from(&self, v: usize) -> Vec<usize> {
        assert!(v < self.n, "vertex {v} out of range");
        let mut dist = vec![UNREACHABLE; self.n];
        dist[v] = 0;
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            for w in self.neighbours(u).iter() {
                if dist[w] == UNREACHABLE {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Largest pairwise distance, or `None` when the graph is disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for v in 0..self.n {
            let ecc = *self.distances_from(v).iter().max().unwrap();
            if ecc == UNREACHABLE {
                return None;
            }
            best = best.max(ecc);
        }
        Some(best)
    }

    /// First non-adjacent pair `(u, v)`, `u < v`, with no common neighbour.
    ///
    /// `None` exactly when the diameter is at most 2.
    pub fn distant_pair(&self) -> Option<(usize, usize)> {
        for u in 0..self.n {
            let mut reach = self.neighbours(u);
            for w in self.neighbours(u).iter() {
                reach = reach.union(&self.neighbours(w));
            }
            reach.insert(u);
            if let Some(v) = VertexSet::full(self.n).difference(&reach).iter().find(|&v| v > u) {
                return Some((u, v));
            }
        }
        None
    }

    pub fn has_diameter_at_most_two(&self) -> bool {
        self.distant_pair().is_none()
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = VertexSet::new();
        seen.insert(0);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::new();
            for u in frontier.iter() {
                next = next.union(&self.neighbours(u));
            }
            frontier = next.difference(&seen);
            seen = seen.union(&frontier);
        }
        seen.len() == self.n
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for root in 0..self.n {
            let mut dist = vec![UNREACHABLE; self.n];
            let mut parent = vec![UNREACHABLE; self.n];
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for w in self.neighbours(u).iter() {
                    if dist[w] == UNREACHABLE {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Induced subgraph on `vertices`, reindexed in increasing vertex order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if keep.is_empty() {
            return Err(Error::InvalidArgument("induced subgraph of empty set".into()));
        }
        if let Some(&v) = keep.iter().find(|&&v| v >= self.n) {
            return Err(Error::InvalidArgument(format!("vertex {v} out of range")));
        }
        let mut h = Graph::empty(keep.len())?;
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    h.set_edge(i, j);
                }
            }
        }
        Ok(h)
    }

    /// Induced subgraph on a vertex set.
    pub fn induced_on(&self, set: &VertexSet) -> Result<Graph> {
        self.induced_subgraph(&set.to_vec())
    }

    /// Relabeled copy in which old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut h = Graph::empty(self.n).expect("same order");
        for (u, v) in self.edges() {
            h.set_edge(perm[u], perm[v]);
        }
        h
    }

    /// Whether `perm` (old vertex `v` to `perm[v]`) maps the graph onto itself.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        perm.len() == self.n && self.edges().iter().all(|&(u, v)| self.has_edge(perm[u], perm[v]))
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Graph {
        assert!(u != v && u < self.n && v < self.n);
        let mut g = self.clone();
        g.set_edge(u, v);
        g
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        g.clear_edge(u, v);
        g
    }

    #[inline]
    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.bits[u * self.stride + (v >> 6)] |= 1u64 << (v & 63);
        self.bits[v * self.stride + (u >> 6)] |= 1u64 << (u & 63);
    }

    #[inline]
    pub(crate) fn clear_edge(&mut self, u: usize, v: usize) {
        self.bits[u * self.stride + (v >> 6)] &= !(1u64 << (v & 63));
        self.bits[v * self.stride + (u >> 6)] &= !(1u64 << (u & 63));
    }

    /// Copy with one extra vertex (index `n`) adjacent to `nbrs`.
    pub(crate) fn extended(&self, nbrs: &VertexSet) -> Result<Graph> {
        let mut h = Graph::empty(self.n + 1)?;
        for v in 0..self.n {
            h.bits[v * h.stride..v * h.stride + self.stride].copy_from_slice(self.row(v));
        }
        for w in nbrs.iter() {
            h.set_edge(self.n, w);
        }
        Ok(h)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Mutable staging area for building a [`Graph`].
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    graph: Graph,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Result<Self> {
        Ok(GraphBuilder {
            graph: Graph::empty(n)?,
        })
    }

    pub fn from_graph(g: &Graph) -> Self {
        GraphBuilder { graph: g.clone() }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> &mut Self {
        assert!(u != v && u < self.graph.n && v < self.graph.n, "bad edge ({u},{v})");
        self.graph.set_edge(u, v);
        self
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> &mut Self {
        self.graph.clear_edge(u, v);
        self
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.graph.has_edge(u, v)
    }

    pub fn current(&self) -> &Graph {
        &self.graph
    }

    pub fn build(self) -> Graph {
        self.graph
    }
}
