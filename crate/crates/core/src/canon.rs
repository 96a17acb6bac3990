//! Canonical labeling and automorphism statistics.
//!
//! Equitable partition refinement followed by an individualization search
//! tree. Leaves are ranked by the sequence of refinement traces along the
//! path, then by the relabeled adjacency matrix; the maximum leaf is the
//! canonical one. Automorphisms are collected whenever two leaves produce
//! the same relabeled matrix, and they prune sibling subtrees. The group
//! order is the product of the first-path stabilizer orbit lengths.

use std::cmp::Ordering;
use std::collections::VecDeque;

use num_bigint::BigUint;
use serde::Serialize;

use crate::bitset::VertexSet;
use crate::graph::Graph;
use crate::graph6::to_graph6;

/// Canonical form plus the automorphism group's order and orbit count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalReport {
    /// graph6 of the canonically relabeled graph.
    pub canonical_form: String,
    #[serde(serialize_with = "serialize_biguint")]
    pub aut_order: BigUint,
    pub orbit_count: usize,
}

pub(crate) fn serialize_biguint<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Full output of the canonical labeling search.
#[derive(Clone, Debug)]
pub struct Labeling {
    /// `lab[i]` is the original vertex placed at canonical position `i`.
    pub lab: Vec<usize>,
    /// Orbit representative (smallest member) of every vertex.
    pub orbits: Vec<usize>,
    pub aut_order: BigUint,
    /// Automorphisms found during the search; they generate the group.
    pub generators: Vec<Vec<usize>>,
}

impl Labeling {
    /// Canonical position of every original vertex.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.lab.len()];
        for (i, &v) in self.lab.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    pub fn canonical_graph(&self, g: &Graph) -> Graph {
        g.permuted(&self.positions())
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits.iter().enumerate().filter(|&(v, &r)| v == r).count()
    }
}

pub fn canonicalize(g: &Graph) -> CanonicalReport {
    let labeling = canonical_labeling(g);
    CanonicalReport {
        canonical_form: to_graph6(&labeling.canonical_graph(g)),
        orbit_count: labeling.orbit_count(),
        aut_order: labeling.aut_order,
    }
}

/// Canonical graph6 string only.
pub fn canonical_form(g: &Graph) -> String {
    to_graph6(&canonical_labeling(g).canonical_graph(g))
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b)
}

pub fn canonical_labeling(g: &Graph) -> Labeling {
    let n = g.n();
    let mut root = Partition::unit(n);
    let mut trace = Vec::new();
    refine(g, &mut root, &[0], &mut trace);

    let mut search = Search {
        g,
        first: None,
        best: None,
        generators: Vec::new(),
    };
    let mut path = Vec::new();
    let mut traces = vec![trace];
    search.visit(root, &mut path, &mut traces);

    let first = search.first.take().expect("search reaches a leaf");
    let best = search.best.take().expect("search reaches a leaf");
    let gens = search.generators;

    let mut aut_order = BigUint::from(1u32);
    for level in 0..first.path.len() {
        let orbits = orbits_of(n, gens.iter().filter(|gamma| fixes(gamma, &first.path[..level])));
        let v = first.path[level];
        let size = orbits.iter().filter(|&&r| r == orbits[v]).count();
        aut_order *= BigUint::from(size);
    }
    Labeling {
        lab: best.lab,
        orbits: orbits_of(n, gens.iter()),
        aut_order,
        generators: gens,
    }
}

fn fixes(gamma: &[usize], points: &[usize]) -> bool {
    points.iter().all(|&v| gamma[v] == v)
}

/// Orbit representatives (minimum vertex) under the group generated by `gens`.
fn orbits_of<'a>(n: usize, gens: impl Iterator<Item = &'a Vec<usize>>) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for gamma in gens {
        for (v, &w) in gamma.iter().enumerate() {
            let (a, b) = (find(&mut parent, v), find(&mut parent, w));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
}

/// Ordered partition of the vertex set into contiguous cells of `lab`.
#[derive(Clone, Debug)]
struct Partition {
    lab: Vec<usize>,
    /// End (exclusive) of the cell starting at each position; valid at cell starts.
    cell_end: Vec<usize>,
    /// Start of the cell holding each vertex.
    cell_of: Vec<usize>,
    cells: usize,
}

impl Partition {
    fn unit(n: usize) -> Self {
        let mut cell_end = vec![0; n];
        cell_end[0] = n;
        Partition {
            lab: (0..n).collect(),
            cell_end,
            cell_of: vec![0; n],
            cells: 1,
        }
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    /// First smallest non-singleton cell.
    fn target_cell(&self) -> usize {
        let n = self.lab.len();
        let mut best: Option<(usize, usize)> = None;
        let mut start = 0;
        while start < n {
            let size = self.cell_end[start] - start;
            if size > 1 && best.is_none_or(|(_, s)| size < s) {
                best = Some((start, size));
                if size == 2 {
                    break;
                }
            }
            start = self.cell_end[start];
        }
        best.expect("partition is not discrete").0
    }

    /// Moves `v` to the front of its cell as a singleton; returns its position.
    fn individualize(&mut self, v: usize) -> usize {
        let start = self.cell_of[v];
        let end = self.cell_end[start];
        let at = self.lab[start..end].iter().position(|&x| x == v).unwrap() + start;
        self.lab.swap(start, at);
        self.cell_end[start] = start + 1;
        self.cell_end[start + 1] = end;
        for &x in &self.lab[start + 1..end] {
            self.cell_of[x] = start + 1;
        }
        self.cells += 1;
        start
    }
}

/// Refines `p` to the coarsest equitable partition finer than it, starting
/// from the given splitter cells. Appends an isomorphism-invariant record
/// of every split to `trace`.
fn refine(g: &Graph, p: &mut Partition, splitters: &[usize], trace: &mut Vec<u64>) {
    let n = p.lab.len();
    let mut queued = vec![false; n];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &s in splitters {
        queued[s] = true;
        queue.push_back(s);
    }
    let mut counts: Vec<(usize, usize)> = Vec::with_capacity(n);

    while let Some(w) = queue.pop_front() {
        queued[w] = false;
        if p.is_discrete() {
            break;
        }
        let wend = p.cell_end[w];
        let wset: VertexSet = p.lab[w..wend].iter().copied().collect();
        trace.push(((w as u64) << 32) | (wend - w) as u64);

        let mut start = 0;
        while start < n {
            let end = p.cell_end[start];
            if end - start > 1 {
                counts.clear();
                counts.extend(p.lab[start..end].iter().map(|&x| (g.degree_into(x, &wset), x)));
                let c0 = counts[0].0;
                if counts.iter().any(|&(c, _)| c != c0) {
                    counts.sort_unstable();
                    let mut frags: Vec<(usize, usize)> = Vec::new();
                    let mut i = 0;
                    while i < counts.len() {
                        let c = counts[i].0;
                        let fs = start + i;
                        while i < counts.len() && counts[i].0 == c {
                            p.lab[start + i] = counts[i].1;
                            p.cell_of[counts[i].1] = fs;
                            i += 1;
                        }
                        p.cell_end[fs] = start + i;
                        frags.push((fs, start + i));
                        trace.push(((fs as u64) << 32) | c as u64);
                    }
                    p.cells += frags.len() - 1;
                    if queued[start] {
                        for &(fs, _) in &frags[1..] {
                            queued[fs] = true;
                            queue.push_back(fs);
                        }
                    } else {
                        let largest = frags
                            .iter()
                            .enumerate()
                            .max_by(|a, b| (a.1 .1 - a.1 .0).cmp(&(b.1 .1 - b.1 .0)).then(b.0.cmp(&a.0)))
                            .map(|(i, _)| i)
                            .unwrap();
                        for (i, &(fs, _)) in frags.iter().enumerate() {
                            if i != largest {
                                queued[fs] = true;
                                queue.push_back(fs);
                            }
                        }
                    }
                }
            }
            start = end;
        }
    }
    trace.push(u64::MAX - p.cells as u64);
}

struct Leaf {
    path: Vec<usize>,
    traces: Vec<Vec<u64>>,
    matrix: Vec<u64>,
    lab: Vec<usize>,
}

struct Search<'g> {
    g: &'g Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
}

/// Lexicographic comparison of trace sequences; a sequence that has
/// already ended ranks above one that continues.
fn compare_traces(current: &[Vec<u64>], other: &[Vec<u64>]) -> Ordering {
    for (i, t) in current.iter().enumerate() {
        match other.get(i) {
            None => return Ordering::Less,
            Some(o) => match t.cmp(o) {
                Ordering::Equal => {}
                ord => return ord,
            },
        }
    }
    Ordering::Equal
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl Search<'_> {
    fn relabeled(&self, lab: &[usize]) -> Vec<u64> {
        let n = lab.len();
        let stride = self.g.stride();
        let mut pos = vec![0; n];
        for (i, &v) in lab.iter().enumerate() {
            pos[v] = i;
        }
        let mut m = vec![0u64; n * stride];
        for (i, &v) in lab.iter().enumerate() {
            for w in self.g.neighbours(v).iter() {
                let j = pos[w];
                m[i * stride + (j >> 6)] |= 1u64 << (63 - (j & 63));
            }
        }
        m
    }

    fn record(&mut self, from: &[usize], to: &[usize]) {
        let mut gamma = vec![0; from.len()];
        for (&a, &b) in from.iter().zip(to) {
            gamma[a] = b;
        }
        debug_assert!(self.g.is_automorphism(&gamma));
        self.generators.push(gamma);
    }

    /// Returns `Some(level)` to unwind the search to the node at that depth.
    fn visit(&mut self, p: Partition, path: &mut Vec<usize>, traces: &mut Vec<Vec<u64>>) -> Option<usize> {
        let level = path.len();
        let first_eq = self
            .first
            .as_ref()
            .is_none_or(|f| f.traces.len() >= traces.len() && f.traces[..traces.len()] == traces[..]);
        let best_cmp = self
            .best
            .as_ref()
            .map_or(Ordering::Greater, |b| compare_traces(traces, &b.traces));
        if !first_eq && best_cmp == Ordering::Less {
            return None;
        }

        if p.is_discrete() {
            let matrix = self.relabeled(&p.lab);
            let leaf = || Leaf {
                path: path.clone(),
                traces: traces.clone(),
                matrix: matrix.clone(),
                lab: p.lab.clone(),
            };
            let Some(first) = self.first.as_ref() else {
                self.first = Some(leaf());
                self.best = Some(leaf());
                return None;
            };
            if first_eq && matrix == first.matrix {
                let (flab, fpath) = (first.lab.clone(), first.path.clone());
                self.record(&flab, &p.lab);
                return Some(common_prefix(path, &fpath));
            }
            let best = self.best.as_ref().unwrap();
            let replace = match best_cmp {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => match matrix.cmp(&best.matrix) {
                    Ordering::Greater => true,
                    Ordering::Less => false,
                    Ordering::Equal => {
                        let (blab, bpath) = (best.lab.clone(), best.path.clone());
                        self.record(&blab, &p.lab);
                        return Some(common_prefix(path, &bpath));
                    }
                },
            };
            if replace {
                self.best = Some(leaf());
            }
            return None;
        }

        let start = p.target_cell();
        let mut children = p.lab[start..p.cell_end[start]].to_vec();
        children.sort_unstable();
        let mut explored: Vec<usize> = Vec::new();
        let mut orbit_cache: Option<(usize, Vec<usize>)> = None;
        for &w in &children {
            if !explored.is_empty() {
                let stale = orbit_cache.as_ref().is_none_or(|(k, _)| *k != self.generators.len());
                if stale {
                    let orbits = orbits_of(
                        p.lab.len(),
                        self.generators.iter().filter(|gamma| fixes(gamma, path)),
                    );
                    orbit_cache = Some((self.generators.len(), orbits));
                }
                let orbits = &orbit_cache.as_ref().unwrap().1;
                if explored.iter().any(|&x| orbits[x] == orbits[w]) {
                    continue;
                }
            }
            let mut child = p.clone();
            let cell = child.individualize(w);
            let mut trace = Vec::new();
            refine(self.g, &mut child, &[cell], &mut trace);
            path.push(w);
            traces.push(trace);
            let jump = self.visit(child, path, traces);
            path.pop();
            traces.pop();
            explored.push(w);
            if let Some(target) = jump {
                if target < level {
                    return Some(target);
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph6::from_graph6;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn cycles_have_dihedral_groups() {
        for n in 3..12 {
            let r = canonicalize(&cycle(n));
            assert_eq!(r.aut_order, BigUint::from(2 * n), "C{n}");
            assert_eq!(r.orbit_count, 1);
        }
    }

    #[test]
    fn empty_and_complete() {
        let e = canonicalize(&Graph::empty(6).unwrap());
        assert_eq!(e.aut_order, BigUint::from(720u32));
        let k = Graph::from_edges(5, (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j)))).unwrap();
        let r = canonicalize(&k);
        assert_eq!(r.aut_order, BigUint::from(120u32));
        assert_eq!(r.orbit_count, 1);
        let one = canonicalize(&Graph::empty(1).unwrap());
        assert_eq!(one.aut_order, BigUint::from(1u32));
    }

    #[test]
    fn petersen_group() {
        let p = from_graph6("IheA@GUAo").unwrap();
        let r = canonicalize(&p);
        assert_eq!(r.aut_order, BigUint::from(120u32));
        assert_eq!(r.orbit_count, 1);
    }

    #[test]
    fn relabeling_invariance() {
        let p = from_graph6("IheA@GUAo").unwrap();
        let perm = [3, 7, 1, 9, 0, 2, 8, 4, 6, 5];
        assert_eq!(canonical_form(&p), canonical_form(&p.permuted(&perm)));
    }

    #[test]
    fn star_orbits() {
        let star = Graph::from_edges(6, (1..6).map(|i| (0, i))).unwrap();
        let r = canonicalize(&star);
        assert_eq!(r.orbit_count, 2);
        assert_eq!(r.aut_order, BigUint::from(120u32));
    }
}
