//! Named graphs and the graph operations used to produce new witnesses.

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, MAX_VERTICES};
use crate::graph6::from_graph6;
use crate::properties::{find_kst, is_star, twin_classes};
use crate::quotient::QuotientMultigraph;

const GEWIRTZ_G6: &str = include_str!("../data/gewirtz.g6");
const SUBDIVIDED_K23_G6: &str = include_str!("../data/subdivided_k23.g6");

/// Names accepted by [`named`].
pub const NAMES: [&str; 9] = [
    "c4",
    "c5",
    "mobius8",
    "petersen",
    "groetzsch",
    "clebsch",
    "hoffman_singleton",
    "gewirtz",
    "subdivided_k23",
];

pub fn named(name: &str) -> Result<Graph> {
    match name {
        "c4" => Ok(cycle(4)),
        "c5" => Ok(cycle(5)),
        "mobius8" => Ok(mobius_ladder(8)),
        "petersen" => Ok(petersen()),
        "groetzsch" => Ok(groetzsch()),
        "clebsch" => Ok(clebsch()),
        "hoffman_singleton" => Ok(hoffman_singleton()),
        "gewirtz" => Ok(from_graph6(GEWIRTZ_G6.trim())?),
        "subdivided_k23" => Ok(from_graph6(SUBDIVIDED_K23_G6.trim())?),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
}

/// `2m` vertices on a cycle plus the `m` antipodal chords.
fn mobius_ladder(n: usize) -> Graph {
    let edges = (0..n).map(|i| (i, (i + 1) % n)).chain((0..n / 2).map(|i| (i, i + n / 2)));
    Graph::from_edges(n, edges).expect("valid ladder")
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i ~ i+5`.
fn petersen() -> Graph {
    let edges = (0..5).flat_map(|i| [(i, (i + 1) % 5), (5 + i, 5 + (i + 2) % 5), (i, i + 5)]);
    Graph::from_edges(10, edges).expect("valid Petersen")
}

/// Mycielskian of C5: cycle `0..5`, shadows `5..10`, hub `10`.
fn groetzsch() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, (i + 1) % 5));
        edges.push((5 + i, (i + 4) % 5));
        edges.push((5 + i, 10));
    }
    Graph::from_edges(11, edges).expect("valid Grötzsch")
}

/// Folded 5-cube: `Z_2^4`, differences of weight 1 or 4.
fn clebsch() -> Graph {
    let mut edges = Vec::new();
    for x in 0..16usize {
        for d in [1, 2, 4, 8, 15] {
            if x < x ^ d {
                edges.push((x, x ^ d));
            }
        }
    }
    Graph::from_edges(16, edges).expect("valid Clebsch")
}

/// Pentagons `P_h` at `5h + i`, pentagrams `Q_k` at `25 + 5k + j`,
/// `P_h(i) ~ Q_k(j)` iff `j = hk + i (mod 5)`.
fn hoffman_singleton() -> Graph {
    let p = |h: usize, i: usize| 5 * h + i % 5;
    let q = |k: usize, j: usize| 25 + 5 * k + j % 5;
    let mut edges = Vec::new();
    for h in 0..5 {
        for i in 0..5 {
            edges.push((p(h, i), p(h, i + 1)));
            edges.push((q(h, i), q(h, i + 2)));
            for k in 0..5 {
                edges.push((p(h, i), q(k, h * k + i)));
            }
        }
    }
    Graph::from_edges(50, edges).expect("valid Hoffman–Singleton")
}

/// Kneser graph on the `k`-subsets of `0..n` (lexicographic order),
/// adjacent when disjoint.
pub fn kneser(n: usize, k: usize) -> Result<Graph> {
    if k == 0 || n < 2 * k {
        return Err(Error::InvalidArgument(format!("kneser needs n >= 2k >= 2, got n={n}, k={k}")));
    }
    // C(n, i) grows with i up to n/2, so the running value can stop at the cap
    let mut count: u128 = 1;
    for i in 0..k {
        count = count * (n - i) as u128 / (i + 1) as u128;
        if count > MAX_VERTICES as u128 {
            return Err(Error::size_cap("binomial(n, k)", count.min(usize::MAX as u128) as usize, MAX_VERTICES));
        }
    }
    let count = count as usize;
    let mut subsets: Vec<Vec<usize>> = Vec::with_capacity(count);
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        subsets.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    let disjoint = |a: &[usize], b: &[usize]| a.iter().all(|x| b.binary_search(x).is_err());
    let mut b = GraphBuilder::new(subsets.len())?;
    for i in 0..subsets.len() {
        for j in i + 1..subsets.len() {
            if disjoint(&subsets[i], &subsets[j]) {
                b.add_edge(i, j);
            }
        }
    }
    Ok(b.build())
}

/// Parameters of the 4-cycle / 5-cycle expansion of `K_{k,ℓ}`.
///
/// `matchings[i][j][a] = b` joins vertex `a` of `C_i` to vertex `b` of `D_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionSpec {
    pub k: usize,
    pub l: usize,
    pub cycle_length: usize,
    pub matchings: Vec<Vec<Vec<usize>>>,
}

impl ExpansionSpec {
    /// Every pair `(i, j)` uses the same bijection.
    pub fn uniform(k: usize, l: usize, cycle_length: usize, matching: Vec<usize>) -> Self {
        ExpansionSpec {
            k,
            l,
            cycle_length,
            matchings: vec![vec![matching; l]; k],
        }
    }

    fn c(&self, i: usize, a: usize) -> usize {
        i * self.cycle_length + a
    }

    fn d(&self, j: usize, b: usize) -> usize {
        (self.k + j) * self.cycle_length + b
    }
}

fn pair_pattern(cycle_length: usize) -> Result<Graph> {
    match cycle_length {
        4 => Ok(mobius_ladder(8)),
        5 => Ok(petersen()),
        _ => Err(Error::InvalidArgument(format!("cycle length must be 4 or 5, got {cycle_length}"))),
    }
}

fn is_bijection(m: &[usize], len: usize) -> bool {
    let mut seen = vec![false; len];
    m.len() == len && m.iter().all(|&b| b < len && !std::mem::replace(&mut seen[b], true))
}

/// Two labelled `L`-cycles joined by `matching`.
fn cycle_pair(len: usize, matching: &[usize]) -> Graph {
    let edges = (0..len)
        .flat_map(|a| [(a, (a + 1) % len), (len + a, len + (a + 1) % len), (a, len + matching[a])]);
    Graph::from_edges(2 * len, edges).expect("valid pair")
}

/// All bijections between two labelled `L`-cycles whose union is the
/// Möbius ladder (`L = 4`) or the Petersen graph (`L = 5`).
pub fn enumerate_valid_matchings(cycle_length: usize) -> Result<Vec<Vec<usize>>> {
    let target = canonical_form(&pair_pattern(cycle_length)?);
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..cycle_length).collect();
    permutations(&mut perm, 0, &mut |p| {
        if canonical_form(&cycle_pair(cycle_length, p)) == target {
            out.push(p.to_vec());
        }
    });
    Ok(out)
}

/// Lexicographic order is not needed; Heap-style recursion over positions.
fn permutations(p: &mut Vec<usize>, at: usize, f: &mut dyn FnMut(&[usize])) {
    if at == p.len() {
        f(p);
        return;
    }
    for i in at..p.len() {
        p.swap(at, i);
        permutations(p, at + 1, f);
        p.swap(at, i);
    }
}

pub fn cycle_expansion(spec: &ExpansionSpec) -> Result<Graph> {
    let len = spec.cycle_length;
    let target = canonical_form(&pair_pattern(len)?);
    if spec.k == 0 || spec.l == 0 {
        return Err(Error::InvalidArgument("k and ℓ must be positive".into()));
    }
    let n = len * (spec.k + spec.l);
    if n > MAX_VERTICES {
        return Err(Error::size_cap("expanded vertex count", n, MAX_VERTICES));
    }
    if spec.matchings.len() != spec.k || spec.matchings.iter().any(|row| row.len() != spec.l) {
        return Err(Error::InvalidArgument(format!(
            "matchings must form a {}x{} table",
            spec.k, spec.l
        )));
    }
    for (i, row) in spec.matchings.iter().enumerate() {
        for (j, m) in row.iter().enumerate() {
            if !is_bijection(m, len) {
                return Err(Error::Rejected(format!("matching ({i},{j}) is not a bijection: {m:?}")));
            }
            if canonical_form(&cycle_pair(len, m)) != target {
                return Err(Error::Rejected(format!(
                    "matching ({i},{j}) does not induce the {} pattern",
                    if len == 4 { "Möbius ladder" } else { "Petersen" }
                )));
            }
        }
    }
    let mut b = GraphBuilder::new(n)?;
    for part in 0..spec.k + spec.l {
        for a in 0..len {
            b.add_edge(part * len + a, part * len + (a + 1) % len);
        }
    }
    for (i, row) in spec.matchings.iter().enumerate() {
        for (j, m) in row.iter().enumerate() {
            for (a, &bb) in m.iter().enumerate() {
                b.add_edge(spec.c(i, a), spec.d(j, bb));
            }
        }
    }
    Ok(b.build())
}

/// Replaces `v` by `r` pairwise non-adjacent copies; new copies are `n..n+r-1`.
pub fn blow_up(g: &Graph, v: usize, r: usize) -> Result<Graph> {
    if r == 0 {
        return Err(Error::InvalidArgument("blow-up factor must be at least 1".into()));
    }
    if v >= g.n() {
        return Err(Error::InvalidArgument(format!("vertex {v} out of range")));
    }
    let n = g.n() + r - 1;
    if n > MAX_VERTICES {
        return Err(Error::size_cap("blown-up vertex count", n, MAX_VERTICES));
    }
    let mut b = GraphBuilder::new(n)?;
    for (x, y) in g.edges() {
        b.add_edge(x, y);
    }
    for copy in g.n()..n {
        for w in g.neighbours(v).iter() {
            b.add_edge(copy, w);
        }
    }
    Ok(b.build())
}

/// Identifies the vertices of every twin class (`threshold = None`) or
/// of every class with at least `threshold` members. Each class keeps its
/// smallest vertex; survivors are relabelled in increasing order.
pub fn twin_quotient(g: &Graph, threshold: Option<usize>) -> Graph {
    let mut keep = vec![true; g.n()];
    for class in twin_classes(g) {
        if threshold.map_or(true, |t| class.len() >= t) {
            for &v in &class[1..] {
                keep[v] = false;
            }
        }
    }
    let survivors: Vec<usize> = (0..g.n()).filter(|&v| keep[v]).collect();
    g.induced_subgraph(&survivors).expect("at least one survivor")
}

/// Adds vertex `n` adjacent to every existing vertex.
pub fn add_dominating_vertex(g: &Graph) -> Result<Graph> {
    if g.n() + 1 > MAX_VERTICES {
        return Err(Error::size_cap("vertex count", g.n() + 1, MAX_VERTICES));
    }
    g.extended(&crate::bitset::VertexSet::full(g.n()))
}

/// A fixed-point-free involution of `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involution(Vec<usize>);

impl Involution {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        for (v, &w) in map.iter().enumerate() {
            if w >= n {
                return Err(Error::InvalidArgument(format!("image {w} of {v} out of range")));
            }
            if w == v {
                return Err(Error::InvalidArgument(format!("fixed point at {v}")));
            }
            if map[w] != v {
                return Err(Error::InvalidArgument(format!("not an involution: {v} -> {w} -> {}", map[w])));
            }
        }
        Ok(Involution(map))
    }

    pub fn image(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Orbit index of each vertex, orbits numbered by their smaller member.
    pub fn orbit_index(&self) -> Vec<usize> {
        let mut idx = vec![usize::MAX; self.0.len()];
        let mut next = 0;
        for v in 0..self.0.len() {
            if idx[v] == usize::MAX {
                idx[v] = next;
                idx[self.0[v]] = next;
                next += 1;
            }
        }
        idx
    }

    /// All fixed-point-free involutions among the automorphisms generated
    /// by brute force; only for tiny graphs.
    pub fn automorphisms_of(g: &Graph) -> Vec<Involution> {
        let n = g.n();
        let mut out = Vec::new();
        if n % 2 != 0 || n > 10 {
            return out;
        }
        let mut map = vec![usize::MAX; n];
        involution_search(g, &mut map, &mut out);
        out
    }
}

fn involution_search(g: &Graph, map: &mut Vec<usize>, out: &mut Vec<Involution>) {
    let Some(v) = map.iter().position(|&x| x == usize::MAX) else {
        if g.is_automorphism(map) {
            out.push(Involution(map.clone()));
        }
        return;
    };
    for w in v + 1..map.len() {
        if map[w] == usize::MAX && g.degree(v) == g.degree(w) {
            map[v] = w;
            map[w] = v;
            involution_search(g, map, out);
            map[v] = usize::MAX;
            map[w] = usize::MAX;
        }
    }
}

/// Identifies each orbit of `pi`, keeping loops and multiple edges.
///
/// Edges are counted per `pi`-orbit: `{u, v}` and `{pi(u), pi(v)}` give a
/// single quotient edge, matching the lift rule of [`expand_double_cover`].
pub fn double_cover_quotient(g: &Graph, pi: &Involution) -> Result<QuotientMultigraph> {
    if pi.0.len() != g.n() {
        return Err(Error::InvalidArgument(format!(
            "involution acts on {} points, graph has {}",
            pi.0.len(),
            g.n()
        )));
    }
    let idx = pi.orbit_index();
    let mut q = QuotientMultigraph::new(g.n() / 2);
    let key = |u: usize, v: usize| (u.min(v), u.max(v));
    for (u, v) in g.edges() {
        // an edge and its image form one quotient edge
        let image = key(pi.image(u), pi.image(v));
        if (u, v) <= image || !g.has_edge(image.0, image.1) {
            q.add_edge(idx[u], idx[v]);
        }
    }
    q.from_automorphism = g.is_automorphism(&pi.0);
    Ok(q)
}

/// Witness filter applied while lifting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LiftFilter {
    pub s: usize,
    pub t: usize,
}

/// Lazily enumerates the lifts of `q`. Quotient vertex `a` lifts to
/// `2a, 2a+1`; a loop lifts to the edge between them, a double edge to
/// both matchings, and a simple edge to one of the two matchings.
///
/// With a filter, partial lifts containing a triangle or a `K_{2,t}` are
/// pruned and only witnesses are yielded.
pub fn expand_double_cover(q: &QuotientMultigraph, filter: Option<LiftFilter>) -> Result<DoubleCoverLifts> {
    q.check_invariants()?;
    let n = 2 * q.m();
    if n == 0 || n > MAX_VERTICES {
        return Err(Error::size_cap("lifted vertex count", n, MAX_VERTICES));
    }
    let mut base = Graph::empty(n)?;
    let mut simple = Vec::new();
    for ((a, b), mult) in q.edges() {
        if a == b {
            base.set_edge(2 * a, 2 * a + 1);
        } else if mult == 2 {
            for (x, y) in [(0, 0), (1, 1), (0, 1), (1, 0)] {
                base.set_edge(2 * a + x, 2 * b + y);
            }
        } else {
            simple.push((a, b));
        }
    }
    let mut lifts = DoubleCoverLifts {
        graph: base,
        simple,
        filter,
        stack: Vec::new(),
        started: false,
        done: false,
    };
    if let Some(f) = filter {
        lifts.done = !lifts.partial_ok_all() || (f.s != 2 && find_kst(&lifts.graph, f.s, f.t)?.is_some());
    }
    Ok(lifts)
}

/// Iterator returned by [`expand_double_cover`].
#[derive(Debug)]
pub struct DoubleCoverLifts {
    graph: Graph,
    simple: Vec<(usize, usize)>,
    filter: Option<LiftFilter>,
    /// Choice made at each decided simple edge.
    stack: Vec<u8>,
    started: bool,
    done: bool,
}

impl DoubleCoverLifts {
    fn matching(&self, depth: usize, choice: u8) -> [(usize, usize); 2] {
        let (a, b) = self.simple[depth];
        if choice == 0 {
            [(2 * a, 2 * b), (2 * a + 1, 2 * b + 1)]
        } else {
            [(2 * a, 2 * b + 1), (2 * a + 1, 2 * b)]
        }
    }

    fn partial_ok_all(&self) -> bool {
        let Some(f) = self.filter else { return true };
        let g = &self.graph;
        (0..g.n()).all(|u| {
            (u + 1..g.n()).all(|v| {
                let c = g.codegree(u, v);
                if g.has_edge(u, v) {
                    c == 0
                } else {
                    f.s != 2 || c < f.t
                }
            })
        })
    }

    /// Triangle and `K_{2,t}` test local to the two edges just added.
    fn partial_ok(&self, added: &[(usize, usize); 2]) -> bool {
        let Some(f) = self.filter else { return true };
        let g = &self.graph;
        for &(u, v) in added {
            if g.codegree(u, v) > 0 {
                return false;
            }
            if f.s == 2 {
                for (x, y) in [(u, v), (v, u)] {
                    for w in g.neighbours(y).iter() {
                        if w != x && g.codegree(x, w) >= f.t {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn apply(&mut self, depth: usize, choice: u8) -> bool {
        let m = self.matching(depth, choice);
        for &(u, v) in &m {
            self.graph.set_edge(u, v);
        }
        if self.partial_ok(&m) {
            true
        } else {
            self.undo(depth, choice);
            false
        }
    }

    fn undo(&mut self, depth: usize, choice: u8) {
        for (u, v) in self.matching(depth, choice) {
            self.graph.clear_edge(u, v);
        }
    }

    fn accept_leaf(&self) -> bool {
        let Some(f) = self.filter else { return true };
        let g = &self.graph;
        g.has_diameter_at_most_two()
            && !is_star(g)
            && (f.s == 2 || matches!(find_kst(g, f.s, f.t), Ok(None)))
    }

    /// Moves to the next sibling or ancestor sibling; false when exhausted.
    fn backtrack(&mut self) -> bool {
        while let Some(choice) = self.stack.pop() {
            let depth = self.stack.len();
            self.undo(depth, choice);
            if choice == 0 && self.apply(depth, 1) {
                self.stack.push(1);
                return true;
            }
        }
        false
    }

    /// Descends greedily; false if the current branch dies before a leaf.
    fn descend(&mut self) -> bool {
        while self.stack.len() < self.simple.len() {
            let depth = self.stack.len();
            if self.apply(depth, 0) {
                self.stack.push(0);
            } else if self.apply(depth, 1) {
                self.stack.push(1);
            } else {
                return false;
            }
        }
        true
    }
}

impl Iterator for DoubleCoverLifts {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.done {
            return None;
        }
        loop {
            let ok = if !self.started {
                self.started = true;
                self.descend()
            } else if self.backtrack() {
                self.descend()
            } else {
                self.done = true;
                return None;
            };
            if ok && self.accept_leaf() {
                return Some(self.graph.clone());
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::{are_isomorphic, canonicalize};
    use crate::properties::{is_triangle_free, srg_params, witness_report, SrgParams};

    #[test]
    fn named_shapes() {
        for (name, n, e) in [
            ("c4", 4, 4),
            ("c5", 5, 5),
            ("mobius8", 8, 12),
            ("petersen", 10, 15),
            ("groetzsch", 11, 20),
            ("clebsch", 16, 40),
            ("hoffman_singleton", 50, 175),
            ("gewirtz", 56, 280),
            ("subdivided_k23", 6, 7),
        ] {
            let g = named(name).unwrap();
            assert_eq!((g.n(), g.edge_count()), (n, e), "{name}");
        }
        assert!(matches!(named("k33"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn clebsch_is_srg() {
        assert_eq!(srg_params(&named("clebsch").unwrap()), Some(SrgParams::new(16, 5, 0, 2)));
    }

    #[test]
    fn kneser_graphs() {
        assert!(are_isomorphic(&kneser(5, 2).unwrap(), &named("petersen").unwrap()));
        let m = kneser(4, 2).unwrap();
        assert_eq!((m.n(), m.edge_count(), m.max_degree()), (6, 3, 1));
        let k = kneser(5, 2).unwrap();
        assert!(is_triangle_free(&k) && k.has_diameter_at_most_two());
        assert!(kneser(3, 2).is_err());
        assert!(matches!(kneser(20, 10), Err(Error::SizeCap { .. })));
        assert_eq!(kneser(512, 1).unwrap().edge_count(), 512 * 511 / 2);
    }

    #[test]
    fn matchings_by_brute_force() {
        for len in [4, 5] {
            let valid = enumerate_valid_matchings(len).unwrap();
            assert!(!valid.is_empty());
            let target = pair_pattern(len).unwrap();
            for m in &valid {
                assert!(are_isomorphic(&cycle_pair(len, m), &target));
            }
        }
    }

    #[test]
    fn expansions() {
        let m4 = enumerate_valid_matchings(4).unwrap()[0].clone();
        let g = cycle_expansion(&ExpansionSpec::uniform(1, 1, 4, m4.clone())).unwrap();
        assert!(are_isomorphic(&g, &named("mobius8").unwrap()));
        let m5 = enumerate_valid_matchings(5).unwrap()[0].clone();
        let g = cycle_expansion(&ExpansionSpec::uniform(1, 1, 5, m5)).unwrap();
        assert!(are_isomorphic(&g, &named("petersen").unwrap()));

        let g = cycle_expansion(&ExpansionSpec::uniform(1, 2, 4, m4)).unwrap();
        let mut d = g.degrees();
        d.sort();
        assert_eq!(d, [vec![3; 8], vec![4; 4]].concat());
        let r = witness_report(&g, 2, 3).unwrap();
        assert!(r.triangle_free && r.kst_free);

        let bad = ExpansionSpec::uniform(1, 1, 4, vec![0, 1, 2, 3]);
        assert!(matches!(cycle_expansion(&bad), Err(Error::Rejected(_))));
    }

    #[test]
    fn blow_ups_and_quotients() {
        let c4 = cycle(4);
        let k23 = blow_up(&c4, 0, 2).unwrap();
        assert_eq!(k23.edge_count(), 6);
        assert!(are_isomorphic(&twin_quotient(&k23, None), &Graph::from_edges(2, [(0, 1)]).unwrap()));
        let k13 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let k14 = blow_up(&k13, 1, 2).unwrap();
        assert!(is_star(&k14) && k14.n() == 5);
        assert_eq!(blow_up(&c4, 1, 1).unwrap(), c4);
        // opposite vertices of C4 are twins, so both quotients collapse to K_2
        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(twin_quotient(&c4, None), k2);
        assert!(are_isomorphic(&twin_quotient(&blow_up(&c4, 2, 5).unwrap(), None), &k2));
        let c5 = cycle(5);
        assert!(are_isomorphic(&twin_quotient(&blow_up(&c5, 2, 5).unwrap(), None), &c5));
        let p = named("petersen").unwrap();
        assert_eq!(twin_quotient(&p, None), p);
        // classes of size 2 in K_{2,3} survive a threshold of 3
        assert_eq!(twin_quotient(&k23, Some(3)).n(), 3);
    }

    #[test]
    fn dominating_vertex() {
        let w4 = add_dominating_vertex(&cycle(4)).unwrap();
        assert_eq!(w4.diameter(), Some(2));
        assert_eq!(w4.degree(4), 4);
    }

    #[test]
    fn involutions() {
        assert!(Involution::new(vec![1, 0, 2]).is_err());
        assert!(Involution::new(vec![1, 2, 0]).is_err());
        let pi = Involution::new(vec![2, 3, 0, 1]).unwrap();
        let q = double_cover_quotient(&cycle(4), &pi).unwrap();
        assert_eq!((q.m(), q.multiplicity(0, 1), q.from_automorphism), (2, 2, true));

        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        let q = double_cover_quotient(&k2, &Involution::new(vec![1, 0]).unwrap()).unwrap();
        assert_eq!(q.loops().collect::<Vec<_>>(), vec![0]);
        let lifts: Vec<Graph> = expand_double_cover(&q, None).unwrap().collect();
        assert_eq!(lifts, vec![k2]);
    }

    #[test]
    fn unfiltered_lift_count() {
        // path a-b-c: two simple edges
        let mut q = QuotientMultigraph::new(3);
        q.add_edge(0, 1);
        q.add_edge(1, 2);
        assert_eq!(expand_double_cover(&q, None).unwrap().count(), 4);
        let mut q = QuotientMultigraph::new(2);
        q.add_edge(0, 1);
        assert_eq!(expand_double_cover(&q, None).unwrap().count(), 2);
    }

    #[test]
    fn mobius_recovered_from_its_quotients() {
        let g = named("mobius8").unwrap();
        let target = canonical_form(&g);
        let invs = Involution::automorphisms_of(&g);
        assert!(!invs.is_empty());
        for pi in invs {
            let q = double_cover_quotient(&g, &pi).unwrap();
            // the lift labels orbit a as 2a, 2a+1; relabel g the same way
            let idx = pi.orbit_index();
            let mut perm = vec![0; g.n()];
            for v in 0..g.n() {
                perm[v] = 2 * idx[v] + usize::from(v > pi.image(v));
            }
            let relabelled = g.permuted(&perm);
            let all: Vec<Graph> = expand_double_cover(&q, None).unwrap().collect();
            assert!(all.contains(&relabelled));
            let filtered: Vec<Graph> = expand_double_cover(&q, Some(LiftFilter { s: 2, t: 3 }))
                .unwrap()
                .collect();
            assert!(filtered.iter().any(|h| canonical_form(h) == target));
            assert!(filtered.iter().all(|h| witness_report(h, 2, 3).unwrap().is_witness));
        }
    }

    #[test]
    fn gewirtz_symmetry() {
        let r = canonicalize(&named("gewirtz").unwrap());
        assert_eq!((r.aut_order.to_string(), r.orbit_count), ("80640".to_string(), 1));
    }
}
