//! The witness predicate and the degree / strongly-regular inequalities
//! attached to triangle-free `K_{2,t}`-free graphs of diameter two.
//!
//! Theorem checkers reject inputs that violate their hypotheses instead
//! of returning a vacuous `true`.

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest `s` supported by [`find_kst`].
pub const MAX_KST_S: usize = 4;

/// A triangle `u < v < w`, if one exists.
pub fn find_triangle(g: &Graph) -> Option<[usize; 3]> {
    for u in 0..g.n() {
        for v in g.neighbours(u).iter().filter(|&v| v > u) {
            if let Some(w) = g.common_neighbours(u, v).iter().find(|&w| w > v) {
                return Some([u, v, w]);
            }
        }
    }
    None
}

pub fn is_triangle_free(g: &Graph) -> bool {
    find_triangle(g).is_none()
}

/// Vertex sets of a complete bipartite subgraph `K_{s,t}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Biclique {
    pub s_side: Vec<usize>,
    pub t_side: Vec<usize>,
}

impl Biclique {
    /// Whether the sets are disjoint and completely joined in `g`.
    pub fn verify(&self, g: &Graph) -> bool {
        let a: VertexSet = self.s_side.iter().copied().collect();
        let b: VertexSet = self.t_side.iter().copied().collect();
        a.len() == self.s_side.len()
            && b.len() == self.t_side.len()
            && a.intersection(&b).is_empty()
            && self
                .s_side
                .iter()
                .all(|&x| self.t_side.iter().all(|&y| g.has_edge(x, y)))
    }
}

fn check_st(s: usize, t: usize) -> Result<()> {
    if s == 0 || s > t {
        return Err(Error::InvalidArgument(format!("need 1 <= s <= t, got s={s}, t={t}")));
    }
    if s > MAX_KST_S {
        return Err(Error::Unsupported(format!("K_{{s,t}} search with s={s} > {MAX_KST_S}")));
    }
    Ok(())
}

/// Searches for a `K_{s,t}` subgraph (not necessarily induced).
///
/// `s = 2` scans co-degrees of vertex pairs; larger `s` backtracks over
/// increasing `s`-subsets while the common neighbourhood stays `>= t`.
pub fn find_kst(g: &Graph, s: usize, t: usize) -> Result<Option<Biclique>> {
    check_st(s, t)?;
    let n = g.n();
    let pick = |side: Vec<usize>, common: VertexSet| Biclique {
        s_side: side,
        t_side: common.iter().take(t).collect(),
    };
    if s == 1 {
        return Ok((0..n)
            .find(|&v| g.degree(v) >= t)
            .map(|v| pick(vec![v], g.neighbours(v))));
    }
    if s == 2 {
        for u in 0..n {
            if g.degree(u) < t {
                continue;
            }
            for v in u + 1..n {
                if g.codegree(u, v) >= t {
                    return Ok(Some(pick(vec![u, v], g.common_neighbours(u, v))));
                }
            }
        }
        return Ok(None);
    }
    let mut chosen = Vec::with_capacity(s);
    Ok(kst_backtrack(g, s, t, 0, VertexSet::full(n), &mut chosen).map(|(side, c)| pick(side, c)))
}

fn kst_backtrack(
    g: &Graph,
    s: usize,
    t: usize,
    from: usize,
    common: VertexSet,
    chosen: &mut Vec<usize>,
) -> Option<(Vec<usize>, VertexSet)> {
    if chosen.len() == s {
        return Some((chosen.clone(), common));
    }
    for v in from..g.n() {
        if g.degree(v) < t {
            continue;
        }
        let next = common.intersection(&g.neighbours(v));
        if next.len() < t {
            continue;
        }
        chosen.push(v);
        if let Some(found) = kst_backtrack(g, s, t, v + 1, next, chosen) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}

pub fn has_kst(g: &Graph, s: usize, t: usize) -> Result<bool> {
    Ok(find_kst(g, s, t)?.is_some())
}

/// Whether `g` is the star `K_{1,n-1}`. The single vertex and the single
/// edge both qualify.
pub fn is_star(g: &Graph) -> bool {
    star_centre(g).is_some()
}

fn star_centre(g: &Graph) -> Option<usize> {
    let n = g.n();
    if n == 1 {
        return Some(0);
    }
    if g.edge_count() != n - 1 {
        return None;
    }
    (0..n).find(|&v| g.degree(v) == n - 1)
}

/// Classes of the relation `N(v) = N(w)`, each sorted, ordered by smallest member.
pub fn twin_classes(g: &Graph) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut assigned = vec![false; g.n()];
    for v in 0..g.n() {
        if assigned[v] {
            continue;
        }
        let nv = g.row(v);
        let class: Vec<usize> = (v..g.n()).filter(|&w| !assigned[w] && g.row(w) == nv).collect();
        for &w in &class {
            assigned[w] = true;
        }
        classes.push(class);
    }
    classes
}

/// Evidence for a failed property, checkable against the graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Triangle { vertices: [usize; 3] },
    Biclique { s_side: Vec<usize>, t_side: Vec<usize> },
    /// Non-adjacent pair with no common neighbour.
    DistantPair { u: usize, v: usize },
    Twins { u: usize, v: usize },
    Star { centre: usize },
}

impl Violation {
    pub fn verify(&self, g: &Graph) -> bool {
        match self {
            Violation::Triangle { vertices: [a, b, c] } => {
                g.has_edge(*a, *b) && g.has_edge(*b, *c) && g.has_edge(*a, *c)
            }
            Violation::Biclique { s_side, t_side } => Biclique {
                s_side: s_side.clone(),
                t_side: t_side.clone(),
            }
            .verify(g),
            Violation::DistantPair { u, v } => {
                u != v && !g.has_edge(*u, *v) && g.common_neighbours(*u, *v).is_empty()
            }
            Violation::Twins { u, v } => u != v && g.row(*u) == g.row(*v),
            Violation::Star { centre } => {
                star_centre(g).is_some() && (g.n() == 1 || g.degree(*centre) == g.n() - 1)
            }
        }
    }
}

/// Evaluation of one graph against the `(s,t)`-witness predicate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub n: usize,
    pub edges: usize,
    pub s: usize,
    pub t: usize,
    pub triangle_free: bool,
    pub kst_free: bool,
    pub diameter_two: bool,
    pub is_star: bool,
    pub twin_free: bool,
    pub is_witness: bool,
    pub diagnostics: Vec<Violation>,
}

pub fn witness_report(g: &Graph, s: usize, t: usize) -> Result<WitnessReport> {
    let mut diagnostics = Vec::new();
    let triangle = find_triangle(g);
    if let Some(vertices) = triangle {
        diagnostics.push(Violation::Triangle { vertices });
    }
    let kst = find_kst(g, s, t)?;
    if let Some(b) = &kst {
        diagnostics.push(Violation::Biclique {
            s_side: b.s_side.clone(),
            t_side: b.t_side.clone(),
        });
    }
    let distant = g.distant_pair();
    if let Some((u, v)) = distant {
        diagnostics.push(Violation::DistantPair { u, v });
    }
    let centre = star_centre(g);
    if let Some(centre) = centre {
        diagnostics.push(Violation::Star { centre });
    }
    let twins = twin_classes(g).into_iter().find(|c| c.len() > 1);
    if let Some(c) = &twins {
        diagnostics.push(Violation::Twins { u: c[0], v: c[1] });
    }
    let (triangle_free, kst_free, diameter_two, is_star) =
        (triangle.is_none(), kst.is_none(), distant.is_none(), centre.is_some());
    Ok(WitnessReport {
        n: g.n(),
        edges: g.edge_count(),
        s,
        t,
        triangle_free,
        kst_free,
        diameter_two,
        is_star,
        twin_free: twins.is_none(),
        is_witness: triangle_free && kst_free && diameter_two && !is_star,
        diagnostics,
    })
}

/// Fast witness test for `(2,t)`: triangle-free, all co-degrees `< t`,
/// diameter at most 2 and not a star.
pub fn is_witness(g: &Graph, s: usize, t: usize) -> Result<bool> {
    Ok(is_triangle_free(g) && g.has_diameter_at_most_two() && !is_star(g) && !has_kst(g, s, t)?)
}

/// Confirms triangle-free, `K_{2,t}`-free, diameter at most two.
fn require_hypotheses(g: &Graph, t: usize, non_star: bool) -> Result<()> {
    if t < 2 {
        return Err(Error::InvalidArgument(format!("t must be at least 2, got {t}")));
    }
    if let Some(tri) = find_triangle(g) {
        return Err(Error::Rejected(format!("graph has triangle {tri:?}")));
    }
    if let Some(b) = find_kst(g, 2, t)? {
        return Err(Error::Rejected(format!(
            "graph contains K_{{2,{t}}} with sides {:?} / {:?}",
            b.s_side, b.t_side
        )));
    }
    if let Some((u, v)) = g.distant_pair() {
        return Err(Error::Rejected(format!(
            "diameter exceeds 2: vertices {u} and {v} have no common neighbour"
        )));
    }
    if non_star && is_star(g) {
        return Err(Error::Rejected("graph is a star".into()));
    }
    Ok(())
}

/// `(t-1)((t-1)·min_degree - t + 2) - t + 2`, the maximum-degree ceiling.
pub fn degree_bound(t: usize, min_degree: usize) -> i64 {
    let (t, d) = (t as i64, min_degree as i64);
    (t - 1) * ((t - 1) * d - t + 2) - t + 2
}

/// Maximum degree against [`degree_bound`] for a non-star witness.
pub fn check_degree_bound(g: &Graph, t: usize) -> Result<bool> {
    require_hypotheses(g, t, true)?;
    Ok(g.max_degree() as i64 <= degree_bound(t, g.min_degree()))
}

/// The three quantities of the degree-sum sandwich
/// `Σ(d² + (t-2)d)/(t-1) <= n(n-1) <= Σd²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSums {
    /// `Σ(d² + (t-2)d)`; the left quantity is this divided by `lhs_divisor`.
    pub lhs_numerator: u64,
    pub lhs_divisor: u64,
    pub mid: u64,
    pub rhs: u64,
    pub holds: bool,
}

impl DegreeSums {
    pub fn lhs(&self) -> f64 {
        self.lhs_numerator as f64 / self.lhs_divisor as f64
    }
}

pub fn check_degree_sum_inequalities(g: &Graph, t: usize) -> Result<DegreeSums> {
    require_hypotheses(g, t, false)?;
    let n = g.n() as u64;
    let t = t as u64;
    let degs = g.degrees();
    let lhs_numerator: u64 = degs.iter().map(|&d| (d * d) as u64 + (t - 2) * d as u64).sum();
    let rhs: u64 = degs.iter().map(|&d| (d * d) as u64).sum();
    let mid = n * (n - 1);
    Ok(DegreeSums {
        lhs_numerator,
        lhs_divisor: t - 1,
        mid,
        rhs,
        holds: lhs_numerator <= (t - 1) * mid && mid <= rhs,
    })
}

/// `Δ² >= n - 1` for a graph of diameter exactly two.
pub fn max_degree_floor(g: &Graph) -> Result<bool> {
    match g.diameter() {
        Some(2) => {}
        d => {
            return Err(Error::Rejected(format!(
                "diameter must be 2, found {}",
                d.map_or("infinite".to_string(), |d| d.to_string())
            )))
        }
    }
    let delta = g.max_degree();
    Ok(delta * delta >= g.n() - 1)
}

/// Parameters `(v, k, λ, μ)` of a strongly regular graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SrgParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
}

impl SrgParams {
    pub fn new(v: u64, k: u64, lambda: u64, mu: u64) -> Self {
        SrgParams { v, k, lambda, mu }
    }

    /// `k(k - λ - 1) = (v - k - 1)μ`.
    pub fn is_consistent(&self) -> bool {
        let (v, k, l, m) = (self.v as i128, self.k as i128, self.lambda as i128, self.mu as i128);
        v > k && k * (k - l - 1) == (v - k - 1) * m
    }
}

/// Strongly regular parameters, when every adjacent pair shares `λ`
/// neighbours and every non-adjacent pair shares `μ >= 1`.
///
/// Complete graphs have no non-adjacent pair and return `None`.
pub fn srg_params(g: &Graph) -> Option<SrgParams> {
    let n = g.n();
    let k = g.degree(0);
    if (1..n).any(|v| g.degree(v) != k) {
        return None;
    }
    let mut lambda = None;
    let mut mu = None;
    for u in 0..n {
        for v in u + 1..n {
            let c = g.codegree(u, v);
            let slot = if g.has_edge(u, v) { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some(c),
                Some(x) if x != c => return None,
                _ => {}
            }
        }
    }
    let mu = mu?;
    if mu == 0 {
        return None;
    }
    Some(SrgParams::new(n as u64, k as u64, lambda.unwrap_or(0) as u64, mu as u64))
}

fn isqrt_exact(x: i128) -> Option<i128> {
    if x < 0 {
        return None;
    }
    let r = (x as f64).sqrt() as i128;
    (r.saturating_sub(2)..=r + 2).find(|&c| c >= 0 && c * c == x)
}

/// Eigenvalue-multiplicity integrality for strongly regular parameters.
///
/// The multiplicities are `½((v-1) ∓ N/√D)` with `N = 2k + (v-1)(λ-μ)` and
/// `D = (λ-μ)² + 4(k-μ)`. When `D` is not a square the only escape is
/// `N = 0` with `v` odd (the conference case).
pub fn srg_integrality(p: &SrgParams) -> Result<bool> {
    if !p.is_consistent() {
        return Err(Error::Rejected(format!(
            "inconsistent parameters {p:?}: k(k-λ-1) != (v-k-1)μ"
        )));
    }
    let (v, k, l, m) = (p.v as i128, p.k as i128, p.lambda as i128, p.mu as i128);
    let disc = (l - m) * (l - m) + 4 * (k - m);
    let num = 2 * k + (v - 1) * (l - m);
    if disc <= 0 {
        return Err(Error::Rejected(format!("degenerate discriminant for {p:?}")));
    }
    match isqrt_exact(disc) {
        Some(r) => {
            if num % r != 0 {
                return Ok(false);
            }
            let q = num / r;
            let (f, g) = (v - 1 - q, v - 1 + q);
            Ok(f >= 0 && g >= 0 && f % 2 == 0 && g % 2 == 0)
        }
        None => Ok(num == 0 && (v - 1) % 2 == 0),
    }
}

/// `(1 + d(d+1)/2, 1 + d²)`: the order range of a `d`-regular witness.
pub fn regular_witness_bracket(d: usize) -> Result<(usize, usize)> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("degree must be at least 2, got {d}")));
    }
    Ok((1 + d * (d + 1) / 2, 1 + d * d))
}

/// Whether every non-edge of a triangle-free graph closes a triangle.
pub fn is_edge_maximal_triangle_free(g: &Graph) -> Result<bool> {
    if let Some(tri) = find_triangle(g) {
        return Err(Error::Rejected(format!("graph has triangle {tri:?}")));
    }
    Ok(g.has_diameter_at_most_two())
}
