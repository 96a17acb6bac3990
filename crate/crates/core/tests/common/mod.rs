//! Brute-force oracles shared by the integration tests. They work from
//! adjacency matrices only and share no code with the crate's checkers.

#![allow(dead_code)]

use diam2::Graph;
use rand::Rng;

pub type Matrix = Vec<Vec<bool>>;

pub fn matrix(g: &Graph) -> Matrix {
    (0..g.n()).map(|u| (0..g.n()).map(|v| g.has_edge(u, v)).collect()).collect()
}

pub fn degrees(m: &Matrix) -> Vec<usize> {
    m.iter().map(|r| r.iter().filter(|&&b| b).count()).collect()
}

pub fn triangle_free(m: &Matrix) -> bool {
    let n = m.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if m[a][b] && m[b][c] && m[a][c] {
                    return false;
                }
            }
        }
    }
    true
}

fn subsets(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if cur.len() == k {
        return f(cur);
    }
    for x in from..n {
        cur.push(x);
        if subsets(n, k, x + 1, cur, f) {
            return true;
        }
        cur.pop();
    }
    false
}

/// Some `s`-set has at least `t` common neighbours.
pub fn has_kst(m: &Matrix, s: usize, t: usize) -> bool {
    let n = m.len();
    subsets(n, s, 0, &mut Vec::new(), &mut |a| {
        (0..n).filter(|&y| a.iter().all(|&x| m[x][y])).count() >= t
    })
}

/// All-pairs distances by Floyd–Warshall; `usize::MAX` when disconnected.
pub fn distances(m: &Matrix) -> Vec<Vec<usize>> {
    let n = m.len();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for u in 0..n {
        for v in 0..n {
            if u == v {
                d[u][v] = 0;
            } else if m[u][v] {
                d[u][v] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

pub fn diameter_at_most_two(m: &Matrix) -> bool {
    let n = m.len();
    (0..n).all(|u| (0..n).all(|v| u == v || m[u][v] || (0..n).any(|w| m[u][w] && m[w][v])))
}

pub fn is_star(m: &Matrix) -> bool {
    let n = m.len();
    let e: usize = degrees(m).iter().sum::<usize>() / 2;
    e == n - 1 && degrees(m).iter().any(|&d| d == n - 1)
}

pub fn is_witness(m: &Matrix, s: usize, t: usize) -> bool {
    triangle_free(m) && diameter_at_most_two(m) && !is_star(m) && !has_kst(m, s, t)
}

/// Theorem 2.1, both inequalities of Proposition 2.2 and `Δ² >= n-1`, as
/// stated in the paper; returns the names of violated statements.
pub fn theorem_violations(g: &Graph, t: usize) -> Vec<&'static str> {
    let m = matrix(g);
    let d = degrees(&m);
    let n = d.len() as i64;
    let (t, delta, big) = (t as i64, *d.iter().min().unwrap() as i64, *d.iter().max().unwrap() as i64);
    let mut bad = Vec::new();
    if big > (t - 1) * ((t - 1) * delta - t + 2) - t + 2 {
        bad.push("theorem 2.1");
    }
    let sq: i64 = d.iter().map(|&x| (x * x) as i64).sum();
    let lin: i64 = d.iter().map(|&x| x as i64).sum();
    if sq + (t - 2) * lin > (t - 1) * n * (n - 1) {
        bad.push("proposition 2.2 lower");
    }
    if n * (n - 1) > sq {
        bad.push("proposition 2.2 upper");
    }
    if big * big < n - 1 {
        bad.push("max degree floor");
    }
    bad
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::from_edges(n, edges).unwrap()
}

/// Every permutation of `0..n` (Heap's algorithm).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    let mut out = vec![p.clone()];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            out.push(p.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// `|Aut(g)|` by trying every permutation.
pub fn brute_force_aut_order(g: &Graph) -> usize {
    let m = matrix(g);
    let n = m.len();
    permutations(n)
        .into_iter()
        .filter(|p| (0..n).all(|u| (u + 1..n).all(|v| m[u][v] == m[p[u]][p[v]])))
        .count()
}

/// Largest vertex subset inducing diameter at most two, by trying all
/// subsets.
pub fn brute_force_max_diameter2(g: &Graph) -> usize {
    let m = matrix(g);
    let n = m.len();
    let mut best = 0;
    for mask in 1u32..(1 << n) {
        let k = mask.count_ones() as usize;
        if k <= best {
            continue;
        }
        let inside = |v: usize| mask >> v & 1 == 1;
        let ok = (0..n).filter(|&u| inside(u)).all(|u| {
            (0..n)
                .filter(|&v| inside(v) && v != u)
                .all(|v| m[u][v] || (0..n).any(|w| inside(w) && m[u][w] && m[w][v]))
        });
        if ok {
            best = k;
        }
    }
    best
}

/// Census row strings transcribed from the paper's table:
/// `(n, edges, degree multiset, girth, aut order, orbits)`.
pub const PAPER_ROWS: &[(usize, usize, &str, usize, u64, usize)] = &[
    (4, 4, "2^4", 4, 8, 1),
    (5, 5, "2^5", 5, 10, 1),
    (6, 7, "2^4 3^2", 4, 4, 3),
    (7, 9, "2^4 3^2 4^1", 4, 8, 3),
    (8, 12, "3^8", 4, 16, 1),
    (9, 14, "3^8 4^1", 4, 8, 3),
    (10, 15, "3^10", 5, 120, 1),
    (10, 17, "3^6 4^4", 4, 4, 4),
    (11, 19, "3^6 4^5", 4, 24, 3),
    (11, 20, "3^5 4^5 5^1", 4, 10, 3),
    (12, 23, "3^3 4^8 5^1", 4, 12, 4),
    (12, 24, "4^12", 4, 48, 1),
    (13, 24, "3^4 4^9", 4, 48, 3),
    (13, 26, "4^13", 4, 52, 1),
    (13, 27, "3^1 4^9 5^3", 4, 12, 4),
    (14, 31, "4^8 5^6", 4, 48, 2),
    (15, 35, "4^5 5^10", 4, 120, 2),
    (16, 34, "4^12 5^4", 4, 32, 3),
    (16, 40, "5^16", 4, 1920, 1),
];

/// `"3^6 4^4"` style degree multiset of a graph.
pub fn degree_signature(g: &Graph) -> String {
    let mut d = g.degrees();
    d.sort_unstable();
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < d.len() {
        let j = d[i..].iter().take_while(|&&x| x == d[i]).count();
        parts.push(format!("{}^{}", d[i], j));
        i += j;
    }
    parts.join(" ")
}

/// A random abelian group of order at most `max_order` (as cyclic
/// factors) and a random inverse-closed subset of its non-zero elements.
pub fn random_connection_set<R: Rng>(rng: &mut R, max_order: usize) -> diam2::cayley::ConnectionSet {
    use diam2::cayley::{AbelianGroup, ConnectionSet};
    let mut factors = Vec::new();
    let mut order = 1;
    loop {
        let room = max_order / order;
        if room < 2 || (!factors.is_empty() && rng.gen_bool(0.4)) {
            break;
        }
        let m = rng.gen_range(2..=room);
        factors.push(m);
        order *= m;
    }
    let group = AbelianGroup::new(factors).unwrap();
    let p = rng.gen_range(0.05..0.6);
    let mut elements = Vec::new();
    for x in 1..group.order() {
        let y = group.neg(x);
        if x <= y && rng.gen_bool(p) {
            elements.push(x);
            if y != x {
                elements.push(y);
            }
        }
    }
    ConnectionSet::new(group, elements).unwrap()
}

/// Tallies of one Lemma 4.1 cross-validation run.
#[derive(Debug, Default)]
pub struct LemmaTally {
    pub samples: usize,
    pub agree_b: usize,
    pub agree_c: usize,
    pub agree_d: usize,
    pub parity_violations: usize,
    /// Sets on which `codegree_parity_check` reported a counterexample.
    pub parity_check_failures: usize,
    /// How often each graph property held, to show both outcomes occur.
    pub triangle_free: usize,
    pub diameter_two: usize,
    pub k23_free: usize,
}

/// Lemma 4.1 (b), (c), (d) against adjacency-matrix oracles and (a) by
/// direct co-degree counting, on `count` random connection sets.
pub fn lemma41_cross_validation(seed: u64, count: usize) -> LemmaTally {
    use diam2::cayley::{cayley_graph, diameter2_condition, k23_condition, triangle_condition};
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut tally = LemmaTally::default();
    for _ in 0..count {
        let cs = random_connection_set(&mut rng, 64);
        let group = cs.group().clone();
        let g = cayley_graph(&cs).unwrap();
        let m = matrix(&g);
        let (tf, d2, k23) = (triangle_free(&m), diameter_at_most_two(&m), !has_kst(&m, 2, 3));
        tally.samples += 1;
        tally.triangle_free += tf as usize;
        tally.diameter_two += d2 as usize;
        tally.k23_free += k23 as usize;
        tally.agree_b += (triangle_condition(&cs) == tf) as usize;
        tally.agree_c += (diameter2_condition(&cs) == d2) as usize;
        tally.agree_d += (k23_condition(&cs) == k23) as usize;
        // (a): non-adjacent pairs whose difference is outside T have even co-degree
        let n = m.len();
        let t: Vec<usize> = cs.elements().iter().map(|&x| group.add(x, x)).collect();
        for u in 0..n {
            for v in u + 1..n {
                if m[u][v] || t.contains(&group.sub(v, u)) {
                    continue;
                }
                let codegree = (0..n).filter(|&w| m[u][w] && m[v][w]).count();
                if codegree % 2 == 1 {
                    tally.parity_violations += 1;
                }
            }
        }
        tally.parity_check_failures += !diam2::cayley::codegree_parity_check(&cs).unwrap() as usize;
    }
    tally
}

/// Adjacency rows as 128-bit masks (`n <= 128`).
pub fn masks(g: &Graph) -> Vec<u128> {
    assert!(g.n() <= 128);
    (0..g.n())
        .map(|u| (0..g.n()).filter(|&v| g.has_edge(u, v)).fold(0u128, |m, v| m | 1 << v))
        .collect()
}

/// Some `s`-set containing `must` (or any `s`-set when `must` is `None`)
/// has at least `t` common neighbours.
pub fn has_kst_masks(rows: &[u128], s: usize, t: usize, must: Option<usize>) -> bool {
    fn go(rows: &[u128], need: usize, from: usize, common: u128, t: usize, skip: Option<usize>) -> bool {
        if (common.count_ones() as usize) < t {
            return false;
        }
        if need == 0 {
            return true;
        }
        (from..rows.len())
            .filter(|&x| Some(x) != skip)
            .any(|x| go(rows, need - 1, x + 1, common & rows[x], t, skip))
    }
    match must {
        Some(u) => go(rows, s - 1, 0, rows[u], t, Some(u)),
        None => go(rows, s, 0, u128::MAX, t, None),
    }
}

/// Adding `uv` to a `K_3`- and `K_{s,t}`-free graph creates a triangle or a
/// `K_{s,t}`; the new copy must use the edge, so it has `u` or `v` on its
/// `s` side.
pub fn blocked(rows: &[u128], u: usize, v: usize, s: usize, t: usize) -> bool {
    if rows[u] & rows[v] != 0 {
        return true;
    }
    let mut h = rows.to_vec();
    h[u] |= 1 << v;
    h[v] |= 1 << u;
    has_kst_masks(&h, s, t, Some(u)) || has_kst_masks(&h, s, t, Some(v))
}
