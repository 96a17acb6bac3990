//! Cayley graphs on finite abelian groups and the algebraic form of the
//! witness conditions for them.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

/// Largest group order accepted by [`AbelianGroup::new`].
pub const MAX_GROUP_ORDER: usize = 4096;
const TABLE_LIMIT: usize = 1024;
/// Largest connection-set size accepted by [`enumerate_connection_sets`].
pub const MAX_ENUMERATION_K: usize = 20;

/// `Z_{m_1} × … × Z_{m_r}` with elements encoded in mixed radix, first
/// factor most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    factors: Vec<usize>,
    order: usize,
    /// `add[a * order + b]`, present for small orders.
    add: Option<Vec<u16>>,
}

impl AbelianGroup {
    pub fn new(factors: Vec<usize>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument("group needs at least one factor".into()));
        }
        if let Some(&m) = factors.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidArgument(format!("cyclic factor {m} must be at least 2")));
        }
        let order = factors
            .iter()
            .try_fold(1usize, |acc, &m| acc.checked_mul(m).filter(|&x| x <= MAX_GROUP_ORDER))
            .ok_or_else(|| {
                Error::size_cap("group order", factors.iter().product::<usize>().max(MAX_GROUP_ORDER + 1), MAX_GROUP_ORDER)
            })?;
        let mut g = AbelianGroup { factors, order, add: None };
        if order <= TABLE_LIMIT {
            let mut table = vec![0u16; order * order];
            for a in 0..order {
                for b in 0..order {
                    table[a * order + b] = g.add_slow(a, b) as u16;
                }
            }
            g.add = Some(table);
        }
        Ok(g)
    }

    /// Parses a comma-separated factor list such as `2,2,2,2`.
    pub fn parse(spec: &str) -> Result<Self> {
        let factors = spec
            .split(',')
            .map(|f| {
                f.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidArgument(format!("bad group factor `{f}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        AbelianGroup::new(factors)
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        AbelianGroup::new(vec![n])
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn digits(&self, mut x: usize) -> Vec<usize> {
        let mut d = vec![0; self.factors.len()];
        for (i, &m) in self.factors.iter().enumerate().rev() {
            d[i] = x % m;
            x /= m;
        }
        d
    }

    pub fn index(&self, digits: &[usize]) -> usize {
        assert_eq!(digits.len(), self.factors.len());
        digits
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&d, &m)| acc * m + d % m)
    }

    fn add_slow(&self, a: usize, b: usize) -> usize {
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<usize> = da.iter().zip(&db).zip(&self.factors).map(|((x, y), m)| (x + y) % m).collect();
        self.index(&sum)
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        match &self.add {
            Some(t) => t[a * self.order + b] as usize,
            None => self.add_slow(a, b),
        }
    }

    pub fn neg(&self, a: usize) -> usize {
        let d: Vec<usize> = self.digits(a).iter().zip(&self.factors).map(|(&x, &m)| (m - x) % m).collect();
        self.index(&d)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// The prime `p` when the group is `Z_p^d`.
    pub fn elementary_prime(&self) -> Option<usize> {
        let p = self.factors[0];
        (is_prime(p) && self.factors.iter().all(|&m| m == p)).then_some(p)
    }

    pub fn is_elementary_2_group(&self) -> bool {
        self.elementary_prime() == Some(2)
    }

    /// Cyclic of prime-power order.
    fn is_cyclic_prime_power(&self) -> bool {
        self.factors.len() == 1 && prime_power(self.order).is_some()
    }

    /// Classes `{x, -x}` of nonzero elements, each sorted, ordered by smallest member.
    pub fn inverse_classes(&self) -> Vec<Vec<usize>> {
        (1..self.order)
            .filter_map(|x| {
                let y = self.neg(x);
                match x.cmp(&y) {
                    std::cmp::Ordering::Less => Some(vec![x, y]),
                    std::cmp::Ordering::Equal => Some(vec![x]),
                    std::cmp::Ordering::Greater => None,
                }
            })
            .collect()
    }
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// `(p, a)` with `n = p^a`, `a >= 1`.
pub fn prime_power(n: usize) -> Option<(usize, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n % d == 0)?;
    let mut m = n;
    let mut a = 0;
    while m % p == 0 {
        m /= p;
        a += 1;
    }
    (m == 1).then_some((p, a))
}

/// Every abelian group of order `p^a`, one per partition of `a`.
pub fn abelian_groups_of_prime_power(p: usize, a: u32) -> Result<Vec<AbelianGroup>> {
    fn partitions(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            partitions(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut parts = Vec::new();
    partitions(a, a, &mut Vec::new(), &mut parts);
    parts
        .into_iter()
        .map(|ps| AbelianGroup::new(ps.iter().map(|&e| p.pow(e)).collect()))
        .collect()
}

/// An inverse-closed set of nonzero group elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionSet {
    group: AbelianGroup,
    elements: Vec<usize>,
}

impl ConnectionSet {
    pub fn new(group: AbelianGroup, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if let Some(&x) = elements.iter().find(|&&x| x >= group.order()) {
            return Err(Error::InvalidArgument(format!("element {x} outside group of order {}", group.order())));
        }
        if elements.first() == Some(&0) {
            return Err(Error::InvalidArgument("connection set contains 0".into()));
        }
        if let Some(&x) = elements.iter().find(|&&x| elements.binary_search(&group.neg(x)).is_err()) {
            return Err(Error::InvalidArgument(format!("connection set not inverse-closed at {x}")));
        }
        Ok(ConnectionSet { group, elements })
    }

    /// Elements given as digit tuples, e.g. `[[1,0,0,0], …]`.
    pub fn from_digits(group: AbelianGroup, digits: &[Vec<usize>]) -> Result<Self> {
        let elements = digits.iter().map(|d| group.index(d)).collect();
        ConnectionSet::new(group, elements)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn k(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn double_set(&self) -> DoubleSet {
        let mut elements: Vec<usize> = self.elements.iter().map(|&x| self.group.add(x, x)).collect();
        elements.sort_unstable();
        elements.dedup();
        DoubleSet { elements }
    }

    /// `r[z]` = number of ordered pairs `(x, y) ∈ S×S` with `x + y = z`.
    pub fn sum_counts(&self) -> Vec<usize> {
        let mut r = vec![0; self.group.order()];
        for &x in &self.elements {
            for &y in &self.elements {
                r[self.group.add(x, y)] += 1;
            }
        }
        r
    }
}

/// `T = {x + x : x ∈ S}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleSet {
    pub elements: Vec<usize>,
}

impl DoubleSet {
    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

/// Vertex `i` is the `i`-th element; `x ~ y` iff `x - y ∈ S`.
pub fn cayley_graph(cs: &ConnectionSet) -> Result<Graph> {
    let n = cs.group.order();
    if n > MAX_VERTICES {
        return Err(Error::size_cap("group order", n, MAX_VERTICES));
    }
    let mut g = Graph::empty(n)?;
    for x in 0..n {
        for &s in &cs.elements {
            let y = cs.group.add(x, s);
            if x < y {
                g.set_edge(x, y);
            }
        }
    }
    Ok(g)
}

/// Lemma 4.1(b): no `x, y, z ∈ S` with `x + y = z`.
pub fn triangle_condition(cs: &ConnectionSet) -> bool {
    cs.elements
        .iter()
        .all(|&x| cs.elements.iter().all(|&y| !cs.contains(cs.group.add(x, y))))
}

/// Lemma 4.1(c): every `z ∉ S ∪ {0}` is a sum of two elements of `S`.
pub fn diameter2_condition(cs: &ConnectionSet) -> bool {
    let r = cs.sum_counts();
    (1..cs.group.order()).all(|z| cs.contains(z) || r[z] > 0)
}

/// Lemma 4.1(d), unordered pairs: for `z ∉ T ∪ {0}` at most one pair
/// `{x, y}`; for `z ∈ T \ {0}` only representations `x + x` and at most two of them.
pub fn k23_condition(cs: &ConnectionSet) -> bool {
    let t = cs.double_set();
    let n = cs.group.order();
    let mut distinct_pairs = vec![0usize; n];
    let mut doubles = vec![0usize; n];
    for (i, &x) in cs.elements.iter().enumerate() {
        doubles[cs.group.add(x, x)] += 1;
        for &y in &cs.elements[i + 1..] {
            distinct_pairs[cs.group.add(x, y)] += 1;
        }
    }
    (1..n).all(|z| {
        if t.contains(z) {
            distinct_pairs[z] == 0 && doubles[z] <= 2
        } else {
            distinct_pairs[z] <= 1
        }
    })
}

/// Lemma 4.1(a) on the materialised graph: a non-adjacent pair whose
/// difference lies outside `T` with odd co-degree, if any. For odd-order
/// groups with `S ∩ T = ∅` a non-adjacent pair with difference in `T`
/// and even co-degree is reported as well.
pub fn parity_counterexample(cs: &ConnectionSet) -> Result<Option<(usize, usize)>> {
    let g = cayley_graph(cs)?;
    let t = cs.double_set();
    let n = g.n();
    let odd_check = n % 2 == 1 && t.elements.iter().all(|&x| !cs.contains(x));
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) {
                continue;
            }
            let diff = cs.group.sub(v, u);
            let even = g.codegree(u, v) % 2 == 0;
            let in_t = t.contains(diff);
            if (!in_t && !even) || (in_t && odd_check && even) {
                return Ok(Some((u, v)));
            }
        }
    }
    Ok(None)
}

pub fn codegree_parity_check(cs: &ConnectionSet) -> Result<bool> {
    Ok(parity_counterexample(cs)?.is_none())
}

/// Outcome of [`counting_feasibility`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Feasible { k: usize },
    Infeasible,
    Inapplicable,
}

fn exact_sqrt(x: u128) -> Option<u128> {
    let r = (x as f64).sqrt() as u128;
    (r.saturating_sub(2)..=r + 2).find(|&c| c * c == x)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Proposition 4.2: for order coprime to 6, `2n - 1 = (k+1)²`; for
/// `Z_2^d`, `k² + k + 2 = 2^{d+1}`. With `k` given, the implied degree
/// must also match it.
pub fn counting_feasibility(group: &AbelianGroup, k: Option<usize>) -> Verdict {
    let n = group.order();
    let implied = if gcd(n, 6) == 1 {
        exact_sqrt(2 * n as u128 - 1).map(|r| r as usize - 1)
    } else if group.is_elementary_2_group() {
        // k = (-1 + sqrt(8n - 7)) / 2 since 2^{d+1} = 2n
        exact_sqrt(8 * n as u128 - 7)
            .filter(|r| r % 2 == 1)
            .map(|r| (r as usize - 1) / 2)
    } else {
        return Verdict::Inapplicable;
    };
    match (implied, k) {
        (Some(i), Some(k)) if i != k => Verdict::Infeasible,
        (Some(i), _) => Verdict::Feasible { k: i },
        (None, _) => Verdict::Infeasible,
    }
}

/// Every `m <= limit` for which `2^m - 7` is a perfect square.
pub fn ramanujan_nagell(limit: u32) -> Result<Vec<u32>> {
    if limit > 62 {
        return Err(Error::size_cap("ramanujan_nagell limit", limit as usize, 62));
    }
    Ok((0..=limit)
        .filter(|&m| {
            let v = (1i128 << m) - 7;
            v >= 0 && exact_sqrt(v as u128).is_some()
        })
        .collect())
}

/// One isomorphism class found by [`enumerate_connection_sets`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyClass {
    pub set: ConnectionSet,
    pub canonical_form: String,
}

struct SetSearch<'a> {
    group: &'a AbelianGroup,
    classes: Vec<Vec<usize>>,
    k: usize,
    t: usize,
    in_s: Vec<bool>,
    members: Vec<usize>,
    sums: Vec<usize>,
    found: Vec<Vec<usize>>,
}

impl<'a> SetSearch<'a> {
    fn new(group: &'a AbelianGroup, classes: Vec<Vec<usize>>, k: usize, t: usize) -> Self {
        let n = group.order();
        SetSearch {
            group,
            classes,
            k,
            t,
            in_s: vec![false; n],
            members: Vec::with_capacity(k),
            sums: vec![0; n],
            found: Vec::new(),
        }
    }

    /// Adds `x`, returning false (with the state still updated) when a
    /// triangle or a co-degree above `t - 1` appears.
    fn push(&mut self, x: usize) -> bool {
        let g = self.group;
        self.in_s[x] = true;
        self.members.push(x);
        let mut ok = self.sums[x] == 0;
        for i in 0..self.members.len() {
            let y = self.members[i];
            let z = g.add(x, y);
            self.sums[z] += if y == x { 1 } else { 2 };
            if self.in_s[z] || (z != 0 && self.sums[z] >= self.t) {
                ok = false;
            }
        }
        ok
    }

    fn pop(&mut self) {
        let g = self.group;
        let x = self.members.pop().expect("non-empty");
        self.in_s[x] = false;
        self.sums[g.add(x, x)] -= 1;
        for &y in &self.members {
            self.sums[g.add(x, y)] -= 2;
        }
    }

    fn push_class(&mut self, c: usize) -> bool {
        let class = self.classes[c].clone();
        let mut ok = true;
        for &x in &class {
            ok &= self.push(x);
        }
        ok
    }

    fn pop_class(&mut self, c: usize) {
        for _ in 0..self.classes[c].len() {
            self.pop();
        }
    }

    /// New sums still available cannot cover every uncovered element.
    fn coverage_hopeless(&self) -> bool {
        let s = self.members.len();
        let reach: usize = (s..self.k).map(|i| i + 1).sum::<usize>() + (self.k - s);
        let uncovered = (1..self.group.order())
            .filter(|&z| !self.in_s[z] && self.sums[z] == 0)
            .count();
        uncovered > reach
    }

    fn complete(&mut self) {
        let covered = (1..self.group.order()).all(|z| self.in_s[z] || self.sums[z] > 0);
        if covered {
            let mut s = self.members.clone();
            s.sort_unstable();
            self.found.push(s);
        }
    }

    /// Chooses further classes with index `>= from`.
    fn extend(&mut self, from: usize, remaining_size: &[usize]) {
        let size = self.members.len();
        if size == self.k {
            self.complete();
            return;
        }
        if self.coverage_hopeless() {
            return;
        }
        for c in from..self.classes.len() {
            if size + remaining_size[c] < self.k {
                break;
            }
            if size + self.classes[c].len() > self.k {
                continue;
            }
            if self.push_class(c) {
                self.extend(c + 1, remaining_size);
            }
            self.pop_class(c);
        }
    }
}

/// Classes that every witness connection set may be assumed to contain
/// after applying a group automorphism: the standard basis for `Z_p^d`
/// and the generator 1 for cyclic groups of prime-power order.
fn forced_elements(group: &AbelianGroup) -> Vec<usize> {
    if group.elementary_prime().is_some() {
        let d = group.factors().len();
        (0..d)
            .map(|i| {
                let mut digits = vec![0; d];
                digits[i] = 1;
                group.index(&digits)
            })
            .collect()
    } else if group.is_cyclic_prime_power() {
        vec![1]
    } else {
        Vec::new()
    }
}

/// Every `(2, t)`-witness Cayley graph `Cay(A, S)` with `|S| = k`, one per
/// isomorphism class, sorted by canonical form.
///
/// Backtracks over inverse classes with incremental sum counts, so the
/// triangle and co-degree conditions prune partial sets; diameter two is
/// checked on completion. Witnesses are connected, which justifies
/// [`forced_elements`].
pub fn enumerate_connection_sets(group: &AbelianGroup, k: usize, t: usize) -> Result<Vec<CayleyClass>> {
    let n = group.order();
    if n > MAX_VERTICES {
        return Err(Error::size_cap("group order", n, MAX_VERTICES));
    }
    if k > MAX_ENUMERATION_K {
        return Err(Error::size_cap("k", k, MAX_ENUMERATION_K));
    }
    if t < 2 {
        return Err(Error::InvalidArgument(format!("t must be at least 2, got {t}")));
    }
    // a star needs n = 2; and k + k(k+1)/2 sums must reach every nonzero element
    if k == 0 || k >= n || n == 2 || k + k * (k + 1) / 2 < n - 1 {
        return Ok(Vec::new());
    }
    let forced = forced_elements(group);
    let all_classes = group.inverse_classes();
    let (forced_classes, free): (Vec<Vec<usize>>, Vec<Vec<usize>>) =
        all_classes.into_iter().partition(|c| forced.contains(&c[0]) || forced.contains(&c[c.len() - 1]));
    let forced_size: usize = forced_classes.iter().map(Vec::len).sum();
    if forced_size > k {
        return Ok(Vec::new());
    }

    let mut classes = forced_classes.clone();
    classes.extend(free);
    let nf = forced_classes.len();
    let mut remaining_size = vec![0; classes.len() + 1];
    for c in (0..classes.len()).rev() {
        remaining_size[c] = remaining_size[c + 1] + classes[c].len();
    }

    let seed = |first: Option<usize>| -> Vec<Vec<usize>> {
        let mut search = SetSearch::new(group, classes.clone(), k, t);
        let mut ok = true;
        for c in 0..nf {
            ok &= search.push_class(c);
        }
        if !ok {
            return Vec::new();
        }
        match first {
            None => {
                if search.members.len() == k {
                    search.complete();
                }
            }
            Some(c) => {
                if search.members.len() + classes[c].len() <= k && search.push_class(c) {
                    search.extend(c + 1, &remaining_size);
                }
            }
        }
        search.found
    };

    let mut sets: Vec<Vec<usize>> = seed(None);
    let branches: Vec<Vec<Vec<usize>>> = (nf..classes.len()).into_par_iter().map(|c| seed(Some(c))).collect();
    sets.extend(branches.into_iter().flatten());

    let mut by_form: BTreeMap<String, ConnectionSet> = BTreeMap::new();
    for s in sets {
        let cs = ConnectionSet::new(group.clone(), s)?;
        let form = canonical_form(&cayley_graph(&cs)?);
        by_form.entry(form).or_insert(cs);
    }
    Ok(by_form
        .into_iter()
        .map(|(canonical_form, set)| CayleyClass { set, canonical_form })
        .collect())
}

/// One group examined by [`classify_prime_power_orders`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimePowerRow {
    pub order: usize,
    pub factors: Vec<usize>,
    pub k: usize,
    pub witness_classes: usize,
}

/// Runs [`enumerate_connection_sets`] on every abelian group of each
/// prime-power order `n <= limit` coprime to 6 that passes
/// [`counting_feasibility`].
pub fn classify_prime_power_orders(limit: usize) -> Result<Vec<PrimePowerRow>> {
    if limit > 200 {
        return Err(Error::size_cap("limit", limit, 200));
    }
    let mut rows = Vec::new();
    for n in 2..=limit {
        let Some((p, a)) = prime_power(n) else { continue };
        if gcd(n, 6) != 1 {
            continue;
        }
        for group in abelian_groups_of_prime_power(p, a)? {
            let Verdict::Feasible { k } = counting_feasibility(&group, None) else { break };
            let classes = if k <= MAX_ENUMERATION_K {
                enumerate_connection_sets(&group, k, 3)?.len()
            } else {
                return Err(Error::size_cap("implied k", k, MAX_ENUMERATION_K));
            };
            rows.push(PrimePowerRow {
                order: n,
                factors: group.factors().to_vec(),
                k,
                witness_classes: classes,
            });
        }
    }
    Ok(rows)
}
