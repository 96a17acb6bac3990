//! Multigraphs with loops produced by identifying vertex pairs.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Vertex count plus a multiset of unordered pairs; `(v, v)` is a loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMultigraph {
    m: usize,
    edges: BTreeMap<(usize, usize), u32>,
    /// Whether the identifying involution was an automorphism of the source graph.
    pub from_automorphism: bool,
}

impl QuotientMultigraph {
    pub fn new(m: usize) -> Self {
        QuotientMultigraph {
            m,
            edges: BTreeMap::new(),
            from_automorphism: true,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.m && v < self.m, "vertex out of range");
        let key = if u <= v { (u, v) } else { (v, u) };
        *self.edges.entry(key).or_insert(0) += 1;
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u32 {
        let key = if u <= v { (u, v) } else { (v, u) };
        self.edges.get(&key).copied().unwrap_or(0)
    }

    /// `((u, v), multiplicity)` with `u <= v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), u32)> + '_ {
        self.edges.iter().map(|(&k, &c)| (k, c))
    }

    pub fn loops(&self) -> impl Iterator<Item = usize> + '_ {
        self.edges.keys().filter(|(u, v)| u == v).map(|&(u, _)| u)
    }

    /// Total number of edges counted with multiplicity.
    pub fn edge_count(&self) -> u32 {
        self.edges.values().sum()
    }

    /// Non-loop multiplicity at most 2, loop multiplicity at most 1.
    pub fn check_invariants(&self) -> Result<()> {
        for (&(u, v), &c) in &self.edges {
            let cap = if u == v { 1 } else { 2 };
            if c > cap {
                return Err(Error::InvalidArgument(format!(
                    "pair ({u},{v}) has multiplicity {c}, at most {cap} allowed"
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplicities() {
        let mut q = QuotientMultigraph::new(3);
        q.add_edge(0, 1);
        q.add_edge(1, 0);
        q.add_edge(2, 2);
        assert_eq!(q.multiplicity(0, 1), 2);
        assert_eq!(q.loops().collect::<Vec<_>>(), vec![2]);
        assert_eq!(q.edge_count(), 3);
        assert!(q.check_invariants().is_ok());
        q.add_edge(2, 2);
        assert!(q.check_invariants().is_err());
    }
}
