//! Undirected multigraphs underlying directed residuals.
//!
//! Each directed edge becomes one undirected edge; an antiparallel pair
//! becomes two parallel edges. The origin map remembers which directed
//! edge every multigraph edge came from so color classes pull back to
//! directed matchings.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::digraph::Digraph;

/// A loopless undirected multigraph with per-edge provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    /// Unordered endpoints per edge, stored with the smaller vertex first.
    edges: Vec<(u32, u32)>,
    /// Directed residual edge each multigraph edge represents.
    origin: Vec<(u32, u32)>,
}

impl Multigraph {
    pub fn new(n: usize, edges: Vec<((u32, u32), (u32, u32))>) -> Self {
        let mut ends = Vec::with_capacity(edges.len());
        let mut origin = Vec::with_capacity(edges.len());
        for ((a, b), orig) in edges {
            assert_ne!(a, b, "multigraph edges must not be loops");
            ends.push((a.min(b), a.max(b)));
            origin.push(orig);
        }
        Multigraph { n, edges: ends, origin }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn endpoints(&self, e: usize) -> (u32, u32) {
        self.edges[e]
    }

    pub fn origin(&self, e: usize) -> (u32, u32) {
        self.origin[e]
    }

    /// Degree counts parallel edges separately.
    pub fn degree(&self, v: u32) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn max_degree(&self) -> usize {
        let mut deg = alloc::vec![0usize; self.n];
        for &(a, b) in &self.edges {
            deg[a as usize] += 1;
            deg[b as usize] += 1;
        }
        deg.into_iter().max().unwrap_or(0)
    }

    /// μ: the maximum number of parallel edges between any vertex pair.
    pub fn multiplicity(&self) -> usize {
        let mut counts: BTreeMap<(u32, u32), usize> = BTreeMap::new();
        for &e in &self.edges {
            *counts.entry(e).or_insert(0) += 1;
        }
        counts.into_values().max().unwrap_or(0)
    }
}

/// The undirected underlying multigraph of a digraph: one edge per directed
/// edge, antiparallel pairs becoming parallel edges. The origin map is
/// total and injective.
pub fn underlying_multigraph(r: &Digraph) -> Multigraph {
    let edges: Vec<((u32, u32), (u32, u32))> =
        r.edges().map(|(u, v)| ((u, v), (u, v))).collect();
    Multigraph::new(r.n(), edges)
}
