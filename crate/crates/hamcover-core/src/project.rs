//! The permutation projection coupling bipartite graphs with digraphs.
//!
//! Shuffling part `Y` of a balanced bipartite graph `B` by a permutation `π`
//! and reading each shuffled edge as a directed edge yields the loopless
//! digraph with edges `i → j` whenever `i π⁻¹(j) ∈ B` and `i ≠ j`. With `B`
//! binomial and `π` uniform, the result is distributed exactly as `D_{n,p}`.

use alloc::vec::Vec;
use core::fmt;

use crate::bipartite::BipartiteGraph;
use crate::digraph::Digraph;
use crate::permutation::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeMismatch {
    pub graph_n: usize,
    pub perm_n: usize,
}

impl fmt::Display for SizeMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "graph on {} vertices, permutation on {}",
            self.graph_n, self.perm_n
        )
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SizeMismatch {}

/// Projects `B` through `π`: edge `i → j` iff `i π⁻¹(j) ∈ B` and `i ≠ j`.
///
/// Equivalently, edge `xy ∈ B` maps to `x → π(y)` and is dropped exactly
/// when `π(y) = x`, so the output has `|B| − #{xy ∈ B : π(y) = x}` edges.
pub fn project(b: &BipartiteGraph, pi: &Permutation) -> Result<Digraph, SizeMismatch> {
    if b.n() != pi.n() {
        return Err(SizeMismatch {
            graph_n: b.n(),
            perm_n: pi.n(),
        });
    }
    let mut edges = Vec::with_capacity(b.m());
    for (x, y) in b.edges() {
        let j = pi.apply(y);
        if j != x {
            edges.push((x, j));
        }
    }
    Ok(Digraph::from_edges(b.n(), &edges).expect("projection drops loops"))
}
