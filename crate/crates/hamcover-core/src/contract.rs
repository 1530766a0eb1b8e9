//! Contraction of a spanning linear forest into an auxiliary digraph whose
//! Hamilton cycles expand to host Hamilton cycles covering the forest.
//!
//! Each path becomes one vertex; there is an edge from path `i` to path `j`
//! exactly when the host digraph has an edge from the sink of `i` to the
//! source of `j`.

use alloc::vec::Vec;
use core::fmt;

use crate::digraph::Digraph;
use crate::forest::LinearForest;
use crate::hamilton::HamiltonCycle;

/// The contraction digraph of `(D, F)` plus the back-map needed to expand
/// cycles again.
#[derive(Debug, Clone)]
pub struct ContractionDigraph {
    graph: Digraph,
    /// Path index → (source vertex, sink vertex).
    endpoints: Vec<(u32, u32)>,
    /// Path index → full vertex sequence.
    paths: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestNotSpanning;

impl fmt::Display for ForestNotSpanning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "forest must span the host vertex set")
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ForestNotSpanning {}

/// Builds the contraction digraph. The forest's edges need not lie in the
/// host: only sink→source edges of the host matter.
pub fn contract(d: &Digraph, f: &LinearForest) -> Result<ContractionDigraph, ForestNotSpanning> {
    if f.n() != d.n() {
        return Err(ForestNotSpanning);
    }
    let paths: Vec<Vec<u32>> = f.paths().to_vec();
    let endpoints: Vec<(u32, u32)> = paths.iter().map(|p| (p[0], *p.last().unwrap())).collect();
    let l = paths.len();
    let mut edges = Vec::new();
    for i in 0..l {
        let sink = endpoints[i].1;
        for j in 0..l {
            if i != j && d.has_edge(sink, endpoints[j].0) {
                edges.push((i as u32, j as u32));
            }
        }
    }
    let graph = Digraph::from_edges(l, &edges).expect("contraction edges are valid");
    Ok(ContractionDigraph { graph, endpoints, paths })
}

impl ContractionDigraph {
    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    /// `(source, sink)` of path `i`.
    pub fn endpoints(&self, i: u32) -> (u32, u32) {
        self.endpoints[i as usize]
    }

    pub fn path_count(&self) -> usize {
        self.paths.len()
    }

    /// Path index containing host vertex `v`, if any path starts there.
    pub fn path_starting_at(&self, v: u32) -> Option<u32> {
        self.paths
            .iter()
            .position(|p| p[0] == v)
            .map(|i| i as u32)
    }

    /// Expands a Hamilton cycle of the contraction into the host: each path
    /// vertex is replaced by its full path, consecutive paths joined by the
    /// host's sink→source edges.
    pub fn expand(&self, c: &HamiltonCycle) -> HamiltonCycle {
        let mut order = Vec::new();
        for &i in c.order() {
            order.extend_from_slice(&self.paths[i as usize]);
        }
        HamiltonCycle::new(order)
    }
}
