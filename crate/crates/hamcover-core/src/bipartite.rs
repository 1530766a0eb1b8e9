//! Balanced bipartite graphs on parts `X`, `Y`, two copies of `0..n`.
//!
//! Edges are ordered pairs `xy` with `x ∈ X`, `y ∈ Y`; `xy` and `yx` are
//! distinct identifiers even though the graph is undirected.

use alloc::vec::Vec;
use core::fmt;

use crate::digraph::GraphError;

/// A balanced bipartite graph, immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    n: usize,
    m: usize,
    x_adj: Vec<Vec<u32>>,
    y_adj: Vec<Vec<u32>>,
}

/// One side of the bipartition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    X,
    Y,
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Part::X => write!(f, "X"),
            Part::Y => write!(f, "Y"),
        }
    }
}

impl BipartiteGraph {
    /// Builds from a list of `xy` pairs, deduplicating repeats.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self, GraphError> {
        let mut x_adj = alloc::vec![Vec::new(); n];
        let mut y_adj = alloc::vec![Vec::new(); n];
        for &(x, y) in edges {
            for w in [x, y] {
                if w as usize >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            x_adj[x as usize].push(y);
            y_adj[y as usize].push(x);
        }
        let mut m = 0;
        for adj in x_adj.iter_mut() {
            adj.sort_unstable();
            adj.dedup();
            m += adj.len();
        }
        for adj in y_adj.iter_mut() {
            adj.sort_unstable();
            adj.dedup();
        }
        Ok(BipartiteGraph { n, m, x_adj, y_adj })
    }

    pub fn empty(n: usize) -> Self {
        BipartiteGraph {
            n,
            m: 0,
            x_adj: alloc::vec![Vec::new(); n],
            y_adj: alloc::vec![Vec::new(); n],
        }
    }

    /// The complete bipartite graph `K_{n,n}`.
    pub fn complete(n: usize) -> Self {
        let all: Vec<u32> = (0..n as u32).collect();
        BipartiteGraph {
            n,
            m: n * n,
            x_adj: alloc::vec![all.clone(); n],
            y_adj: alloc::vec![all; n],
        }
    }

    /// Part size; both parts have `n` vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn has_edge(&self, x: u32, y: u32) -> bool {
        self.x_adj[x as usize].binary_search(&y).is_ok()
    }

    pub fn neighbors_of_x(&self, x: u32) -> &[u32] {
        &self.x_adj[x as usize]
    }

    pub fn neighbors_of_y(&self, y: u32) -> &[u32] {
        &self.y_adj[y as usize]
    }

    pub fn deg_x(&self, x: u32) -> usize {
        self.x_adj[x as usize].len()
    }

    pub fn deg_y(&self, y: u32) -> usize {
        self.y_adj[y as usize].len()
    }

    pub fn degree(&self, part: Part, v: u32) -> usize {
        match part {
            Part::X => self.deg_x(v),
            Part::Y => self.deg_y(v),
        }
    }

    /// Edges `xy` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.x_adj
            .iter()
            .enumerate()
            .flat_map(|(x, adj)| adj.iter().map(move |&y| (x as u32, y)))
    }

    /// All `2n` degrees sorted nonincreasing with part attribution
    /// (ties: smaller index first, X before Y).
    pub fn degree_sequence(&self) -> Vec<(usize, u32, Part)> {
        let mut entries: Vec<(usize, u32, Part)> = Vec::with_capacity(2 * self.n);
        for v in 0..self.n as u32 {
            entries.push((self.deg_x(v), v, Part::X));
            entries.push((self.deg_y(v), v, Part::Y));
        }
        entries.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        entries
    }

    /// `Δ(B)`.
    pub fn max_degree(&self) -> usize {
        self.degree_sequence().first().map_or(0, |e| e.0)
    }

    /// `δ(B)`.
    pub fn min_degree(&self) -> usize {
        (0..self.n as u32)
            .flat_map(|v| [self.deg_x(v), self.deg_y(v)])
            .min()
            .unwrap_or(0)
    }

    /// Removes a set of edges, returning the subgraph.
    pub fn without_edges(&self, removed: &[(u32, u32)]) -> BipartiteGraph {
        let removed: alloc::collections::BTreeSet<(u32, u32)> = removed.iter().copied().collect();
        let edges: Vec<(u32, u32)> = self.edges().filter(|e| !removed.contains(e)).collect();
        BipartiteGraph::from_edges(self.n, &edges).expect("subgraph of a valid graph")
    }

    /// Number of edges between `S ⊆ X` and `T ⊆ Y`.
    pub fn edges_between(&self, s: &[u32], t: &[u32]) -> usize {
        let t_set: alloc::collections::BTreeSet<u32> = t.iter().copied().collect();
        s.iter()
            .map(|&x| {
                self.x_adj[x as usize]
                    .iter()
                    .filter(|y| t_set.contains(y))
                    .count()
            })
            .sum()
    }
}
