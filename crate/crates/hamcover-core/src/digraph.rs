//! Loopless directed graphs on `0..n` and their ordered degree sequences.

use alloc::vec::Vec;
use core::fmt;

/// Which side of a vertex a degree entry refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Out,
    In,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Out => write!(f, "out"),
            Side::In => write!(f, "in"),
        }
    }
}

/// A loopless digraph on vertices `0..n`, immutable after construction.
///
/// Adjacency is kept sorted in both directions, so edge queries are a binary
/// search and every iteration order is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    m: usize,
    out_adj: Vec<Vec<u32>>,
    in_adj: Vec<Vec<u32>>,
}

/// Construction error for [`Digraph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    SelfLoop(u32),
    VertexOutOfRange { vertex: u32, n: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::SelfLoop(v) => write!(f, "self-loop at vertex {v}"),
            GraphError::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for n = {n}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for GraphError {}

impl Digraph {
    /// Builds a digraph from an edge list, deduplicating repeated edges.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self, GraphError> {
        let mut out_adj = alloc::vec![Vec::new(); n];
        let mut in_adj = alloc::vec![Vec::new(); n];
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for w in [u, v] {
                if w as usize >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            out_adj[u as usize].push(v);
            in_adj[v as usize].push(u);
        }
        let mut m = 0;
        for adj in out_adj.iter_mut() {
            adj.sort_unstable();
            adj.dedup();
            m += adj.len();
        }
        for adj in in_adj.iter_mut() {
            adj.sort_unstable();
            adj.dedup();
        }
        Ok(Digraph { n, m, out_adj, in_adj })
    }

    /// The empty digraph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Digraph {
            n,
            m: 0,
            out_adj: alloc::vec![Vec::new(); n],
            in_adj: alloc::vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of directed edges.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.out_adj[u as usize].binary_search(&v).is_ok()
    }

    pub fn out_neighbors(&self, u: u32) -> &[u32] {
        &self.out_adj[u as usize]
    }

    pub fn in_neighbors(&self, v: u32) -> &[u32] {
        &self.in_adj[v as usize]
    }

    pub fn out_degree(&self, u: u32) -> usize {
        self.out_adj[u as usize].len()
    }

    pub fn in_degree(&self, v: u32) -> usize {
        self.in_adj[v as usize].len()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, adj)| adj.iter().map(move |&v| (u as u32, v)))
    }

    /// `Δ⁺`, `Δ⁻`, `δ⁺`, `δ⁻` over all vertices (zeros on the empty vertex set).
    pub fn degree_extremes(&self) -> DegreeExtremes {
        let mut ext = DegreeExtremes {
            max_out: 0,
            max_in: 0,
            min_out: usize::MAX,
            min_in: usize::MAX,
        };
        if self.n == 0 {
            ext.min_out = 0;
            ext.min_in = 0;
            return ext;
        }
        for v in 0..self.n {
            let d_out = self.out_adj[v].len();
            let d_in = self.in_adj[v].len();
            ext.max_out = ext.max_out.max(d_out);
            ext.max_in = ext.max_in.max(d_in);
            ext.min_out = ext.min_out.min(d_out);
            ext.min_in = ext.min_in.min(d_in);
        }
        ext
    }

    /// `Δ(D) = max{Δ⁺, Δ⁻}`.
    pub fn max_degree(&self) -> usize {
        let ext = self.degree_extremes();
        ext.max_out.max(ext.max_in)
    }

    /// `δ(D) = min{δ⁺, δ⁻}`.
    pub fn min_degree(&self) -> usize {
        let ext = self.degree_extremes();
        ext.min_out.min(ext.min_in)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeExtremes {
    pub max_out: usize,
    pub max_in: usize,
    pub min_out: usize,
    pub min_in: usize,
}

/// The merged, nonincreasing sequence of all `2n` out- and in-degrees,
/// with the vertex and side each entry came from.
///
/// Ties are broken toward the smaller vertex index, out before in, so the
/// vertex attributed to the top entry is deterministic even when the
/// maximum degree is not unique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSequence {
    entries: Vec<(usize, u32, Side)>,
}

impl DegreeSequence {
    /// Degree values, nonincreasing.
    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|&(d, _, _)| d)
    }

    /// `(degree, vertex, side)` entries, nonincreasing in degree.
    pub fn entries(&self) -> &[(usize, u32, Side)] {
        &self.entries
    }

    /// `Δ_k` for 1-based `k`.
    pub fn delta(&self, k: usize) -> usize {
        self.entries[k - 1].0
    }

    /// Vertex and side attributed to `Δ_1`.
    pub fn top(&self) -> (u32, Side) {
        let (_, v, s) = self.entries[0];
        (v, s)
    }
}

/// Computes the ordered degree sequence `Δ_1 ≥ Δ_2 ≥ … ≥ Δ_{2n}`.
pub fn ordered_degree_sequence(d: &Digraph) -> DegreeSequence {
    let mut entries: Vec<(usize, u32, Side)> = Vec::with_capacity(2 * d.n());
    for v in 0..d.n() {
        entries.push((d.out_degree(v as u32), v as u32, Side::Out));
        entries.push((d.in_degree(v as u32), v as u32, Side::In));
    }
    entries.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    DegreeSequence { entries }
}

/// Flips the orientation of every edge.
pub fn reverse_orientation(d: &Digraph) -> Digraph {
    Digraph {
        n: d.n,
        m: d.m,
        out_adj: d.in_adj.clone(),
        in_adj: d.out_adj.clone(),
    }
}
