//! Seeded sampling of the binomial models `D_{n,p}`, `B_{n,p}` and of
//! uniform permutations.

use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::bipartite::BipartiteGraph;
use crate::digraph::Digraph;
use crate::permutation::Permutation;
use crate::rng::Stream;

/// Invalid probability argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvalidProbability(pub f64);

impl fmt::Display for InvalidProbability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "probability {} is not in [0, 1]", self.0)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for InvalidProbability {}

pub fn check_probability(p: f64) -> Result<(), InvalidProbability> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(InvalidProbability(p))
    }
}

/// Each ordered pair `u ≠ v` becomes an edge independently with probability `p`.
pub fn sample_digraph(n: usize, p: f64, rng: &mut Stream) -> Digraph {
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in 0..n as u32 {
            if u != v && rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Digraph::from_edges(n, &edges).expect("sampled edges are valid")
}

/// Each of the `n²` pairs `xy` becomes an edge independently with probability `p`.
pub fn sample_bipartite(n: usize, p: f64, rng: &mut Stream) -> BipartiteGraph {
    let mut edges = Vec::new();
    for x in 0..n as u32 {
        for y in 0..n as u32 {
            if rng.gen::<f64>() < p {
                edges.push((x, y));
            }
        }
    }
    BipartiteGraph::from_edges(n, &edges).expect("sampled edges are valid")
}

/// Uniform permutation via Fisher–Yates.
pub fn sample_permutation(n: usize, rng: &mut Stream) -> Permutation {
    let mut image: Vec<u32> = (0..n as u32).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        image.swap(i, j);
    }
    Permutation::from_image(image).expect("shuffle preserves bijectivity")
}
