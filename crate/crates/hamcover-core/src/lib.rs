//! Constructive Hamilton cycle coverings of random digraphs.
//!
//! This crate builds, for a digraph `D` (typically sampled from the binomial
//! model `D_{n,p}`), an edge covering by directed Hamilton cycles whose size
//! matches the trivial lower bound `Δ(D)` whenever the construction goes
//! through cleanly, together with independently checkable certificates for
//! every stage:
//!
//! * [`digraph`], [`bipartite`], [`permutation`] — the base types,
//! * [`sample`] and [`project`] — seeded random models and the permutation
//!   projection that couples bipartite graphs with digraphs,
//! * [`flow`], [`factors`], [`matchings`] — regular subgraphs, f-factors and
//!   perfect-matching covers of bipartite graphs,
//! * [`forest`] — breaking projected 1-factors into linear forests,
//! * [`contract`], [`hamilton`], [`cover_forest`] — covering linear forests
//!   and directed matchings with Hamilton cycles,
//! * [`multigraph`], [`edge_color`] — residual splitting via proper edge
//!   coloring,
//! * [`audit`], [`cycle_stats`] — statistical audits and exact-target
//!   permutation statistics,
//! * [`pipeline`] — the end-to-end covering run.
//!
//! The crate is `no_std` (with `alloc`); all IO, file formats and the CLI
//! live in the companion `hamcover` crate.
//!
//! # Randomness
//!
//! Every stochastic operation draws from [`rng::Stream`], a thin wrapper
//! around `ChaCha12` fixed to a 64-bit seed plus a 64-bit substream id.
//! Identical `(seed, stream)` pairs replay bit-exactly, so whole pipeline
//! runs are reproducible from a single seed.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod audit;
pub mod bipartite;
pub mod contract;
pub mod cover;
pub mod cover_forest;
pub mod cycle_stats;
pub mod digraph;
pub mod edge_color;
pub mod factors;
pub mod flow;
pub mod forest;
pub mod hamilton;
pub mod hopcroft_karp;
pub mod matchings;
pub mod multigraph;
pub mod permutation;
pub mod pipeline;
pub mod project;
pub mod rng;
pub mod sample;

pub use bipartite::BipartiteGraph;
pub use cover::{verify_cover, CoverCertificate, CoverReport, StageTag};
pub use digraph::{ordered_degree_sequence, reverse_orientation, DegreeSequence, Digraph, Side};
pub use forest::LinearForest;
pub use pipeline::{cover_digraph, cover_digraph_input, RunArtifacts, RunConfig, RunMode, RunReport};
pub use hamilton::{find_hamilton, HamiltonCycle, SearchOutcome};
pub use permutation::Permutation;

