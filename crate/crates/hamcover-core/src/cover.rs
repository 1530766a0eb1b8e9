//! Covering certificates: a family of Hamilton cycles together with a
//! per-edge witness, and an independent verifier.
//!
//! Verification never trusts stage metadata: the witness map is re-derived
//! by traversing the cycles.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::digraph::Digraph;
use crate::hamilton::{verify_hamilton_cycle, HamiltonCycle};

/// Which pipeline stage produced a cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StageTag {
    /// Covers one linear forest from the almost-forest stage.
    Forest,
    /// Covers a residual matching class together with a reserved edge.
    Residual,
    /// Covers reserved out-edges of the anchor vertex (possibly paired with
    /// a displaced residual edge).
    Reserved,
    /// Covers leftover residual edges with no reserved edge; each of these
    /// raises the cover size above the lower bound by one.
    Fallback,
}

impl StageTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            StageTag::Forest => "forest-stage",
            StageTag::Residual => "residual-stage",
            StageTag::Reserved => "reserved-stage",
            StageTag::Fallback => "fallback",
        }
    }

    pub fn parse(s: &str) -> Option<StageTag> {
        match s {
            "forest-stage" => Some(StageTag::Forest),
            "residual-stage" => Some(StageTag::Residual),
            "reserved-stage" => Some(StageTag::Reserved),
            "fallback" => Some(StageTag::Fallback),
            _ => None,
        }
    }
}

impl fmt::Display for StageTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

/// A family of Hamilton cycles covering a digraph, with a witness cycle per
/// edge and per-cycle provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverCertificate {
    pub cycles: Vec<HamiltonCycle>,
    /// Edge → index of a cycle traversing it.
    pub witness: BTreeMap<(u32, u32), u32>,
    /// One tag per cycle.
    pub stage_tags: Vec<StageTag>,
}

impl CoverCertificate {
    /// Assembles a certificate for `d`, deriving the witness map by
    /// traversal (first covering cycle wins).
    pub fn assemble(d: &Digraph, cycles: Vec<HamiltonCycle>, stage_tags: Vec<StageTag>) -> Self {
        assert_eq!(cycles.len(), stage_tags.len());
        let mut witness = BTreeMap::new();
        for (i, c) in cycles.iter().enumerate() {
            for (u, v) in c.edges() {
                if d.has_edge(u, v) {
                    witness.entry((u, v)).or_insert(i as u32);
                }
            }
        }
        CoverCertificate { cycles, witness, stage_tags }
    }

    pub fn size(&self) -> usize {
        self.cycles.len()
    }
}

/// Result of [`verify_cover`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverReport {
    pub valid: bool,
    pub size: usize,
    /// Edges of the target not traversed by any cycle.
    pub uncovered: Vec<(u32, u32)>,
    /// Indices of cycles that are not Hamilton cycles of the target.
    pub bad_cycles: Vec<u32>,
}

/// Checks a certificate against `d`: every cycle must be a Hamilton cycle
/// of `d` (no extra edges permitted), every edge of `d` must be traversed
/// by at least one cycle, and the stored witness must point at a cycle that
/// really contains its edge.
pub fn verify_cover(d: &Digraph, cert: &CoverCertificate) -> CoverReport {
    let mut bad_cycles = Vec::new();
    for (i, c) in cert.cycles.iter().enumerate() {
        if !verify_hamilton_cycle(d, &[], c) {
            bad_cycles.push(i as u32);
        }
    }
    // Re-derive coverage by traversal.
    let mut covered: BTreeMap<(u32, u32), u32> = BTreeMap::new();
    for (i, c) in cert.cycles.iter().enumerate() {
        for e in c.edges() {
            covered.entry(e).or_insert(i as u32);
        }
    }
    let uncovered: Vec<(u32, u32)> = d.edges().filter(|e| !covered.contains_key(e)).collect();
    let witness_ok = d.edges().all(|e| {
        cert.witness
            .get(&e)
            .is_some_and(|&i| (i as usize) < cert.cycles.len() && {
                let (u, v) = e;
                cert.cycles[i as usize].contains_edge(u, v)
            })
    });
    CoverReport {
        valid: bad_cycles.is_empty() && uncovered.is_empty() && witness_ok,
        size: cert.cycles.len(),
        uncovered,
        bad_cycles,
    }
}
