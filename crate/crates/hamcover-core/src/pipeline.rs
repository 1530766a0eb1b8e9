//! The end-to-end covering pipeline.
//!
//! Stages: sample `(B, π)` and project (or adopt a provided digraph with
//! the identity permutation); pick the anchor and orientation; cover the
//! projection by anchored linear forests plus reserved edges and a sparse
//! residual; turn each forest into a Hamilton cycle; split the remaining
//! residual into directed matchings by proper edge coloring; cover each
//! matching class together with its share of the reserved edges; cover
//! whatever is left by fallback cycles. The emitted certificate is
//! re-verified against the target digraph before it is returned.
//!
//! Every cycle through the anchor pays for one of its out-edges, so the
//! cover size is the anchor's out-degree plus the number of fallback
//! cycles; with no fallbacks it equals `Δ₁` exactly.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::cover::{verify_cover, CoverCertificate, StageTag};
use crate::cover_forest::{
    cover_forest_family, cover_forest_seeded, cover_matching_with_reserved, DirectedMatching,
    FamilyOptions, SolveAudit,
};
use crate::digraph::{ordered_degree_sequence, reverse_orientation, Digraph};
use crate::edge_color::proper_edge_color;
use crate::forest::{almost_forest_cover, ForestCoverPlan, ForestOptions, MatchingRoute};
use crate::hamilton::HamiltonCycle;
use crate::multigraph::underlying_multigraph;
use crate::permutation::Permutation;
use crate::project::project;
use crate::rng::{self, streams};
use crate::sample::{check_probability, sample_bipartite, sample_permutation};
use crate::BipartiteGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunMode {
    /// Enforce every checkable precondition of the construction and abort
    /// loudly when one fails.
    Strict,
    /// Apply the documented fallbacks and report the excess they cost.
    Adaptive,
}

impl fmt::Display for RunMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunMode::Strict => write!(f, "strict"),
            RunMode::Adaptive => write!(f, "adaptive"),
        }
    }
}

impl RunMode {
    pub fn parse(s: &str) -> Option<RunMode> {
        match s {
            "strict" => Some(RunMode::Strict),
            "adaptive" => Some(RunMode::Adaptive),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
    pub mode: RunMode,
    pub solver_budget: u64,
    pub retry_cap: u32,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n: 100,
            p: 0.3,
            seed: 0,
            mode: RunMode::Adaptive,
            solver_budget: 400_000,
            retry_cap: 5,
        }
    }
}

/// Per-run accounting and stage audits.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub n: usize,
    pub seed: u64,
    pub mode: RunMode,
    pub delta1: usize,
    pub cover_size: usize,
    /// `cover_size − Δ₁`; zero exactly when no fallback cycle was needed.
    pub excess: usize,
    pub t: usize,
    pub reserved_count: usize,
    pub flipped: bool,
    pub route: MatchingRoute,
    pub dropped_factors: usize,
    pub forest_components_max: usize,
    pub component_threshold: f64,
    pub components_pass: bool,
    pub residual1_max_degree: usize,
    pub residual1_scale: f64,
    pub residual2_max_degree: usize,
    pub residual2_threshold: f64,
    pub demoted_forests: usize,
    pub residual_edges: usize,
    pub residual_after_drop: usize,
    pub palette: usize,
    pub coloring_fallback: bool,
    pub class_sizes: Vec<usize>,
    pub fallback_cycles: usize,
    /// `t + |E| = Δ₁`, checked on the emitted certificate.
    pub count_identity: bool,
    /// Filled by callers that time the run; not part of the certificate.
    pub wall_ms: u64,
}

/// Everything a run produces: the target digraph, the verified certificate
/// and the report.
#[derive(Debug, Clone)]
pub struct RunArtifacts {
    pub digraph: Digraph,
    pub certificate: CoverCertificate,
    pub report: RunReport,
    /// The forest-stage plan, for serialization; absent on empty inputs.
    pub plan: Option<ForestCoverPlan>,
    /// Per-forest solve audits from the family stage.
    pub family_audits: Vec<SolveAudit>,
}

#[derive(Debug, Clone)]
pub enum PipelineError {
    InvalidConfig(String),
    /// A checkable precondition failed in strict mode; the stage names it.
    StrictAbort { stage: &'static str, detail: String },
    /// The assembled certificate failed verification (a bug, not an input
    /// property).
    VerificationFailed { uncovered: usize, bad_cycles: usize },
}

impl fmt::Display for PipelineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PipelineError::InvalidConfig(msg) => write!(f, "invalid config: {msg}"),
            PipelineError::StrictAbort { stage, detail } => {
                write!(f, "strict-mode abort at {stage}: {detail}")
            }
            PipelineError::VerificationFailed { uncovered, bad_cycles } => write!(
                f,
                "certificate failed verification: {uncovered} uncovered edges, {bad_cycles} bad cycles"
            ),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for PipelineError {}

/// Samples `B_{n,p}` and a uniform permutation from the seed, projects, and
/// covers the projected digraph.
pub fn cover_digraph(config: &RunConfig) -> Result<RunArtifacts, PipelineError> {
    check_probability(config.p)
        .map_err(|e| PipelineError::InvalidConfig(alloc::format!("{e}")))?;
    if config.n == 0 {
        return Err(PipelineError::InvalidConfig(String::from("n must be positive")));
    }
    let b = sample_bipartite(
        config.n,
        config.p,
        &mut rng::stream(config.seed, streams::BIPARTITE_SAMPLE),
    );
    let pi = sample_permutation(
        config.n,
        &mut rng::stream(config.seed, streams::PERMUTATION_SAMPLE),
    );
    cover_with_model(&b, &pi, config)
}

/// Covers a provided digraph: the bipartite model is the edge set itself
/// with the identity permutation, so the projection is exactly `d`.
pub fn cover_digraph_input(d: &Digraph, config: &RunConfig) -> Result<RunArtifacts, PipelineError> {
    let edges: Vec<(u32, u32)> = d.edges().collect();
    let b = BipartiteGraph::from_edges(d.n(), &edges).expect("digraph edges fit the bipartite shape");
    let pi = Permutation::identity(d.n());
    cover_with_model(&b, &pi, config)
}

fn cover_with_model(
    b: &BipartiteGraph,
    pi: &Permutation,
    config: &RunConfig,
) -> Result<RunArtifacts, PipelineError> {
    let strict = config.mode == RunMode::Strict;
    let target_pre = project(b, pi).expect("sizes agree");
    if target_pre.m() == 0 {
        // Nothing to cover.
        let cert = CoverCertificate::assemble(&target_pre, Vec::new(), Vec::new());
        let report = empty_report(config, &target_pre);
        return Ok(RunArtifacts {
            digraph: target_pre,
            certificate: cert,
            report,
            plan: None,
            family_audits: Vec::new(),
        });
    }

    // Stage 1: anchored forest cover of the projection.
    let forest_opts = ForestOptions {
        seed: config.seed,
        bias_budget: config.solver_budget,
        allow_padded_route: !strict,
    };
    let plan = match almost_forest_cover(b, pi, &forest_opts) {
        Ok(plan) => plan,
        Err(failure) => {
            return Err(PipelineError::StrictAbort {
                stage: "matching-cover",
                detail: alloc::format!("{} infeasible", failure.stage),
            })
        }
    };
    let working = plan.working.clone();
    let x = plan.anchor_vertex;
    let p_est = working.m() as f64 / (working.n() * (working.n() - 1).max(1)) as f64;

    if strict && plan.route == MatchingRoute::Padded {
        return Err(PipelineError::StrictAbort {
            stage: "matching-cover",
            detail: String::from("padded fallback route engaged"),
        });
    }

    // Stage 2: one Hamilton cycle per forest.
    let family_opts = FamilyOptions {
        seed: config.seed,
        budget: config.solver_budget,
        retry_cap: config.retry_cap,
        p_estimate: p_est,
    };
    let r1_edges: Vec<(u32, u32)> = plan.residual.edges().collect();
    let family = cover_forest_family(&working, &plan.forests, x, &plan.anchors, &family_opts, &r1_edges);
    if strict && !family.demoted.is_empty() {
        return Err(PipelineError::StrictAbort {
            stage: "forest-cover",
            detail: alloc::format!("{} forests demoted", family.demoted.len()),
        });
    }

    let mut cycles: Vec<HamiltonCycle> = Vec::new();
    let mut tags: Vec<StageTag> = Vec::new();
    for c in family.cycles.iter().flatten() {
        cycles.push(c.clone());
        tags.push(StageTag::Forest);
    }
    let t_effective = cycles.len();

    // Reserved pool: planned reserved edges plus demoted anchors.
    let mut reserved: Vec<(u32, u32)> = plan.reserved.clone();
    for &i in &family.demoted {
        reserved.push((x, plan.anchors[i as usize]));
    }

    // Stage 3: residual edges not already riding some emitted cycle.
    let mut covered: BTreeSet<(u32, u32)> = cycles.iter().flat_map(|c| c.edges()).collect();
    let mut residual_set: BTreeSet<(u32, u32)> = plan.residual.edges().collect();
    residual_set.extend(family.residual.iter().copied());
    let residual_total = residual_set.len();
    residual_set.retain(|e| !covered.contains(e));
    let residual_after_drop = residual_set.len();

    let residual_digraph = {
        let edges: Vec<(u32, u32)> = residual_set.iter().copied().collect();
        Digraph::from_edges(working.n(), &edges).expect("valid residual edges")
    };
    let tilde = underlying_multigraph(&residual_digraph);
    let coloring = proper_edge_color(&tilde);
    let mut classes: Vec<Vec<(u32, u32)>> = coloring
        .classes()
        .into_iter()
        .map(|ids| ids.into_iter().map(|e| tilde.origin(e)).collect())
        .collect();
    // Largest classes first so the scarce reserved edges pay for the bulk
    // of the residual.
    classes.sort_by_key(|c| core::cmp::Reverse(c.len()));
    let palette = classes.len();

    // Stage 4: split the reserved edges nearly evenly across the classes.
    let r_classes = classes.len();
    let mut class_sizes: Vec<usize> = Vec::new();
    let mut leftover_pool: Vec<(u32, u32)> = Vec::new();
    let mut reserved_rng = rng::stream(config.seed, streams::RESERVED_STAGE);
    if r_classes == 0 {
        // No residual: every reserved edge rides its own batch.
        if !reserved.is_empty() {
            let m = DirectedMatching::default();
            let pool: BTreeSet<(u32, u32)> = residual_set.clone();
            let out = cover_matching_with_reserved(
                &working,
                &m,
                x,
                &reserved,
                config.solver_budget,
                &mut reserved_rng,
                Some(&pool),
            );
            for (i, c) in out.cycles.into_iter().enumerate() {
                match c {
                    Some(c) => {
                        covered.extend(c.edges());
                        cycles.push(c);
                        tags.push(StageTag::Reserved);
                    }
                    None => leftover_pool.push(reserved[i]),
                }
            }
            leftover_pool.extend(out.leftover);
        }
    } else {
        let share = reserved.len() / r_classes;
        let extra = reserved.len() % r_classes;
        if strict {
            let min_share = share;
            if min_share < 10 {
                return Err(PipelineError::StrictAbort {
                    stage: "reserved-split",
                    detail: alloc::format!(
                        "batch size {} below 10 across {} classes",
                        min_share,
                        r_classes
                    ),
                });
            }
        }
        let mut cursor = 0usize;
        for (ci, class) in classes.iter().enumerate() {
            let take = share + usize::from(ci < extra);
            let s = &reserved[cursor..cursor + take];
            cursor += take;
            class_sizes.push(take);
            if strict && class.iter().any(|&(a, b)| a == x || b == x) {
                return Err(PipelineError::StrictAbort {
                    stage: "reserved-batch-hypothesis",
                    detail: String::from("anchor vertex is matched in a residual class"),
                });
            }
            let m = match DirectedMatching::new(class.clone()) {
                Ok(m) => m,
                Err(_) => unreachable!("color classes are vertex-disjoint"),
            };
            if s.is_empty() {
                // No reserved edge to pay for this class; its arcs join the
                // fallback pool.
                leftover_pool.extend(class.iter().copied());
                continue;
            }
            let pool: BTreeSet<(u32, u32)> = residual_set
                .iter()
                .filter(|e| !covered.contains(*e))
                .copied()
                .collect();
            let out = cover_matching_with_reserved(
                &working,
                &m,
                x,
                s,
                config.solver_budget,
                &mut reserved_rng,
                Some(&pool),
            );
            let tag = if m.is_empty() { StageTag::Reserved } else { StageTag::Residual };
            for (i, c) in out.cycles.into_iter().enumerate() {
                match c {
                    Some(c) => {
                        covered.extend(c.edges());
                        cycles.push(c);
                        tags.push(tag);
                    }
                    None => leftover_pool.push(s[i]),
                }
            }
            leftover_pool.extend(out.leftover);
        }
    }

    // Stage 5: fallback cycles for anything still uncovered.
    let mut uncovered: BTreeSet<(u32, u32)> = residual_set
        .iter()
        .filter(|e| !covered.contains(*e))
        .copied()
        .collect();
    for e in leftover_pool {
        if !covered.contains(&e) {
            uncovered.insert(e);
        }
    }
    if strict && !uncovered.is_empty() {
        return Err(PipelineError::StrictAbort {
            stage: "reserved-pool-exhausted",
            detail: alloc::format!("{} residual edges need fallback cycles", uncovered.len()),
        });
    }
    let mut fallback_cycles = 0usize;
    let mut fallback_rng = rng::stream(config.seed, streams::RESERVED_STAGE + 1000);
    while !uncovered.is_empty() {
        // Pack a maximal linear forest from the uncovered pool.
        let forest_edges = pack_linear_forest(working.n(), &uncovered);
        let forest = crate::forest::LinearForest::from_edges(working.n(), &forest_edges)
            .expect("packing maintains forest shape");
        let pool: BTreeSet<(u32, u32)> = uncovered.clone();
        match cover_forest_seeded(&working, &forest, config.solver_budget, &mut fallback_rng, Some(&pool))
        {
            Ok(c) => {
                covered.extend(c.edges());
                for e in &forest_edges {
                    uncovered.remove(e);
                }
                uncovered.retain(|e| !covered.contains(e));
                cycles.push(c);
                tags.push(StageTag::Fallback);
                fallback_cycles += 1;
            }
            Err(_) => {
                if forest_edges.len() == 1 {
                    // A single uncoverable edge means the certificate cannot
                    // exist; surface it as a verification failure below.
                    break;
                }
                // Retry edge by edge.
                let mut progressed = false;
                for &e in &forest_edges {
                    if covered.contains(&e) {
                        uncovered.remove(&e);
                        continue;
                    }
                    let single = crate::forest::LinearForest::from_edges(working.n(), &[e])
                        .expect("single edge is a forest");
                    if let Ok(c) = cover_forest_seeded(
                        &working,
                        &single,
                        config.solver_budget,
                        &mut fallback_rng,
                        None,
                    ) {
                        covered.extend(c.edges());
                        uncovered.remove(&e);
                        cycles.push(c);
                        tags.push(StageTag::Fallback);
                        fallback_cycles += 1;
                        progressed = true;
                    }
                }
                if !progressed {
                    break;
                }
                uncovered.retain(|e| !covered.contains(e));
            }
        }
    }

    // Unflip and assemble.
    let target = if plan.flipped { reverse_orientation(&working) } else { working.clone() };
    let final_cycles: Vec<HamiltonCycle> = if plan.flipped {
        cycles.iter().map(|c| c.reversed()).collect()
    } else {
        cycles
    };
    let certificate = CoverCertificate::assemble(&target, final_cycles, tags);
    let check = verify_cover(&target, &certificate);
    if !check.valid {
        return Err(PipelineError::VerificationFailed {
            uncovered: check.uncovered.len(),
            bad_cycles: check.bad_cycles.len(),
        });
    }

    let seq = ordered_degree_sequence(&target);
    let delta1 = seq.delta(1);
    let cover_size = certificate.size();
    assert!(cover_size >= delta1, "a valid cover cannot beat the degree bound");
    let excess = cover_size - delta1;
    if strict && excess != 0 {
        return Err(PipelineError::StrictAbort {
            stage: "count-identity",
            detail: alloc::format!("cover size {cover_size} exceeds Δ₁ = {delta1}"),
        });
    }
    let report = RunReport {
        n: config.n,
        seed: config.seed,
        mode: config.mode,
        delta1,
        cover_size,
        excess,
        t: t_effective,
        reserved_count: reserved.len(),
        flipped: plan.flipped,
        route: plan.route,
        dropped_factors: plan.audits.dropped_factors,
        forest_components_max: plan.audits.component_counts.iter().copied().max().unwrap_or(0),
        component_threshold: plan.audits.component_threshold,
        components_pass: plan.audits.components_pass,
        residual1_max_degree: plan.audits.residual_max_degree,
        residual1_scale: plan.audits.residual_scale,
        residual2_max_degree: family.residual_max_degree,
        residual2_threshold: family.residual_threshold,
        demoted_forests: family.demoted.len(),
        residual_edges: residual_total,
        residual_after_drop,
        palette,
        coloring_fallback: coloring.used_fallback,
        class_sizes,
        fallback_cycles,
        count_identity: excess == 0,
        wall_ms: 0,
    };
    Ok(RunArtifacts {
        digraph: target,
        certificate,
        report,
        family_audits: family.audits,
        plan: Some(plan),
    })
}

fn empty_report(config: &RunConfig, d: &Digraph) -> RunReport {
    RunReport {
        n: d.n(),
        seed: config.seed,
        mode: config.mode,
        delta1: 0,
        cover_size: 0,
        excess: 0,
        t: 0,
        reserved_count: 0,
        flipped: false,
        route: MatchingRoute::TwoFamily,
        dropped_factors: 0,
        forest_components_max: 0,
        component_threshold: 0.0,
        components_pass: true,
        residual1_max_degree: 0,
        residual1_scale: 0.0,
        residual2_max_degree: 0,
        residual2_threshold: 0.0,
        demoted_forests: 0,
        residual_edges: 0,
        residual_after_drop: 0,
        palette: 0,
        coloring_fallback: false,
        class_sizes: Vec::new(),
        fallback_cycles: 0,
        count_identity: true,
        wall_ms: 0,
    }
}

/// Greedily packs a maximal linear forest out of the pool: edges join in
/// order as long as every vertex keeps in/out degree at most one and no
/// directed cycle closes.
fn pack_linear_forest(n: usize, pool: &BTreeSet<(u32, u32)>) -> Vec<(u32, u32)> {
    let mut has_out = alloc::vec![false; n];
    let mut has_in = alloc::vec![false; n];
    // Union-find over the path structure to refuse closing a cycle.
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(parent: &mut [u32], v: u32) -> u32 {
        let mut v = v;
        while parent[v as usize] != v {
            parent[v as usize] = parent[parent[v as usize] as usize];
            v = parent[v as usize];
        }
        v
    }
    let mut out = Vec::new();
    for &(u, v) in pool {
        if has_out[u as usize] || has_in[v as usize] {
            continue;
        }
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            continue;
        }
        parent[ru as usize] = rv;
        has_out[u as usize] = true;
        has_in[v as usize] = true;
        out.push((u, v));
    }
    out
}
