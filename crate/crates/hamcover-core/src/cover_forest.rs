//! Covering linear forests and directed matchings with Hamilton cycles.
//!
//! A spanning linear forest is covered by contracting its paths, finding a
//! Hamilton cycle of the contraction, and expanding back; the expansion is
//! a Hamilton cycle of `D ∪ F` traversing every forest edge. Families of
//! anchored forests are first sparsified at rate `q = t^{-2/3}`; edges the
//! final cycles fail to cover accumulate in the residual `R₂`.
//!
//! The contraction solver is handed a preference set of still-uncovered
//! residual edges: whenever one of them runs from a path sink to a path
//! source it is an eligible connector, and routing through it covers it for
//! free. This only biases the search order, never validity.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;

use crate::contract::{contract, ContractionDigraph};
use crate::digraph::Digraph;
use crate::forest::LinearForest;
use crate::hamilton::{find_hamilton_seeded, verify_hamilton_cycle, HamiltonCycle, SearchOutcome};
use crate::rng::{streams, Stream};

/// Failure of a single forest-covering solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverForestError {
    ForestNotSpanning,
    /// The contraction has no Hamilton cycle (proven), so no Hamilton cycle
    /// of `D ∪ F` covers `F`.
    Infeasible,
    BudgetExhausted,
}

impl fmt::Display for CoverForestError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverForestError::ForestNotSpanning => write!(f, "forest must span the host"),
            CoverForestError::Infeasible => write!(f, "no Hamilton cycle covers this forest"),
            CoverForestError::BudgetExhausted => write!(f, "search budget exhausted"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for CoverForestError {}

/// Finds a Hamilton cycle of `D ∪ F` containing every edge of `F`.
/// The forest's edges need not lie in `D`.
pub fn cover_forest(d: &Digraph, f: &LinearForest, budget: u64) -> Result<HamiltonCycle, CoverForestError> {
    let mut rng = Stream::seed_from_u64(0x466f_7265);
    cover_forest_seeded(d, f, budget, &mut rng, None)
}

/// [`cover_forest`] with a caller-supplied generator and optional edges the
/// contraction solver should prefer to traverse as connectors.
pub fn cover_forest_seeded(
    d: &Digraph,
    f: &LinearForest,
    budget: u64,
    rng: &mut Stream,
    prefer: Option<&BTreeSet<(u32, u32)>>,
) -> Result<HamiltonCycle, CoverForestError> {
    if f.n() != d.n() {
        return Err(CoverForestError::ForestNotSpanning);
    }
    if f.component_count() == 1 {
        // A single spanning path closes directly or not at all.
        let path = &f.paths()[0];
        let (source, sink) = (path[0], *path.last().unwrap());
        if d.has_edge(sink, source) {
            let cycle = HamiltonCycle::new(path.clone());
            debug_assert!(verify_extended(d, f, &cycle));
            return Ok(cycle);
        }
        return Err(CoverForestError::Infeasible);
    }
    let contraction = contract(d, f).map_err(|_| CoverForestError::ForestNotSpanning)?;
    let contraction_prefer = prefer.map(|pool| preferred_contraction_edges(&contraction, pool));
    match find_hamilton_seeded(
        contraction.graph(),
        budget,
        rng,
        contraction_prefer.as_ref(),
    ) {
        SearchOutcome::Found(c) => {
            let expanded = contraction.expand(&c);
            assert!(verify_extended(d, f, &expanded), "expansion must verify");
            Ok(expanded)
        }
        SearchOutcome::Infeasible => Err(CoverForestError::Infeasible),
        SearchOutcome::BudgetExhausted => Err(CoverForestError::BudgetExhausted),
    }
}

/// A cycle is acceptable iff it is a Hamilton cycle of `D ∪ F` containing
/// every forest edge.
fn verify_extended(d: &Digraph, f: &LinearForest, cycle: &HamiltonCycle) -> bool {
    let extra: Vec<(u32, u32)> = f.edges().collect();
    verify_hamilton_cycle(d, &extra, cycle) && f.edges().all(|(u, v)| cycle.contains_edge(u, v))
}

fn preferred_contraction_edges(
    contraction: &ContractionDigraph,
    pool: &BTreeSet<(u32, u32)>,
) -> BTreeSet<(u32, u32)> {
    let mut out = BTreeSet::new();
    let g = contraction.graph();
    for (i, j) in g.edges() {
        let (_, sink) = contraction.endpoints(i);
        let (source, _) = contraction.endpoints(j);
        if pool.contains(&(sink, source)) {
            out.insert((i, j));
        }
    }
    out
}

/// Tuning for [`cover_forest_family`].
#[derive(Debug, Clone, Copy)]
pub struct FamilyOptions {
    pub seed: u64,
    pub budget: u64,
    /// Fresh sparsifications per forest before demotion.
    pub retry_cap: u32,
    /// Edge probability estimate of the host, used only for audit scales.
    pub p_estimate: f64,
}

/// Per-forest solve audit: measured values next to their analytic scales
/// (logged, never enforced).
#[derive(Debug, Clone, PartialEq)]
pub struct SolveAudit {
    /// Components of the sparsified forest.
    pub components: usize,
    /// `n^{1/3} / (2 p^{2/3})`.
    pub component_floor: f64,
    /// `δ` of the contraction digraph.
    pub contraction_min_degree: usize,
    /// `3 p ℓ / 4`.
    pub degree_floor: f64,
    pub retries: u32,
    pub demoted: bool,
}

/// Result of covering an anchored family.
#[derive(Debug, Clone)]
pub struct FamilyOutcome {
    /// One entry per input forest; `None` marks a demoted forest.
    pub cycles: Vec<Option<HamiltonCycle>>,
    /// `R₂ = ∪ (F_i ∖ C_i)`, deduplicated.
    pub residual: Vec<(u32, u32)>,
    /// Indices of demoted forests (their anchor edges return to the
    /// reserved pool).
    pub demoted: Vec<u32>,
    /// `Δ(R₂)` and the `7 t^{1/3}` audit threshold.
    pub residual_max_degree: usize,
    pub residual_threshold: f64,
    pub audits: Vec<SolveAudit>,
}

/// Sparsification probability `q = t^{-2/3}`.
pub fn sparsify_probability(t: usize) -> f64 {
    if t == 0 {
        return 0.0;
    }
    libm::pow(t as f64, -2.0 / 3.0)
}

/// Audit threshold `7 t^{1/3}` for `Δ(R₂)`.
pub fn residual_degree_threshold(t: usize) -> f64 {
    7.0 * libm::cbrt(t as f64)
}

/// Covers each anchored forest `F_i` by a Hamilton cycle `C_i ⊆ D ∪ F_i`
/// containing the anchor edge `x → y_i`.
///
/// Every non-anchor edge of `F_i` is first removed independently with
/// probability `q = t^{-2/3}`; a forest whose sparsifications all fail the
/// solver within the retry cap is demoted (its edges join `R₂`, its anchor
/// returns to the reserved pool). `initial_pool` seeds the set of
/// uncovered residual edges; those (and the forest's own removals) are
/// merged back into the forest wherever they fit and offered to the solver
/// as preferred connectors elsewhere, so each cycle absorbs as much of the
/// residual as it can.
pub fn cover_forest_family(
    d: &Digraph,
    forests: &[LinearForest],
    x: u32,
    anchors: &[u32],
    opts: &FamilyOptions,
    initial_pool: &[(u32, u32)],
) -> FamilyOutcome {
    assert_eq!(forests.len(), anchors.len());
    let t = forests.len();
    let q = sparsify_probability(t);
    let n = d.n();
    let mut pool: BTreeSet<(u32, u32)> = initial_pool.iter().copied().collect();
    let mut cycles: Vec<Option<HamiltonCycle>> = Vec::with_capacity(t);
    let mut demoted: Vec<u32> = Vec::new();
    let mut residual: BTreeSet<(u32, u32)> = BTreeSet::new();
    let mut audits: Vec<SolveAudit> = Vec::with_capacity(t);
    for (i, forest) in forests.iter().enumerate() {
        let anchor_edge = (x, anchors[i]);
        debug_assert!(forest.contains_edge(anchor_edge.0, anchor_edge.1));
        let mut solved: Option<(HamiltonCycle, LinearForest, u32)> = None;
        let mut last_audit: Option<SolveAudit> = None;
        for attempt in 0..=opts.retry_cap {
            let stream_id = streams::SPARSIFY_BASE
                + (i as u64) * streams::RETRY_STRIDE
                + attempt as u64;
            let mut rng = crate::rng::stream(opts.seed, stream_id);
            let kept: Vec<(u32, u32)> = forest
                .edges()
                .filter(|&e| e == anchor_edge || rng.gen::<f64>() >= q)
                .collect();
            let sparsified =
                LinearForest::from_edges(n, &kept).expect("removals keep a linear forest");
            // Removed edges are candidates for free coverage: first-choice
            // targets for merging back, then preferred connectors.
            let removed: Vec<(u32, u32)> = forest
                .edges()
                .filter(|e| !sparsified.contains_edge(e.0, e.1))
                .collect();
            let mut prefer = pool.clone();
            prefer.extend(removed.iter().copied());
            let to_solve = if attempt < opts.retry_cap {
                augment_forest(&sparsified, removed.iter().chain(pool.iter()).copied())
            } else {
                // Final attempt: maximal freedom for the solver.
                sparsified.clone()
            };
            let audit = audit_for(d, &sparsified, opts.p_estimate, attempt);
            last_audit = Some(audit.clone());
            match cover_forest_seeded(d, &to_solve, opts.budget, &mut rng, Some(&prefer)) {
                Ok(cycle) => {
                    solved = Some((cycle, sparsified, attempt));
                    break;
                }
                Err(_) => continue,
            }
        }
        match solved {
            Some((cycle, _u, attempt)) => {
                assert!(
                    cycle.contains_edge(anchor_edge.0, anchor_edge.1),
                    "anchor edge must ride its own cycle"
                );
                let covered: BTreeSet<(u32, u32)> = cycle.edges().collect();
                for e in forest.edges() {
                    if !covered.contains(&e) {
                        residual.insert(e);
                        pool.insert(e);
                    }
                }
                pool.retain(|e| !covered.contains(e));
                let mut audit = last_audit.take().expect("at least one attempt ran");
                audit.retries = attempt;
                audits.push(audit);
                cycles.push(Some(cycle));
            }
            None => {
                for e in forest.edges() {
                    if e != anchor_edge {
                        residual.insert(e);
                        pool.insert(e);
                    }
                }
                demoted.push(i as u32);
                let mut audit = last_audit.take().expect("at least one attempt ran");
                audit.retries = opts.retry_cap;
                audit.demoted = true;
                audits.push(audit);
                cycles.push(None);
            }
        }
    }
    let residual: Vec<(u32, u32)> = residual.into_iter().collect();
    let r2 = Digraph::from_edges(n, &residual).expect("valid edges");
    FamilyOutcome {
        cycles,
        residual,
        demoted,
        residual_max_degree: r2.max_degree(),
        residual_threshold: residual_degree_threshold(t),
        audits,
    }
}

/// Merges candidate edges into a forest wherever the endpoints are still a
/// free sink/source pair and no cycle closes. Candidates must be host
/// edges; merging only grows what the covering cycle is forced to contain.
pub fn augment_forest(
    forest: &LinearForest,
    candidates: impl Iterator<Item = (u32, u32)>,
) -> LinearForest {
    let n = forest.n();
    let mut has_out = alloc::vec![false; n];
    let mut has_in = alloc::vec![false; n];
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(parent: &mut [u32], v: u32) -> u32 {
        let mut v = v;
        while parent[v as usize] != v {
            parent[v as usize] = parent[parent[v as usize] as usize];
            v = parent[v as usize];
        }
        v
    }
    let mut edges: Vec<(u32, u32)> = forest.edges().collect();
    for &(u, v) in &edges {
        has_out[u as usize] = true;
        has_in[v as usize] = true;
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        parent[ru as usize] = rv;
    }
    for (u, v) in candidates {
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
        edges.push((u, v));
    }
    LinearForest::from_edges(n, &edges).expect("greedy merging preserves forest shape")
}

fn audit_for(d: &Digraph, sparsified: &LinearForest, p: f64, retries: u32) -> SolveAudit {
    let n = d.n() as f64;
    let l = sparsified.component_count();
    let contraction_min_degree = if l >= 2 {
        contract(d, sparsified)
            .map(|c| c.graph().min_degree())
            .unwrap_or(0)
    } else {
        0
    };
    let p_safe = p.max(1e-9);
    SolveAudit {
        components: l,
        component_floor: libm::cbrt(n) / (2.0 * libm::pow(p_safe, 2.0 / 3.0)),
        contraction_min_degree,
        degree_floor: 0.75 * p * l as f64,
        retries,
        demoted: false,
    }
}

/// Directed matching: pairwise vertex-disjoint arcs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DirectedMatching {
    arcs: Vec<(u32, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotAMatching(pub u32);

impl fmt::Display for NotAMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vertex {} appears in two arcs", self.0)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for NotAMatching {}

impl DirectedMatching {
    pub fn new(mut arcs: Vec<(u32, u32)>) -> Result<Self, NotAMatching> {
        arcs.sort_unstable();
        let mut seen: BTreeSet<u32> = BTreeSet::new();
        for &(a, b) in &arcs {
            for v in [a, b] {
                if !seen.insert(v) {
                    return Err(NotAMatching(v));
                }
            }
        }
        Ok(DirectedMatching { arcs })
    }

    pub fn arcs(&self) -> &[(u32, u32)] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }
}

/// Result of [`cover_matching_with_reserved`].
#[derive(Debug, Clone)]
pub struct ReservedCover {
    /// One entry per reserved edge, in input order; entry `i` contains the
    /// i-th reserved edge when present.
    pub cycles: Vec<Option<HamiltonCycle>>,
    /// Matching or reserved edges left uncovered (solver failures or
    /// structurally unplaceable arcs); the pipeline covers these with
    /// fallback cycles.
    pub leftover: Vec<(u32, u32)>,
}

/// Covers a directed matching `M` and a set `S` of reserved out-edges of
/// `x` by exactly `|S|` Hamilton cycles, the i-th containing the i-th
/// reserved edge.
///
/// Heads of `M` are labeled uniformly into `⌊k/2⌋` classes; class `i`
/// becomes the forest `(M_i ∖ {arcs into y_i}) ∪ {x→y_i}`. Displaced arcs
/// pair up with the unused reserved edges, leftover reserved edges ride
/// singleton forests. Arcs into `x` are peeled first, each consuming one
/// reserved edge as the path `z → x → y`.
pub fn cover_matching_with_reserved(
    d: &Digraph,
    m: &DirectedMatching,
    x: u32,
    s: &[(u32, u32)],
    budget: u64,
    rng: &mut Stream,
    prefer_pool: Option<&BTreeSet<(u32, u32)>>,
) -> ReservedCover {
    assert!(s.iter().all(|&(u, _)| u == x), "reserved edges must leave x");
    let k = s.len();
    let n = d.n();
    let mut cycles: Vec<Option<HamiltonCycle>> = alloc::vec![None; k];
    let mut leftover: Vec<(u32, u32)> = Vec::new();
    if k == 0 {
        leftover.extend(m.arcs().iter().copied());
        return ReservedCover { cycles, leftover };
    }

    // Peel arcs touching x: an in-arc z→x chains with a reserved edge; an
    // out-arc x→z duplicates a reserved slot or is structurally leftover.
    let mut remaining: Vec<(u32, u32)> = Vec::new();
    let mut peeled: Vec<(u32, u32)> = Vec::new();
    for &(a, b) in m.arcs() {
        if b == x {
            peeled.push((a, b));
        } else if a == x {
            if let Some(i) = s.iter().position(|&e| e == (a, b)) {
                // The arc is itself a reserved edge; its own batch covers it.
                let _ = i;
            } else {
                leftover.push((a, b));
            }
        } else {
            remaining.push((a, b));
        }
    }
    let mut next_reserved = 0usize;
    for &(z, _) in &peeled {
        if next_reserved >= k {
            leftover.push((z, x));
            continue;
        }
        let i = next_reserved;
        next_reserved += 1;
        let forest_edges = alloc::vec![(z, x), s[i]];
        solve_into(d, n, &forest_edges, s[i], budget, rng, prefer_pool, &mut cycles, i, &mut leftover);
    }

    let k_rest = k - next_reserved;
    if k_rest == 0 {
        leftover.extend(remaining);
        return ReservedCover { cycles, leftover };
    }
    let class_count = (k_rest / 2).max(1);
    let class_base = next_reserved;
    // Uniform head labels over the classes.
    let mut label = alloc::vec![0usize; n];
    for v in 0..n {
        label[v] = rng.gen_range(0..class_count);
    }
    let mut classes: Vec<Vec<(u32, u32)>> = alloc::vec![Vec::new(); class_count];
    for &(a, b) in &remaining {
        classes[label[b as usize]].push((a, b));
    }
    // Class i rides reserved edge class_base + i; arcs into its anchor head
    // are displaced and paired with the tail reserved edges.
    let mut displaced: Vec<(u32, u32)> = Vec::new();
    for (ci, arcs) in classes.iter().enumerate() {
        let i = class_base + ci;
        let (_, y) = s[i];
        let mut forest_edges: Vec<(u32, u32)> = Vec::with_capacity(arcs.len() + 1);
        for &(a, b) in arcs {
            if b == y {
                displaced.push((a, b));
            } else {
                forest_edges.push((a, b));
            }
        }
        forest_edges.push((x, y));
        solve_into(d, n, &forest_edges, s[i], budget, rng, prefer_pool, &mut cycles, i, &mut leftover);
    }
    // Remaining reserved edges: pair each with a displaced arc when one is
    // waiting, otherwise ride alone.
    let mut displaced_iter = displaced.into_iter();
    for i in class_base + class_count..k {
        let mut forest_edges = alloc::vec![s[i]];
        if let Some(arc) = displaced_iter.next() {
            forest_edges.push(arc);
        }
        solve_into(d, n, &forest_edges, s[i], budget, rng, prefer_pool, &mut cycles, i, &mut leftover);
    }
    leftover.extend(displaced_iter);
    ReservedCover { cycles, leftover }
}

#[allow(clippy::too_many_arguments)]
fn solve_into(
    d: &Digraph,
    n: usize,
    forest_edges: &[(u32, u32)],
    reserved: (u32, u32),
    budget: u64,
    rng: &mut Stream,
    prefer_pool: Option<&BTreeSet<(u32, u32)>>,
    cycles: &mut [Option<HamiltonCycle>],
    slot: usize,
    leftover: &mut Vec<(u32, u32)>,
) {
    let forest = match LinearForest::from_edges(n, forest_edges) {
        Ok(f) => f,
        Err(_) => {
            leftover.extend(forest_edges.iter().copied());
            return;
        }
    };
    // Absorb whatever still-uncovered residual edges fit this batch; they
    // are host edges, so the cycle must cover them too.
    let augmented = match prefer_pool {
        Some(pool) => augment_forest(&forest, pool.iter().copied()),
        None => forest.clone(),
    };
    let solved = cover_forest_seeded(d, &augmented, budget, rng, prefer_pool)
        .or_else(|_| cover_forest_seeded(d, &forest, budget, rng, prefer_pool));
    match solved {
        Ok(cycle) => {
            debug_assert!(cycle.contains_edge(reserved.0, reserved.1));
            cycles[slot] = Some(cycle);
        }
        Err(_) => {
            leftover.extend(forest_edges.iter().copied());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{self};
    use crate::sample;

    fn dense(n: usize, p: f64, seed: u64) -> Digraph {
        sample::sample_digraph(n, p, &mut rng::stream(seed, streams::DIGRAPH_SAMPLE))
    }

    #[test]
    fn spanning_path_closes_directly() {
        let d = Digraph::from_edges(4, &[(3, 0)]).unwrap();
        let f = LinearForest::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let c = cover_forest(&d, &f, 1000).unwrap();
        assert_eq!(c.order(), &[0, 1, 2, 3]);
    }

    #[test]
    fn spanning_path_without_closure_is_infeasible() {
        let d = Digraph::from_edges(4, &[(0, 2)]).unwrap();
        let f = LinearForest::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(cover_forest(&d, &f, 1000), Err(CoverForestError::Infeasible));
    }

    #[test]
    fn isolated_forest_reduces_to_plain_search() {
        let d = dense(9, 0.7, 1);
        let f = LinearForest::from_edges(9, &[]).unwrap();
        let c = cover_forest(&d, &f, 100_000).unwrap();
        assert!(verify_hamilton_cycle(&d, &[], &c));
    }

    #[test]
    fn covers_random_forest_with_25_components() {
        let d = dense(100, 0.4, 7);
        // 25 components: 25 paths of 4 vertices each; forest edges need not
        // lie in D.
        let edges: Vec<(u32, u32)> = (0..25u32)
            .flat_map(|k| (0..3u32).map(move |j| (4 * k + j, 4 * k + j + 1)))
            .collect();
        let f = LinearForest::from_edges(100, &edges).unwrap();
        assert_eq!(f.component_count(), 25);
        let c = cover_forest(&d, &f, 400_000).unwrap();
        for (u, v) in f.edges() {
            assert!(c.contains_edge(u, v), "forest edge {u}->{v} must be covered");
        }
        // Every traversed edge is either a host edge or a forest edge.
        let extra: Vec<(u32, u32)> = f.edges().collect();
        assert!(verify_hamilton_cycle(&d, &extra, &c));
    }

    #[test]
    fn family_covers_anchored_forests() {
        let n = 50;
        let d = dense(n, 0.5, 3);
        let x = 0u32;
        // Build three anchored forests from x's out-neighbors.
        let ys: Vec<u32> = d.out_neighbors(x).iter().copied().take(3).collect();
        assert_eq!(ys.len(), 3);
        let forests: Vec<LinearForest> = ys
            .iter()
            .map(|&y| LinearForest::from_edges(n, &[(x, y)]).unwrap())
            .collect();
        let opts = FamilyOptions { seed: 5, budget: 300_000, retry_cap: 5, p_estimate: 0.5 };
        let out = cover_forest_family(&d, &forests, x, &ys, &opts, &[]);
        assert!(out.demoted.is_empty());
        for (i, c) in out.cycles.iter().enumerate() {
            let c = c.as_ref().unwrap();
            assert!(c.contains_edge(x, ys[i]));
            assert!(verify_hamilton_cycle(&d, &[], c));
        }
        assert!(out.residual.is_empty());
    }

    #[test]
    fn sparsify_probability_formula() {
        assert!((sparsify_probability(1000) - 0.01).abs() < 1e-12);
        assert!((residual_degree_threshold(1000) - 70.0).abs() < 1e-9);
    }

    #[test]
    fn empty_family_is_trivial() {
        let d = dense(10, 0.5, 9);
        let opts = FamilyOptions { seed: 1, budget: 1000, retry_cap: 1, p_estimate: 0.5 };
        let out = cover_forest_family(&d, &[], 0, &[], &opts, &[]);
        assert!(out.cycles.is_empty());
        assert!(out.residual.is_empty());
    }

    #[test]
    fn reserved_batch_covers_matching_and_reserved_edges() {
        let n = 150;
        let d = dense(n, 0.35, 11);
        let x = 0u32;
        let heads: Vec<u32> = d.out_neighbors(x).iter().copied().take(10).collect();
        assert!(heads.len() >= 10);
        let s: Vec<(u32, u32)> = heads.iter().map(|&y| (x, y)).collect();
        // A directed matching avoiding x and the reserved heads.
        let arcs: Vec<(u32, u32)> = alloc::vec![
            (101, 102),
            (103, 104),
            (105, 106),
            (107, 108),
            (109, 110),
            (111, 112),
            (113, 114),
        ];
        let m = DirectedMatching::new(arcs.clone()).unwrap();
        let mut rng = rng::stream(11, streams::RESERVED_STAGE);
        let out = cover_matching_with_reserved(&d, &m, x, &s, 400_000, &mut rng, None);
        assert!(out.leftover.is_empty(), "leftover {:?}", out.leftover);
        let mut covered: BTreeSet<(u32, u32)> = BTreeSet::new();
        for (i, c) in out.cycles.iter().enumerate() {
            let c = c.as_ref().expect("all batches solve on dense hosts");
            assert!(c.contains_edge(s[i].0, s[i].1), "cycle {i} must contain its reserved edge");
            covered.extend(c.edges());
        }
        for &(a, b) in &arcs {
            assert!(covered.contains(&(a, b)), "matching arc {a}->{b} uncovered");
        }
    }

    #[test]
    fn empty_matching_with_reserved_edges() {
        let n = 40;
        let d = dense(n, 0.5, 13);
        let x = 0u32;
        let heads: Vec<u32> = d.out_neighbors(x).iter().copied().take(10).collect();
        let s: Vec<(u32, u32)> = heads.iter().map(|&y| (x, y)).collect();
        let m = DirectedMatching::new(Vec::new()).unwrap();
        let mut rng = rng::stream(13, streams::RESERVED_STAGE);
        let out = cover_matching_with_reserved(&d, &m, x, &s, 400_000, &mut rng, None);
        assert_eq!(out.cycles.iter().filter(|c| c.is_some()).count(), s.len());
        assert!(out.leftover.is_empty());
    }

    #[test]
    fn arcs_into_x_are_peeled_with_reserved_partners() {
        let n = 40;
        let d = dense(n, 0.6, 17);
        let x = 5u32;
        let heads: Vec<u32> = d.out_neighbors(x).iter().copied().take(4).collect();
        let s: Vec<(u32, u32)> = heads.iter().map(|&y| (x, y)).collect();
        // One arc pointing into x.
        let z = (0..n as u32).find(|&z| z != x && !heads.contains(&z)).unwrap();
        let m = DirectedMatching::new(alloc::vec![(z, x)]).unwrap();
        let mut rng = rng::stream(17, streams::RESERVED_STAGE);
        let out = cover_matching_with_reserved(&d, &m, x, &s, 400_000, &mut rng, None);
        assert!(out.leftover.is_empty());
        let all: BTreeSet<(u32, u32)> = out
            .cycles
            .iter()
            .flatten()
            .flat_map(|c| c.edges().collect::<Vec<_>>())
            .collect();
        assert!(all.contains(&(z, x)));
    }
}
