//! Perfect-matching machinery: decomposing regular bipartite graphs into
//! matchings and covering a bipartite graph by two matching families whose
//! total count equals its maximum degree.
//!
//! The decomposition extracts perfect matchings one at a time, halving even-
//! regular graphs first via Euler splits so only O(log d) of the d
//! extractions run the augmenting-path matcher.

use alloc::vec::Vec;
use core::fmt;

use crate::bipartite::BipartiteGraph;
use crate::factors::{f_factor, regular_subgraph, DegreeDemand, Factored, ViolatingPair};
use crate::hamilton::find_hamilton_seeded;
use crate::hopcroft_karp::maximum_matching;
use crate::permutation::Permutation;
use crate::project::project;
use crate::rng::Stream;

/// A set of `xy` edges, no two sharing an X-vertex or a Y-vertex.
/// Perfect iff it has `n` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    n: usize,
    pairs: Vec<(u32, u32)>,
}

impl Matching {
    pub fn new(n: usize, mut pairs: Vec<(u32, u32)>) -> Self {
        pairs.sort_unstable();
        let m = Matching { n, pairs };
        debug_assert!(m.is_valid());
        m
    }

    fn is_valid(&self) -> bool {
        let mut ys: Vec<u32> = self.pairs.iter().map(|&(_, y)| y).collect();
        ys.sort_unstable();
        self.pairs.windows(2).all(|w| w[0].0 != w[1].0) && ys.windows(2).all(|w| w[0] != w[1])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_perfect(&self) -> bool {
        self.pairs.len() == self.n
    }

    /// Partner of X-vertex `x`, if matched.
    pub fn partner_of_x(&self, x: u32) -> Option<u32> {
        self.pairs
            .binary_search_by_key(&x, |&(a, _)| a)
            .ok()
            .map(|i| self.pairs[i].1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotRegular {
    pub vertex: u32,
    pub on_y_side: bool,
    pub degree: usize,
    pub expected: usize,
}

impl fmt::Display for NotRegular {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = if self.on_y_side { "Y" } else { "X" };
        write!(
            f,
            "vertex {} on side {side} has degree {}, expected {}",
            self.vertex, self.degree, self.expected
        )
    }
}

#[cfg(feature = "std")]
impl std::error::Error for NotRegular {}

/// Decomposes a `d`-regular bipartite graph into exactly `d` pairwise
/// edge-disjoint perfect matchings whose union is the input.
pub fn decompose_regular(w: &BipartiteGraph) -> Result<Vec<Matching>, NotRegular> {
    let n = w.n();
    let d = if n == 0 { 0 } else { w.deg_x(0) };
    for v in 0..n as u32 {
        if w.deg_x(v) != d {
            return Err(NotRegular { vertex: v, on_y_side: false, degree: w.deg_x(v), expected: d });
        }
        if w.deg_y(v) != d {
            return Err(NotRegular { vertex: v, on_y_side: true, degree: w.deg_y(v), expected: d });
        }
    }
    let edges: Vec<TaggedEdge> = w
        .edges()
        .map(|(x, y)| TaggedEdge { x, y, real: true })
        .collect();
    let parts = decompose_multi(n, edges, d);
    Ok(parts
        .into_iter()
        .map(|part| Matching::new(n, part.into_iter().map(|e| (e.x, e.y)).collect()))
        .collect())
}

/// A multigraph edge; `real` distinguishes padding in the adaptive route.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct TaggedEdge {
    pub x: u32,
    pub y: u32,
    pub real: bool,
}

/// Decomposes a `d`-regular bipartite multigraph (given as an edge list)
/// into `d` perfect matchings. Even degrees are halved by an Euler split;
/// odd degrees drop by one perfect-matching extraction.
pub(crate) fn decompose_multi(n: usize, edges: Vec<TaggedEdge>, d: usize) -> Vec<Vec<TaggedEdge>> {
    let mut out = Vec::with_capacity(d);
    let mut stack: Vec<(Vec<TaggedEdge>, usize)> = alloc::vec![(edges, d)];
    while let Some((es, d)) = stack.pop() {
        match d {
            0 => debug_assert!(es.is_empty()),
            1 => out.push(es),
            _ if d % 2 == 1 => {
                let (pm, rest) = extract_perfect_matching(n, es);
                out.push(pm);
                stack.push((rest, d - 1));
            }
            _ => {
                let (a, b) = euler_split(n, es);
                stack.push((a, d / 2));
                stack.push((b, d / 2));
            }
        }
    }
    out
}

/// Pulls one perfect matching out of a regular multigraph edge list.
fn extract_perfect_matching(n: usize, edges: Vec<TaggedEdge>) -> (Vec<TaggedEdge>, Vec<TaggedEdge>) {
    // The matcher runs on the simple support; each matched pair then
    // consumes one concrete copy.
    let mut support: Vec<Vec<u32>> = alloc::vec![Vec::new(); n];
    for e in &edges {
        support[e.x as usize].push(e.y);
    }
    for adj in support.iter_mut() {
        adj.sort_unstable();
        adj.dedup();
    }
    let pair_x = maximum_matching(n, &support);
    assert!(
        pair_x.iter().all(|&y| y != u32::MAX),
        "regular bipartite graphs always contain a perfect matching"
    );
    let mut pm: Vec<TaggedEdge> = Vec::with_capacity(n);
    let mut taken = alloc::vec![false; edges.len()];
    for x in 0..n as u32 {
        let y = pair_x[x as usize];
        let idx = edges
            .iter()
            .enumerate()
            .position(|(i, e)| !taken[i] && e.x == x && e.y == y)
            .expect("matched pair exists in the edge list");
        taken[idx] = true;
        pm.push(edges[idx]);
    }
    let rest: Vec<TaggedEdge> = edges
        .into_iter()
        .enumerate()
        .filter(|&(i, _)| !taken[i])
        .map(|(_, e)| e)
        .collect();
    (pm, rest)
}

/// Splits an even-regular bipartite multigraph into two halves of half the
/// degree by orienting Euler circuits and separating the two directions.
fn euler_split(n: usize, edges: Vec<TaggedEdge>) -> (Vec<TaggedEdge>, Vec<TaggedEdge>) {
    // Vertices 0..n are X, n..2n are Y.
    let mut adj: Vec<Vec<(u32, u32)>> = alloc::vec![Vec::new(); 2 * n]; // (edge id, other endpoint)
    for (i, e) in edges.iter().enumerate() {
        adj[e.x as usize].push((i as u32, n as u32 + e.y));
        adj[n + e.y as usize].push((i as u32, e.x));
    }
    let mut used = alloc::vec![false; edges.len()];
    let mut cursor = alloc::vec![0usize; 2 * n];
    let mut half_a = Vec::with_capacity(edges.len() / 2);
    let mut half_b = Vec::with_capacity(edges.len() / 2);
    for start in 0..2 * n as u32 {
        // Walk circuits until the start vertex has no unused edges left.
        loop {
            while cursor[start as usize] < adj[start as usize].len()
                && used[adj[start as usize][cursor[start as usize]].0 as usize]
            {
                cursor[start as usize] += 1;
            }
            if cursor[start as usize] >= adj[start as usize].len() {
                break;
            }
            let mut v = start;
            loop {
                while cursor[v as usize] < adj[v as usize].len()
                    && used[adj[v as usize][cursor[v as usize]].0 as usize]
                {
                    cursor[v as usize] += 1;
                }
                if cursor[v as usize] >= adj[v as usize].len() {
                    debug_assert_eq!(v, start, "even degrees close every walk at its start");
                    break;
                }
                let (eid, w) = adj[v as usize][cursor[v as usize]];
                used[eid as usize] = true;
                if (v as usize) < n {
                    half_a.push(edges[eid as usize]);
                } else {
                    half_b.push(edges[eid as usize]);
                }
                v = w;
            }
        }
    }
    (half_a, half_b)
}

/// Demand-bound audit for the f-factor step: the lifting demand is
/// expected to stay within `[M/√ln n, M]` for `M = d̄/(2 ln^{4/3} n)`.
/// Logged, never enforced; at small `n` the bounds routinely fail while
/// the flow still succeeds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DemandAudit {
    /// `M = d̄ / (2 ln^{4/3} n)`.
    pub m_bound: f64,
    pub f_max: u32,
    pub f_min: u32,
    /// `f_max ≤ M`.
    pub upper_ok: bool,
    /// `f_min ≥ M / √(ln n)`.
    pub lower_ok: bool,
}

/// Outcome of [`matching_cover`]: two families of perfect matchings of
/// `B' = B ∖ deletion` with pairwise-disjoint matchings inside each family,
/// joint union `E(B')`, and `|M1| + |M2| = Δ(B')`.
#[derive(Debug, Clone)]
pub struct MatchingCover {
    pub m1: Vec<Matching>,
    pub m2: Vec<Matching>,
    /// Present when the f-factor step ran.
    pub demand_audit: Option<DemandAudit>,
}

impl MatchingCover {
    /// Mechanically checks the three contract items against `B'`.
    pub fn check_items(&self, bprime: &BipartiteGraph) -> CoverItems {
        let disjoint_within = |fam: &[Matching]| -> bool {
            let mut all: Vec<(u32, u32)> =
                fam.iter().flat_map(|m| m.pairs().iter().copied()).collect();
            let before = all.len();
            all.sort_unstable();
            all.dedup();
            all.len() == before
        };
        let mut union: Vec<(u32, u32)> = self
            .m1
            .iter()
            .chain(self.m2.iter())
            .flat_map(|m| m.pairs().iter().copied())
            .collect();
        union.sort_unstable();
        union.dedup();
        let edges: Vec<(u32, u32)> = bprime.edges().collect();
        CoverItems {
            families_disjoint: disjoint_within(&self.m1) && disjoint_within(&self.m2),
            union_is_bprime: union == edges,
            count_is_max_degree: self.m1.len() + self.m2.len() == bprime.max_degree(),
        }
    }
}

/// The three mechanical checks on a matching cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverItems {
    pub families_disjoint: bool,
    pub union_is_bprime: bool,
    pub count_is_max_degree: bool,
}

impl CoverItems {
    pub fn all(&self) -> bool {
        self.families_disjoint && self.union_is_bprime && self.count_is_max_degree
    }
}

/// Stage at which [`matching_cover`] gave up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverStage {
    RegularSubgraph,
    FFactor,
}

impl fmt::Display for CoverStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverStage::RegularSubgraph => write!(f, "regular-subgraph"),
            CoverStage::FFactor => write!(f, "f-factor"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CoverFailure {
    pub stage: CoverStage,
    pub witness: ViolatingPair,
}

/// Optional projection-aware extraction bias for [`matching_cover_biased`].
///
/// When present, perfect matchings are preferentially extracted so that
/// their projections through `π` are single directed cycles, which keeps
/// the residual of the later forest stage small. The families still satisfy
/// the matching-cover contract verbatim.
pub struct ExtractionBias<'a> {
    pub pi: &'a Permutation,
    pub budget: u64,
    pub rng: &'a mut Stream,
}

/// Covers `B' = B ∖ deletion` by two families of perfect matchings.
///
/// Family one decomposes an `r`-regular subgraph with
/// `r = min(⌊(1 − 2/ln²n)·d̄⌋, δ(B'))` for `d̄` the average degree of `B`;
/// family two decomposes `W ∪ H` where `W` holds the edges family one
/// missed and `H` is an f-factor of the regular subgraph lifting every
/// degree of `W` to `Δ(W)`.
pub fn matching_cover(
    b: &BipartiteGraph,
    deletion: &[(u32, u32)],
) -> Result<MatchingCover, CoverFailure> {
    matching_cover_biased(b, deletion, None)
}

/// [`matching_cover`] with an optional projection bias; see [`ExtractionBias`].
pub fn matching_cover_biased(
    b: &BipartiteGraph,
    deletion: &[(u32, u32)],
    mut bias: Option<ExtractionBias<'_>>,
) -> Result<MatchingCover, CoverFailure> {
    let n = b.n();
    let bprime = if deletion.is_empty() { b.clone() } else { b.without_edges(deletion) };
    if bprime.m() == 0 {
        return Ok(MatchingCover { m1: Vec::new(), m2: Vec::new(), demand_audit: None });
    }
    let delta_prime = bprime.max_degree();
    let min_prime = bprime.min_degree();
    if min_prime == 0 {
        // No perfect matching can exist; surface the singleton witness from
        // the regular-subgraph characterization.
        let Factored::Infeasible(witness) = regular_subgraph(&bprime, 1, &[]) else {
            unreachable!("an isolated vertex rules out 1-regular subgraphs");
        };
        return Err(CoverFailure { stage: CoverStage::RegularSubgraph, witness });
    }
    let avg_degree = b.m() as f64 / n as f64;
    let ln_n = libm::log(n.max(2) as f64);
    let target = libm::floor((1.0 - 2.0 / (ln_n * ln_n)) * avg_degree).max(0.0) as usize;
    let r = target.min(min_prime);

    let wprime = match regular_subgraph(&bprime, r, &[]) {
        Factored::Found(w) => w,
        Factored::Infeasible(witness) => {
            return Err(CoverFailure { stage: CoverStage::RegularSubgraph, witness })
        }
    };
    let m1 = decompose_with_bias(&wprime, &mut bias);

    // W: edges of B' missed by family one. Its max degree is Δ(B') − r.
    let wprime_edges: Vec<(u32, u32)> = wprime.edges().collect();
    let w = bprime.without_edges(&wprime_edges);
    let delta_w = delta_prime - r;
    if delta_w == 0 {
        debug_assert_eq!(w.m(), 0);
        return Ok(MatchingCover { m1, m2: Vec::new(), demand_audit: None });
    }
    let fx: Vec<u32> = (0..n as u32).map(|v| (delta_w - w.deg_x(v)) as u32).collect();
    let fy: Vec<u32> = (0..n as u32).map(|v| (delta_w - w.deg_y(v)) as u32).collect();
    let f_max = fx.iter().chain(fy.iter()).copied().max().unwrap_or(0);
    let f_min = fx.iter().chain(fy.iter()).copied().min().unwrap_or(0);
    let m_bound = avg_degree / (2.0 * libm::pow(ln_n, 4.0 / 3.0));
    let demand_audit = DemandAudit {
        m_bound,
        f_max,
        f_min,
        upper_ok: (f_max as f64) <= m_bound,
        lower_ok: (f_min as f64) >= m_bound / libm::sqrt(ln_n),
    };
    let demand = DegreeDemand::new(n, fx, fy).expect("lifting to Δ(W) is balanced");
    let h = match f_factor(&wprime, &demand) {
        Factored::Found(h) => h,
        Factored::Infeasible(witness) => {
            return Err(CoverFailure { stage: CoverStage::FFactor, witness })
        }
    };
    // W and H are edge-disjoint (H ⊆ W', W ∩ W' = ∅) and W ∪ H is
    // Δ(W)-regular by construction.
    let mut union_edges: Vec<(u32, u32)> = w.edges().collect();
    union_edges.extend(h.edges());
    let wh = BipartiteGraph::from_edges(n, &union_edges).expect("valid edges");
    debug_assert_eq!(wh.m(), w.m() + h.m(), "W and H must be edge-disjoint");
    debug_assert!((0..n as u32).all(|v| wh.deg_x(v) == delta_w && wh.deg_y(v) == delta_w));
    let m2 = decompose_with_bias(&wh, &mut bias);
    Ok(MatchingCover { m1, m2, demand_audit: Some(demand_audit) })
}

fn decompose_with_bias(w: &BipartiteGraph, bias: &mut Option<ExtractionBias<'_>>) -> Vec<Matching> {
    match bias {
        None => decompose_regular(w).expect("regular by construction"),
        Some(b) => decompose_hamilton_first(w, b),
    }
}

/// Extracts perfect matchings whose projections are single cycles for as
/// long as the Hamilton search keeps succeeding, then decomposes whatever
/// is left classically.
fn decompose_hamilton_first(w: &BipartiteGraph, bias: &mut ExtractionBias<'_>) -> Vec<Matching> {
    let n = w.n();
    let mut current = w.clone();
    let mut d = if n == 0 { 0 } else { current.deg_x(0) };
    let mut out: Vec<Matching> = Vec::with_capacity(d);
    while d > 0 {
        if d == 1 {
            out.push(Matching::new(n, current.edges().collect()));
            break;
        }
        let projected = project(&current, bias.pi).expect("sizes agree");
        let solved = if projected.min_degree() == 0 {
            None
        } else {
            find_hamilton_seeded(&projected, bias.budget, bias.rng, None).found()
        };
        match solved {
            Some(cycle) => {
                let order = cycle.order();
                let pairs: Vec<(u32, u32)> = (0..n)
                    .map(|i| {
                        let v = order[i];
                        let succ = order[(i + 1) % n];
                        (v, bias.pi.inverse(succ))
                    })
                    .collect();
                let m = Matching::new(n, pairs);
                debug_assert!(m.is_perfect());
                debug_assert!(m.pairs().iter().all(|&(x, y)| current.has_edge(x, y)));
                current = current.without_edges(m.pairs());
                out.push(m);
                d -= 1;
            }
            None => {
                // The projection stopped being Hamiltonian-findable; finish
                // with the Euler-split decomposition.
                out.extend(decompose_regular(&current).expect("still regular"));
                break;
            }
        }
    }
    out
}

/// Covers an irregular bipartite graph by exactly `Δ(B')` partial matchings:
/// the graph is padded to a `Δ(B')`-regular multigraph with placeholder
/// edges, decomposed, and the placeholders dropped.
///
/// Every vertex of degree `Δ(B')` is matched in all of the matchings, which
/// is what the forest stage needs from the anchor vertex. Used when the
/// two-family construction of [`matching_cover`] is infeasible at the given
/// degree spread.
pub fn cover_by_partial_matchings(bprime: &BipartiteGraph) -> Vec<Matching> {
    let n = bprime.n();
    let delta = bprime.max_degree();
    if delta == 0 {
        return Vec::new();
    }
    let mut edges: Vec<TaggedEdge> = bprime
        .edges()
        .map(|(x, y)| TaggedEdge { x, y, real: true })
        .collect();
    // Pad deficiencies; parallel placeholder edges are fine.
    let mut def_x: Vec<u32> = Vec::new();
    let mut def_y: Vec<u32> = Vec::new();
    for v in 0..n as u32 {
        for _ in bprime.deg_x(v)..delta {
            def_x.push(v);
        }
        for _ in bprime.deg_y(v)..delta {
            def_y.push(v);
        }
    }
    debug_assert_eq!(def_x.len(), def_y.len());
    for (&x, &y) in def_x.iter().zip(def_y.iter()) {
        edges.push(TaggedEdge { x, y, real: false });
    }
    decompose_multi(n, edges, delta)
        .into_iter()
        .map(|part| {
            Matching::new(
                n,
                part.into_iter().filter(|e| e.real).map(|e| (e.x, e.y)).collect(),
            )
        })
        .collect()
}
