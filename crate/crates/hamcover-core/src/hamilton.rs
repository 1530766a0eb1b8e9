//! Directed Hamilton cycles: the certificate type, an independent verifier,
//! and a budgeted search.
//!
//! The search strategy is deliberately swappable: correctness rests entirely
//! on output verification, never on the search itself. Small instances are
//! solved exactly by a bitmask dynamic program (so infeasibility is proven);
//! larger ones by randomized greedy extension with bounded backtracking and
//! restarts under a node-expansion budget.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;

use crate::digraph::Digraph;
use crate::rng::Stream;

/// Below this vertex count the search is exhaustive.
pub const EXACT_SEARCH_LIMIT: usize = 12;

/// A directed Hamilton cycle, stored as the cyclic visit order rotated to
/// start at its smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamiltonCycle {
    order: Vec<u32>,
}

impl HamiltonCycle {
    /// Wraps a visit order, normalizing the rotation. The order is not
    /// checked against any graph; use [`verify_hamilton_cycle`] for that.
    pub fn new(order: Vec<u32>) -> Self {
        let mut c = HamiltonCycle { order };
        c.normalize();
        c
    }

    fn normalize(&mut self) {
        if self.order.is_empty() {
            return;
        }
        let min_pos = self
            .order
            .iter()
            .enumerate()
            .min_by_key(|&(_, v)| v)
            .map(|(i, _)| i)
            .unwrap();
        self.order.rotate_left(min_pos);
    }

    pub fn order(&self) -> &[u32] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// The `n` directed edges traversed, in visit order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.order.len()).map(move |i| {
            let u = self.order[i];
            let v = self.order[(i + 1) % self.order.len()];
            (u, v)
        })
    }

    pub fn contains_edge(&self, u: u32, v: u32) -> bool {
        self.edges().any(|e| e == (u, v))
    }

    /// The same cycle traversed backwards (certifies the reversed digraph).
    pub fn reversed(&self) -> HamiltonCycle {
        let mut order = self.order.clone();
        order.reverse();
        HamiltonCycle::new(order)
    }
}

/// True iff `c` visits each of the `n` vertices of `host` exactly once and
/// every consecutive (cyclic) pair is an edge of `host ∪ extra`.
/// Malformed cycles return false rather than erroring.
pub fn verify_hamilton_cycle(host: &Digraph, extra: &[(u32, u32)], c: &HamiltonCycle) -> bool {
    let n = host.n();
    if c.len() != n || n < 2 {
        return false;
    }
    let mut seen = alloc::vec![false; n];
    for &v in c.order() {
        if v as usize >= n || seen[v as usize] {
            return false;
        }
        seen[v as usize] = true;
    }
    let extra: BTreeSet<(u32, u32)> = extra.iter().copied().collect();
    c.edges().all(|(u, v)| host.has_edge(u, v) || extra.contains(&(u, v)))
}

/// Search result for [`find_hamilton`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(HamiltonCycle),
    /// The node-expansion budget ran out before a cycle was found.
    BudgetExhausted,
    /// No Hamilton cycle exists; returned only on a completed proof
    /// (exhaustive search, a vertex with empty in/out neighborhood, or a
    /// strong-connectivity failure).
    Infeasible,
}

impl SearchOutcome {
    pub fn found(self) -> Option<HamiltonCycle> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            _ => None,
        }
    }
}

/// Searches `h` for a directed Hamilton cycle within a node-expansion budget.
///
/// Deterministic for fixed inputs; every returned cycle has already passed
/// [`verify_hamilton_cycle`].
pub fn find_hamilton(h: &Digraph, budget: u64) -> SearchOutcome {
    let mut rng = Stream::seed_from_u64(0x4861_6d43);
    find_hamilton_seeded(h, budget, &mut rng, None)
}

/// [`find_hamilton`] with a caller-supplied generator and an optional set of
/// edges the search should prefer to traverse. Preference only steers the
/// candidate order; it never affects validity.
pub fn find_hamilton_seeded(
    h: &Digraph,
    budget: u64,
    rng: &mut Stream,
    prefer: Option<&BTreeSet<(u32, u32)>>,
) -> SearchOutcome {
    let n = h.n();
    if n < 2 {
        return SearchOutcome::Infeasible;
    }
    for v in 0..n as u32 {
        if h.out_degree(v) == 0 || h.in_degree(v) == 0 {
            return SearchOutcome::Infeasible;
        }
    }
    if !strongly_connected(h) {
        return SearchOutcome::Infeasible;
    }
    if n < EXACT_SEARCH_LIMIT {
        return exact_bitmask(h, prefer);
    }
    heuristic_search(h, budget, rng, prefer)
}

fn strongly_connected(h: &Digraph) -> bool {
    fn reaches_all(n: usize, start: u32, neigh: impl Fn(u32) -> Vec<u32>) -> bool {
        let mut seen = alloc::vec![false; n];
        let mut stack = alloc::vec![start];
        seen[start as usize] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for v in neigh(u) {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == n
    }
    reaches_all(h.n(), 0, |u| h.out_neighbors(u).to_vec())
        && reaches_all(h.n(), 0, |u| h.in_neighbors(u).to_vec())
}

/// Exact search: `reach[mask]` is the set of vertices `v` such that some
/// path from vertex 0 visits exactly `mask` and ends at `v`. The table is
/// complete, so a miss proves infeasibility.
fn exact_bitmask(h: &Digraph, prefer: Option<&BTreeSet<(u32, u32)>>) -> SearchOutcome {
    let n = h.n();
    let full: u32 = (1 << n) - 1;
    let mut reach = alloc::vec![0u32; 1 << n];
    reach[1] = 1; // the trivial path {0}
    for mask in 1..=full {
        if mask & 1 == 0 || reach[mask as usize] == 0 {
            continue;
        }
        let ends = reach[mask as usize];
        for v in 0..n as u32 {
            if ends >> v & 1 == 0 {
                continue;
            }
            for &w in h.out_neighbors(v) {
                if mask >> w & 1 == 0 {
                    reach[(mask | 1 << w) as usize] |= 1 << w;
                }
            }
        }
    }
    let in_of_start = h.in_neighbors(0).iter().fold(0u32, |acc, &u| acc | 1 << u);
    let closers = reach[full as usize] & in_of_start;
    if closers == 0 {
        return SearchOutcome::Infeasible;
    }
    // Walk the table backwards to materialize one cycle, favoring preferred
    // edges at each step.
    let preferred = |u: u32, v: u32| prefer.is_some_and(|p| p.contains(&(u, v)));
    let pick_end = (0..n as u32)
        .filter(|&v| closers >> v & 1 == 1)
        .max_by_key(|&v| preferred(v, 0))
        .unwrap();
    let mut order = alloc::vec![pick_end];
    let mut mask = full;
    let mut cur = pick_end;
    while cur != 0 {
        let prev_mask = mask & !(1 << cur);
        let u = h
            .in_neighbors(cur)
            .iter()
            .copied()
            .filter(|&u| prev_mask >> u & 1 == 1 && reach[prev_mask as usize] >> u & 1 == 1)
            .max_by_key(|&u| preferred(u, cur))
            .expect("reach table guarantees a predecessor");
        order.push(u);
        mask = prev_mask;
        cur = u;
    }
    order.reverse();
    let cycle = HamiltonCycle::new(order);
    debug_assert!(verify_hamilton_cycle(h, &[], &cycle));
    SearchOutcome::Found(cycle)
}

fn heuristic_search(
    h: &Digraph,
    budget: u64,
    rng: &mut Stream,
    prefer: Option<&BTreeSet<(u32, u32)>>,
) -> SearchOutcome {
    let n = h.n();
    let mut expansions: u64 = 0;
    let per_attempt = ((n as u64) * (n as u64)).max(4096);
    while expansions < budget {
        let cap = per_attempt.min(budget - expansions);
        let (used, found) = dfs_attempt(h, cap, rng, prefer);
        expansions += used.max(1);
        if let Some(order) = found {
            let cycle = HamiltonCycle::new(order);
            if verify_hamilton_cycle(h, &[], &cycle) {
                return SearchOutcome::Found(cycle);
            }
        }
    }
    SearchOutcome::BudgetExhausted
}

/// One randomized DFS attempt from a random start, Warnsdorff-ordered with
/// preferred edges tried first. Returns (expansions used, cycle order).
fn dfs_attempt(
    h: &Digraph,
    cap: u64,
    rng: &mut Stream,
    prefer: Option<&BTreeSet<(u32, u32)>>,
) -> (u64, Option<Vec<u32>>) {
    let n = h.n();
    let start: u32 = rng.gen_range(0..n as u32);
    let mut visited = alloc::vec![false; n];
    visited[start as usize] = true;
    let mut path = alloc::vec![start];
    // Per-frame candidate stacks.
    let mut frames: Vec<Vec<u32>> = alloc::vec![candidates(h, start, &visited, rng, prefer)];
    let mut used: u64 = 0;
    while let Some(frame) = frames.last_mut() {
        if used >= cap {
            return (used, None);
        }
        let Some(v) = frame.pop() else {
            // Backtrack.
            let dead = path.pop().unwrap();
            visited[dead as usize] = false;
            frames.pop();
            if frames.is_empty() {
                return (used, None);
            }
            continue;
        };
        used += 1;
        visited[v as usize] = true;
        path.push(v);
        if path.len() == n {
            if h.has_edge(v, start) {
                return (used, Some(path));
            }
            visited[v as usize] = false;
            path.pop();
            continue;
        }
        frames.push(candidates(h, v, &visited, rng, prefer));
    }
    (used, None)
}

/// Unvisited out-neighbors of `u`, ordered so the most promising candidate
/// is popped first: preferred edges, then fewest onward moves.
fn candidates(
    h: &Digraph,
    u: u32,
    visited: &[bool],
    rng: &mut Stream,
    prefer: Option<&BTreeSet<(u32, u32)>>,
) -> Vec<u32> {
    let mut scored: Vec<(u64, u32)> = h
        .out_neighbors(u)
        .iter()
        .copied()
        .filter(|&v| !visited[v as usize])
        .map(|v| {
            let onward = h
                .out_neighbors(v)
                .iter()
                .filter(|&&w| !visited[w as usize])
                .count() as u64;
            let preferred = prefer.is_some_and(|p| p.contains(&(u, v)));
            let jitter = rng.gen_range(0..8u64);
            // Popped from the back: sort descending in badness.
            let score = (if preferred { 0 } else { 1 << 32 }) + (onward << 8) + jitter;
            (score, v)
        })
        .collect();
    scored.sort_unstable_by(|a, b| b.cmp(a));
    scored.into_iter().map(|(_, v)| v).collect()
}
