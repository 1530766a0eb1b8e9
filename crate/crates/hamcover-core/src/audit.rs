//! Statistical audits of typicality properties.
//!
//! These are auditors, not verifiers: properties quantifying over
//! exponentially many subset pairs are checked on random samples plus
//! deterministic extremal candidates (lowest/highest-degree groups), and
//! each check records whether it was exact or sampled. Degree-only
//! properties are checked exactly. Logarithms are natural throughout, and
//! the `o(1)` slack in concentration checks is instantiated as `1/ln n`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::bipartite::BipartiteGraph;
use crate::digraph::{ordered_degree_sequence, Digraph};
use crate::rng::Stream;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMethod {
    Exact,
    Sampled,
}

impl fmt::Display for CheckMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckMethod::Exact => write!(f, "exact"),
            CheckMethod::Sampled => write!(f, "sampled"),
        }
    }
}

/// One audited inequality instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub threshold: f64,
    pub observed: f64,
    pub pass: bool,
    pub method: CheckMethod,
    /// Sample count for sampled checks.
    pub samples: Option<u64>,
    /// The threshold is meaningless at this `n` (for example a required
    /// subset size exceeding `n`).
    pub vacuous: bool,
    pub note: Option<String>,
}

/// A bundle of audited checks.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TypicalityReport {
    pub checks: Vec<Check>,
}

impl TypicalityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass || c.vacuous)
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn ln(x: f64) -> f64 {
    libm::log(x)
}

fn random_subset(n: usize, k: usize, rng: &mut Stream) -> Vec<u32> {
    // Partial Fisher–Yates.
    let mut idx: Vec<u32> = (0..n as u32).collect();
    for i in 0..k.min(n) {
        let j = rng.gen_range(i..n);
        idx.swap(i, j);
    }
    idx.truncate(k.min(n));
    idx.sort_unstable();
    idx
}

/// Audits a bipartite graph against the goodness and degree-concentration
/// properties of the binomial model at density `p`.
pub fn typicality_audit_bipartite(
    b: &BipartiteGraph,
    p: f64,
    samples: u64,
    rng: &mut Stream,
) -> TypicalityReport {
    let n = b.n();
    let nf = n.max(2) as f64;
    let np = nf * p;
    let eps = 1.0 / (ln(nf) * ln(nf));
    let mut checks = Vec::new();

    // B2: degree spread and max-degree concentration.
    let degs = b.degree_sequence();
    let delta = degs[0].0 as f64;
    let min_deg = b.min_degree() as f64;
    checks.push(Check {
        name: "B2",
        threshold: 4.0 * libm::sqrt(np * ln(nf)),
        observed: delta - min_deg,
        pass: delta - min_deg < 4.0 * libm::sqrt(np * ln(nf)),
        method: CheckMethod::Exact,
        samples: None,
        vacuous: false,
        note: Some(String::from("max minus min degree")),
    });
    checks.push(Check {
        name: "B2",
        threshold: 1.0 / ln(nf),
        observed: if np > 0.0 { libm::fabs(delta / np - 1.0) } else { 0.0 },
        pass: np > 0.0 && libm::fabs(delta / np - 1.0) <= 1.0 / ln(nf),
        method: CheckMethod::Exact,
        samples: None,
        vacuous: np == 0.0,
        note: Some(String::from("max degree vs np, slack 1/ln n")),
    });

    // B3: degree gap below the second-largest degree.
    let delta2 = degs[1].0 as f64;
    let delta3 = degs.get(2).map(|e| e.0 as f64).unwrap_or(0.0);
    checks.push(Check {
        name: "B3",
        threshold: libm::sqrt(np) / ln(nf),
        observed: delta2 - delta3,
        pass: delta2 - delta3 >= libm::sqrt(np) / ln(nf),
        method: CheckMethod::Exact,
        samples: None,
        vacuous: n < 3,
        note: None,
    });

    // B1 cases (b)/(c): extremal-shape instances at the boundary
    // s·sqrt(ln n) + t = n. Two boundary conventions are in circulation
    // (with and without a +2 slack); the audit tests the definition form
    // and notes the discrepancy in the record.
    let s_cap = libm::floor(nf / libm::pow(ln(nf), 2.0 / 3.0)) as usize;
    let vacuous_b1 = s_cap == 0;
    let mut worst_dev: f64 = 0.0;
    if !vacuous_b1 {
        let by_deg_x = sorted_by_degree(n, |v| b.deg_x(v));
        let by_deg_y = sorted_by_degree(n, |v| b.deg_y(v));
        for &s in &[1usize, (s_cap / 2).max(1), s_cap] {
            let t_needed = nf - (s as f64) * libm::sqrt(ln(nf));
            let t = libm::ceil(t_needed.max(1.0)) as usize;
            if t > n {
                continue;
            }
            for (side_sets, tide_sets) in [(&by_deg_x, &by_deg_y), (&by_deg_y, &by_deg_x)] {
                for s_set in [&side_sets[..s], &side_sets[n - s..]] {
                    for t_set in [&tide_sets[..t], &tide_sets[n - t..]] {
                        // Case (b): S ⊆ X; case (c) swaps the roles, which the
                        // side iteration above covers.
                        let (sx, ty) = if core::ptr::eq(side_sets, &by_deg_x) {
                            (s_set, t_set)
                        } else {
                            (t_set, s_set)
                        };
                        let e = b.edges_between(sx, ty) as f64;
                        let expect = (sx.len() as f64) * (ty.len() as f64) * p;
                        if expect > 0.0 {
                            worst_dev = worst_dev.max(libm::fabs(e / expect - 1.0));
                        }
                    }
                }
            }
        }
    }
    checks.push(Check {
        name: "B1",
        threshold: eps,
        observed: worst_dev,
        pass: worst_dev <= eps,
        method: CheckMethod::Exact,
        samples: None,
        vacuous: vacuous_b1,
        note: Some(String::from(
            "cases (b)/(c) extremal shapes; boundary taken without the alternative +2 slack",
        )),
    });

    // Goodness case (a): sampled large-large pairs.
    let floor_a = libm::ceil(nf / libm::pow(ln(nf), 2.0 / 3.0)) as usize;
    let vacuous_a = floor_a > n;
    let mut worst_a: f64 = 0.0;
    if !vacuous_a {
        for _ in 0..samples {
            let s = rng.gen_range(floor_a..=n);
            let t = rng.gen_range(floor_a..=n);
            let s_set = random_subset(n, s, rng);
            let t_set = random_subset(n, t, rng);
            let e = b.edges_between(&s_set, &t_set) as f64;
            let expect = (s * t) as f64 * p;
            if expect > 0.0 {
                worst_a = worst_a.max(libm::fabs(e / expect - 1.0));
            }
        }
        // Extremal candidate: everything against everything.
        let all: Vec<u32> = (0..n as u32).collect();
        let e = b.edges_between(&all, &all) as f64;
        let expect = (n * n) as f64 * p;
        if expect > 0.0 {
            worst_a = worst_a.max(libm::fabs(e / expect - 1.0));
        }
    }
    checks.push(Check {
        name: "goodness",
        threshold: eps,
        observed: worst_a,
        pass: worst_a <= eps,
        method: CheckMethod::Sampled,
        samples: Some(samples),
        vacuous: vacuous_a,
        note: Some(String::from("case (a), sampled pairs plus the full-side candidate")),
    });

    TypicalityReport { checks }
}

/// Audits a digraph against the degree and local-density properties of the
/// binomial model at density `p`.
pub fn typicality_audit_digraph(
    d: &Digraph,
    p: f64,
    samples: u64,
    rng: &mut Stream,
) -> TypicalityReport {
    let n = d.n();
    let nf = n.max(2) as f64;
    let np = nf * p;
    let mut checks = Vec::new();

    // D1: all out/in degrees within (1 ± 1/ln n)·np.
    let mut worst_d1: f64 = 0.0;
    for v in 0..n as u32 {
        for deg in [d.out_degree(v), d.in_degree(v)] {
            if np > 0.0 {
                worst_d1 = worst_d1.max(libm::fabs(deg as f64 / np - 1.0));
            }
        }
    }
    checks.push(Check {
        name: "D1",
        threshold: 1.0 / ln(nf),
        observed: worst_d1,
        pass: worst_d1 <= 1.0 / ln(nf),
        method: CheckMethod::Exact,
        samples: None,
        vacuous: np == 0.0,
        note: None,
    });

    // D2: sampled small subsets, e(X) ≤ 12|X|ln²n.
    let cap = if p > 0.0 {
        libm::floor(2.0 * ln(nf) * ln(nf) / p) as usize
    } else {
        0
    };
    let cap = cap.min(n);
    let mut worst_d2: f64 = 0.0;
    if cap >= 1 {
        let by_total = sorted_by_degree(n, |v| d.out_degree(v) + d.in_degree(v));
        for _ in 0..samples {
            let k = rng.gen_range(1..=cap);
            let x = random_subset(n, k, rng);
            worst_d2 = worst_d2.max(internal_density_ratio(d, &x, nf));
        }
        // Extremal candidate: the cap-many highest-degree vertices.
        let dense: Vec<u32> = by_total[n - cap..].to_vec();
        worst_d2 = worst_d2.max(internal_density_ratio(d, &dense, nf));
    }
    checks.push(Check {
        name: "D2",
        threshold: 12.0,
        observed: worst_d2,
        pass: worst_d2 <= 12.0,
        method: CheckMethod::Sampled,
        samples: Some(samples),
        vacuous: cap == 0,
        note: Some(String::from("e(X) per |X| ln² n, sampled plus highest-degree candidate")),
    });

    // D3: sampled disjoint pairs above the size floor.
    let floor = if p > 0.0 {
        libm::ceil(libm::pow(ln(nf), 1.05) / p) as usize
    } else {
        n + 1
    };
    let vacuous_d3 = floor == 0 || 2 * floor > n;
    let mut worst_d3: f64 = 0.0;
    if !vacuous_d3 {
        for _ in 0..samples {
            let xs = rng.gen_range(floor..=(n - floor));
            let ys = rng.gen_range(floor..=(n - xs));
            let both = random_subset(n, xs + ys, rng);
            let (x, y) = both.split_at(xs);
            let e = edges_from_to(d, x, y) as f64;
            let expect = (xs * ys) as f64 * p;
            if expect > 0.0 {
                worst_d3 = worst_d3.max(e / expect);
            }
        }
    }
    let d3_threshold = 1.0 + 1.0 / ln(nf);
    checks.push(Check {
        name: "D3",
        threshold: d3_threshold,
        observed: worst_d3,
        pass: worst_d3 <= d3_threshold,
        method: CheckMethod::Sampled,
        samples: Some(samples),
        vacuous: vacuous_d3,
        note: Some(String::from("e(X,Y) per |X||Y|p, slack 1/ln n")),
    });

    // Degree gap between the top two of the ordered degree sequence.
    let seq = ordered_degree_sequence(d);
    let gap = (seq.delta(1) - seq.delta(2)) as f64;
    checks.push(Check {
        name: "degree-gap",
        threshold: libm::sqrt(np) / (2.0 * ln(nf)),
        observed: gap,
        pass: gap >= libm::sqrt(np) / (2.0 * ln(nf)),
        method: CheckMethod::Exact,
        samples: None,
        vacuous: n < 2,
        note: None,
    });

    TypicalityReport { checks }
}

/// Thresholds for the pseudorandomness properties of an auxiliary digraph
/// on `n_eff` vertices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PseudorandomParams {
    pub n_eff: usize,
    pub alpha: f64,
    pub p: f64,
}

impl PseudorandomParams {
    pub fn new(n_eff: usize, alpha: f64, p: f64) -> Self {
        PseudorandomParams { n_eff, alpha, p }
    }

    /// (P1) minimum-degree floor `(1/2 + 2α)·n_eff·p`.
    pub fn degree_floor(&self) -> f64 {
        (0.5 + 2.0 * self.alpha) * self.n_eff as f64 * self.p
    }

    /// (P2) subset-size window `ln²n / p`.
    pub fn p2_size_cap(&self) -> f64 {
        let l = ln(self.n_eff.max(2) as f64);
        l * l / self.p.max(1e-12)
    }

    /// (P2) density bound `|X| ln^{2.1} n`.
    pub fn p2_bound_per_vertex(&self) -> f64 {
        libm::pow(ln(self.n_eff.max(2) as f64), 2.1)
    }

    /// (P3) size floor `ln^{1.1} n / p`.
    pub fn p3_size_floor(&self) -> f64 {
        libm::pow(ln(self.n_eff.max(2) as f64), 1.1) / self.p.max(1e-12)
    }

    /// (P3) pair-density bound factor `(1 + α/2)p`.
    pub fn p3_factor(&self) -> f64 {
        (1.0 + self.alpha / 2.0) * self.p
    }
}

/// Audits the three pseudorandomness properties: minimum degree exactly,
/// local sparsity and pair density by sampling plus extremal candidates.
pub fn pseudorandom_audit(
    h: &Digraph,
    params: &PseudorandomParams,
    samples: u64,
    rng: &mut Stream,
) -> TypicalityReport {
    let n = h.n();
    let mut checks = Vec::new();

    let min_min = (0..n as u32)
        .map(|v| h.out_degree(v).min(h.in_degree(v)))
        .min()
        .unwrap_or(0);
    checks.push(Check {
        name: "P1",
        threshold: params.degree_floor(),
        observed: min_min as f64,
        pass: min_min as f64 >= params.degree_floor(),
        method: CheckMethod::Exact,
        samples: None,
        vacuous: n == 0,
        note: None,
    });

    let cap = (libm::floor(params.p2_size_cap()) as usize).min(n);
    let mut worst_p2: f64 = 0.0;
    if cap >= 1 {
        let by_total = sorted_by_degree(n, |v| h.out_degree(v) + h.in_degree(v));
        for _ in 0..samples {
            let k = rng.gen_range(1..=cap);
            let x = random_subset(n, k, rng);
            let e = internal_edges(h, &x) as f64;
            worst_p2 = worst_p2.max(e / (x.len() as f64));
        }
        let dense: Vec<u32> = by_total[n - cap..].to_vec();
        let e = internal_edges(h, &dense) as f64;
        worst_p2 = worst_p2.max(e / (dense.len() as f64));
    }
    checks.push(Check {
        name: "P2",
        threshold: params.p2_bound_per_vertex(),
        observed: worst_p2,
        pass: worst_p2 <= params.p2_bound_per_vertex(),
        method: CheckMethod::Sampled,
        samples: Some(samples),
        vacuous: cap == 0,
        note: None,
    });

    let floor = libm::ceil(params.p3_size_floor()) as usize;
    let vacuous_p3 = floor == 0 || 2 * floor > n;
    let mut worst_p3: f64 = 0.0;
    if !vacuous_p3 {
        for _ in 0..samples {
            let xs = rng.gen_range(floor..=(n - floor));
            let ys = rng.gen_range(floor..=(n - xs));
            let both = random_subset(n, xs + ys, rng);
            let (x, y) = both.split_at(xs);
            let e = edges_from_to(h, x, y) as f64;
            let bound = params.p3_factor() * (xs * ys) as f64;
            if bound > 0.0 {
                worst_p3 = worst_p3.max(e / bound);
            }
        }
    }
    checks.push(Check {
        name: "P3",
        threshold: 1.0,
        observed: worst_p3,
        pass: worst_p3 <= 1.0,
        method: CheckMethod::Sampled,
        samples: Some(samples),
        vacuous: vacuous_p3,
        note: Some(String::from("observed as a ratio of the (1+α/2)p|X||Y| bound")),
    });

    TypicalityReport { checks }
}

fn sorted_by_degree(n: usize, deg: impl Fn(u32) -> usize) -> Vec<u32> {
    let mut v: Vec<u32> = (0..n as u32).collect();
    v.sort_by_key(|&x| (deg(x), x));
    v
}

fn internal_edges(d: &Digraph, x: &[u32]) -> usize {
    let set: alloc::collections::BTreeSet<u32> = x.iter().copied().collect();
    x.iter()
        .map(|&u| d.out_neighbors(u).iter().filter(|v| set.contains(v)).count())
        .sum()
}

fn internal_density_ratio(d: &Digraph, x: &[u32], nf: f64) -> f64 {
    let e = internal_edges(d, x) as f64;
    e / (x.len() as f64 * ln(nf) * ln(nf))
}

fn edges_from_to(d: &Digraph, x: &[u32], y: &[u32]) -> usize {
    let set: alloc::collections::BTreeSet<u32> = y.iter().copied().collect();
    x.iter()
        .map(|&u| d.out_neighbors(u).iter().filter(|v| set.contains(v)).count())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{self, streams};
    use crate::sample;

    #[test]
    fn complete_bipartite_passes_spread_check() {
        let b = BipartiteGraph::complete(20);
        let mut rng = rng::stream(1, streams::AUDIT);
        let report = typicality_audit_bipartite(&b, 1.0, 50, &mut rng);
        // B2 spread: gap 0 < 4 sqrt(n log n).
        let spread = report.checks.iter().find(|c| c.name == "B2").unwrap();
        assert!(spread.pass);
        assert_eq!(spread.observed, 0.0);
    }

    #[test]
    fn empty_digraph_fails_degree_check() {
        let d = Digraph::empty(30);
        let mut rng = rng::stream(2, streams::AUDIT);
        let report = typicality_audit_digraph(&d, 0.5, 50, &mut rng);
        let d1 = report.find("D1").unwrap();
        assert!(!d1.pass);
    }

    #[test]
    fn sampled_checks_record_samples_and_exact_do_not() {
        let mut grng = rng::stream(3, streams::DIGRAPH_SAMPLE);
        let d = sample::sample_digraph(80, 0.3, &mut grng);
        let mut rng = rng::stream(3, streams::AUDIT);
        let report = typicality_audit_digraph(&d, 0.3, 200, &mut rng);
        for c in &report.checks {
            match c.method {
                CheckMethod::Sampled => assert!(c.samples.is_some()),
                CheckMethod::Exact => assert!(c.samples.is_none()),
            }
        }
    }

    #[test]
    fn d2_holds_on_dense_random_digraph() {
        // 10⁴ sampled subsets within the size window all satisfy the
        // 12|X|ln²n bound at (300, 0.3).
        let mut grng = rng::stream(3, streams::DIGRAPH_SAMPLE);
        let d = sample::sample_digraph(300, 0.3, &mut grng);
        let mut rng = rng::stream(3, streams::AUDIT);
        let report = typicality_audit_digraph(&d, 0.3, 10_000, &mut rng);
        let d2 = report.find("D2").unwrap();
        assert!(d2.pass, "observed {}", d2.observed);
        assert_eq!(d2.samples, Some(10_000));
    }

    #[test]
    fn complete_digraph_satisfies_p1() {
        let n = 10;
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in 0..n as u32 {
                if u != v {
                    edges.push((u, v));
                }
            }
        }
        let d = Digraph::from_edges(n, &edges).unwrap();
        let params = PseudorandomParams::new(n, 0.125, 1.0);
        let mut rng = rng::stream(4, streams::AUDIT);
        let report = pseudorandom_audit(&d, &params, 20, &mut rng);
        assert!(report.find("P1").unwrap().pass);
    }

    #[test]
    fn missing_out_edges_fail_p1() {
        let d = Digraph::from_edges(3, &[(0, 1), (1, 2), (1, 0), (2, 1)]).unwrap();
        let params = PseudorandomParams::new(3, 0.125, 1.0);
        let mut rng = rng::stream(5, streams::AUDIT);
        let report = pseudorandom_audit(&d, &params, 10, &mut rng);
        assert!(!report.find("P1").unwrap().pass);
    }
}
