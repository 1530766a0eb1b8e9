//! Text file formats.
//!
//! Graphs use the repo-wide edge-list format: a header line
//! `digraph <n> <m>` or `bipartite <n> <m>`, then `m` lines `u v` with
//! 1-based labels. Digraph lines mean `u → v`; bipartite lines join the
//! X-part vertex `u` to the Y-part vertex `v`. Matchings use the header
//! `matching <n> <k>`, permutations `perm <n>` followed by `i π(i)` lines.
//!
//! Certificates persist as a directory with three files: `manifest` (flat
//! `key = value` text), `cycles` (one line per cycle, space-separated
//! 1-based visit order) and `witness` (`u v c` per edge, `c` the 1-based
//! index of a cycle traversing `u → v`). All content is deterministic, so
//! identical runs produce byte-identical directories.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};

use hamcover_core::audit::TypicalityReport;
use hamcover_core::cover::{CoverCertificate, StageTag};
use hamcover_core::cover_forest::SolveAudit;
use hamcover_core::forest::ForestCoverPlan;
use hamcover_core::matchings::DemandAudit;
use hamcover_core::matchings::Matching;
use hamcover_core::{BipartiteGraph, Digraph, Permutation, RunReport};

pub fn write_digraph(path: &Path, d: &Digraph) -> Result<()> {
    let mut out = format!("digraph {} {}\n", d.n(), d.m());
    for (u, v) in d.edges() {
        writeln!(out, "{} {}", u + 1, v + 1)?;
    }
    fs::write(path, out).with_context(|| format!("writing {}", path.display()))
}

pub fn write_bipartite(path: &Path, b: &BipartiteGraph) -> Result<()> {
    let mut out = format!("bipartite {} {}\n", b.n(), b.m());
    for (x, y) in b.edges() {
        writeln!(out, "{} {}", x + 1, y + 1)?;
    }
    fs::write(path, out).with_context(|| format!("writing {}", path.display()))
}

pub fn write_matching(path: &Path, m: &Matching) -> Result<()> {
    let mut out = format!("matching {} {}\n", m.n(), m.len());
    for &(x, y) in m.pairs() {
        writeln!(out, "{} {}", x + 1, y + 1)?;
    }
    fs::write(path, out).with_context(|| format!("writing {}", path.display()))
}

pub fn write_permutation(path: &Path, p: &Permutation) -> Result<()> {
    let mut out = format!("perm {}\n", p.n());
    for i in 0..p.n() as u32 {
        writeln!(out, "{} {}", i + 1, p.apply(i) + 1)?;
    }
    fs::write(path, out).with_context(|| format!("writing {}", path.display()))
}

fn parse_header<'a>(line: &'a str, path: &Path) -> Result<(&'a str, Vec<usize>)> {
    let mut parts = line.split_whitespace();
    let kind = parts.next().with_context(|| format!("{}: empty header", path.display()))?;
    let nums: Vec<usize> = parts
        .map(|t| t.parse::<usize>().with_context(|| format!("{}: bad header", path.display())))
        .collect::<Result<_>>()?;
    Ok((kind, nums))
}

fn parse_edge_lines(body: &[&str], n: usize, m: usize, path: &Path) -> Result<Vec<(u32, u32)>> {
    if body.len() < m {
        bail!("{}: expected {m} edge lines, found {}", path.display(), body.len());
    }
    let mut edges = Vec::with_capacity(m);
    for line in &body[..m] {
        let mut it = line.split_whitespace();
        let (u, v): (usize, usize) = match (it.next(), it.next()) {
            (Some(a), Some(b)) => (a.parse()?, b.parse()?),
            _ => bail!("{}: malformed edge line {line:?}", path.display()),
        };
        if u == 0 || v == 0 || u > n || v > n {
            bail!("{}: edge label out of range in {line:?}", path.display());
        }
        edges.push((u as u32 - 1, v as u32 - 1));
    }
    Ok(edges)
}

pub fn read_digraph(path: &Path) -> Result<Digraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let lines: Vec<&str> = text.lines().collect();
    let (kind, nums) = parse_header(lines.first().copied().unwrap_or(""), path)?;
    if kind != "digraph" || nums.len() != 2 {
        bail!("{}: expected `digraph <n> <m>` header", path.display());
    }
    let (n, m) = (nums[0], nums[1]);
    let edges = parse_edge_lines(&lines[1..], n, m, path)?;
    Ok(Digraph::from_edges(n, &edges)?)
}

pub fn read_bipartite(path: &Path) -> Result<BipartiteGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let lines: Vec<&str> = text.lines().collect();
    let (kind, nums) = parse_header(lines.first().copied().unwrap_or(""), path)?;
    if kind != "bipartite" || nums.len() != 2 {
        bail!("{}: expected `bipartite <n> <m>` header", path.display());
    }
    let (n, m) = (nums[0], nums[1]);
    let edges = parse_edge_lines(&lines[1..], n, m, path)?;
    Ok(BipartiteGraph::from_edges(n, &edges)?)
}

/// Writes the certificate directory: `manifest`, `cycles`, `witness`.
pub fn write_certificate(dir: &Path, cert: &CoverCertificate, report: &RunReport) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut cycles = String::new();
    for c in &cert.cycles {
        let line: Vec<String> = c.order().iter().map(|&v| (v + 1).to_string()).collect();
        writeln!(cycles, "{}", line.join(" "))?;
    }
    fs::write(dir.join("cycles"), cycles)?;

    let mut witness = String::new();
    for (&(u, v), &i) in &cert.witness {
        writeln!(witness, "{} {} {}", u + 1, v + 1, i + 1)?;
    }
    fs::write(dir.join("witness"), witness)?;

    let mut manifest = String::new();
    let mut kv = |k: &str, v: String| writeln!(manifest, "{k} = {v}").unwrap();
    kv("n", report.n.to_string());
    kv("seed", report.seed.to_string());
    kv("mode", report.mode.to_string());
    kv("delta1", report.delta1.to_string());
    kv("cover_size", report.cover_size.to_string());
    kv("excess", report.excess.to_string());
    kv("t", report.t.to_string());
    kv("reserved", report.reserved_count.to_string());
    kv("flipped", report.flipped.to_string());
    kv("route", report.route.to_string());
    kv("dropped_factors", report.dropped_factors.to_string());
    kv("forest_components_max", report.forest_components_max.to_string());
    kv("component_threshold", format!("{:.6}", report.component_threshold));
    kv("components_pass", report.components_pass.to_string());
    kv("residual1_max_degree", report.residual1_max_degree.to_string());
    kv("residual1_scale", format!("{:.6}", report.residual1_scale));
    kv("residual2_max_degree", report.residual2_max_degree.to_string());
    kv("residual2_threshold", format!("{:.6}", report.residual2_threshold));
    kv("demoted_forests", report.demoted_forests.to_string());
    kv("residual_edges", report.residual_edges.to_string());
    kv("residual_after_drop", report.residual_after_drop.to_string());
    kv("palette", report.palette.to_string());
    kv("coloring_fallback", report.coloring_fallback.to_string());
    kv(
        "class_sizes",
        report
            .class_sizes
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(","),
    );
    kv("fallback_cycles", report.fallback_cycles.to_string());
    kv("count_identity", report.count_identity.to_string());
    for (i, tag) in cert.stage_tags.iter().enumerate() {
        kv(&format!("stage.{}", i + 1), tag.to_string());
    }
    fs::write(dir.join("manifest"), manifest)?;
    Ok(())
}

/// Reads back a certificate directory. Only `cycles`, `witness` and the
/// per-cycle stage tags are needed to re-verify.
pub fn read_certificate(dir: &Path) -> Result<CoverCertificate> {
    let cycles_text = fs::read_to_string(dir.join("cycles"))
        .with_context(|| format!("reading {}/cycles", dir.display()))?;
    let mut cycles = Vec::new();
    for line in cycles_text.lines() {
        if line.trim().is_empty() {
            continue;
        }
        let order: Vec<u32> = line
            .split_whitespace()
            .map(|t| {
                let v: u32 = t.parse()?;
                if v == 0 {
                    bail!("cycle labels are 1-based");
                }
                Ok(v - 1)
            })
            .collect::<Result<_>>()?;
        cycles.push(hamcover_core::HamiltonCycle::new(order));
    }
    let witness_text = fs::read_to_string(dir.join("witness"))
        .with_context(|| format!("reading {}/witness", dir.display()))?;
    let mut witness = BTreeMap::new();
    for line in witness_text.lines() {
        if line.trim().is_empty() {
            continue;
        }
        let parts: Vec<u32> = line
            .split_whitespace()
            .map(|t| t.parse::<u32>().map_err(Into::into))
            .collect::<Result<_>>()?;
        if parts.len() != 3 || parts.iter().take(3).any(|&v| v == 0) {
            bail!("malformed witness line {line:?}");
        }
        witness.insert((parts[0] - 1, parts[1] - 1), parts[2] - 1);
    }
    let manifest_text = fs::read_to_string(dir.join("manifest")).unwrap_or_default();
    let mut stage_tags = vec![StageTag::Fallback; cycles.len()];
    for line in manifest_text.lines() {
        if let Some((key, value)) = line.split_once(" = ") {
            if let Some(ix) = key.strip_prefix("stage.") {
                if let (Ok(i), Some(tag)) = (ix.parse::<usize>(), StageTag::parse(value.trim())) {
                    if i >= 1 && i <= stage_tags.len() {
                        stage_tags[i - 1] = tag;
                    }
                }
            }
        }
    }
    Ok(CoverCertificate { cycles, witness, stage_tags })
}

/// Serializes a forest-cover plan: one edge-list file per forest, the
/// residual and reserved edge sets, and a manifest with the anchor, the
/// per-forest anchor heads and the audit values.
pub fn write_plan(dir: &Path, plan: &ForestCoverPlan) -> Result<()> {
    fs::create_dir_all(dir)?;
    let n = plan.working.n();
    for (i, forest) in plan.forests.iter().enumerate() {
        let edges: Vec<(u32, u32)> = forest.edges().collect();
        let g = Digraph::from_edges(n, &edges)?;
        write_digraph(&dir.join(format!("forest.{:04}", i + 1)), &g)?;
    }
    write_digraph(&dir.join("residual"), &plan.residual)?;
    let reserved = Digraph::from_edges(n, &plan.reserved)?;
    write_digraph(&dir.join("reserved"), &reserved)?;
    let mut manifest = String::new();
    let mut kv = |k: &str, v: String| writeln!(manifest, "{k} = {v}").unwrap();
    kv("t", plan.t().to_string());
    kv("anchor", (plan.anchor_vertex + 1).to_string());
    kv("flipped", plan.flipped.to_string());
    kv("route", plan.route.to_string());
    kv(
        "anchors",
        plan.anchors.iter().map(|&y| (y + 1).to_string()).collect::<Vec<_>>().join(","),
    );
    kv("dropped_factors", plan.audits.dropped_factors.to_string());
    kv(
        "component_counts",
        plan.audits
            .component_counts
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(","),
    );
    kv("component_threshold", format!("{:.6}", plan.audits.component_threshold));
    kv("components_pass", plan.audits.components_pass.to_string());
    kv("residual_max_degree", plan.audits.residual_max_degree.to_string());
    kv("residual_scale", format!("{:.6}", plan.audits.residual_scale));
    kv("residual_pass", plan.audits.residual_pass.to_string());
    fs::write(dir.join("manifest"), manifest)?;
    Ok(())
}

/// Flat audit records: `name threshold observed pass method samples`,
/// with `-` standing in for absent sample counts, followed by the
/// per-forest contraction audits and the f-factor demand audit when
/// present.
pub fn write_audit(
    path: &Path,
    typicality: &TypicalityReport,
    solves: &[SolveAudit],
    demand: Option<&DemandAudit>,
) -> Result<()> {
    let mut out = String::from("# name threshold observed pass method samples\n");
    for c in &typicality.checks {
        let samples = c.samples.map_or(String::from("-"), |s| s.to_string());
        writeln!(
            out,
            "{} {:.6} {:.6} {} {} {}{}",
            c.name,
            c.threshold,
            c.observed,
            c.pass,
            c.method,
            samples,
            if c.vacuous { " vacuous" } else { "" },
        )?;
    }
    out.push_str("# forest: components component_floor contraction_min_degree degree_floor retries demoted\n");
    for (i, a) in solves.iter().enumerate() {
        writeln!(
            out,
            "forest.{} {} {:.3} {} {:.3} {} {}",
            i + 1,
            a.components,
            a.component_floor,
            a.contraction_min_degree,
            a.degree_floor,
            a.retries,
            a.demoted
        )?;
    }
    if let Some(d) = demand {
        writeln!(
            out,
            "demand M={:.3} f_max={} f_min={} upper_ok={} lower_ok={}",
            d.m_bound, d.f_max, d.f_min, d.upper_ok, d.lower_ok
        )?;
    }
    fs::write(path, out)?;
    Ok(())
}

/// One-line machine-readable run summary.
pub fn summary_line(report: &RunReport, valid: bool) -> String {
    format!(
        "RESULT n={} seed={} mode={} valid={} delta1={} cover_size={} excess={} t={} reserved={} \
         route={} palette={} fallbacks={} demoted={} residual={} residual_after_drop={} wall_ms={}",
        report.n,
        report.seed,
        report.mode,
        valid,
        report.delta1,
        report.cover_size,
        report.excess,
        report.t,
        report.reserved_count,
        report.route,
        report.palette,
        report.fallback_cycles,
        report.demoted_forests,
        report.residual_edges,
        report.residual_after_drop,
        report.wall_ms,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use hamcover_core::rng::{self, streams};
    use hamcover_core::sample;

    #[test]
    fn digraph_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.edges");
        let d = sample::sample_digraph(20, 0.3, &mut rng::stream(1, streams::DIGRAPH_SAMPLE));
        write_digraph(&path, &d).unwrap();
        assert_eq!(read_digraph(&path).unwrap(), d);
    }

    #[test]
    fn bipartite_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("b.edges");
        let b = sample::sample_bipartite(15, 0.4, &mut rng::stream(2, streams::BIPARTITE_SAMPLE));
        write_bipartite(&path, &b).unwrap();
        assert_eq!(read_bipartite(&path).unwrap(), b);
    }

    #[test]
    fn rejects_wrong_headers_and_labels() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad");
        std::fs::write(&path, "graph 3 1\n1 2\n").unwrap();
        assert!(read_digraph(&path).is_err());
        std::fs::write(&path, "digraph 3 1\n0 2\n").unwrap();
        assert!(read_digraph(&path).is_err(), "labels are 1-based");
        std::fs::write(&path, "digraph 3 2\n1 2\n").unwrap();
        assert!(read_digraph(&path).is_err(), "edge count must match");
    }

    #[test]
    fn certificate_roundtrip_preserves_tags() {
        use hamcover_core::pipeline::{cover_digraph, RunConfig};
        let dir = tempfile::tempdir().unwrap();
        let art = cover_digraph(&RunConfig { n: 30, p: 0.5, seed: 4, ..Default::default() })
            .unwrap();
        write_certificate(dir.path(), &art.certificate, &art.report).unwrap();
        let back = read_certificate(dir.path()).unwrap();
        assert_eq!(back, art.certificate);
    }
}
