//! Command-line interface: generate random models, construct and verify
//! Hamilton cycle coverings, and reproduce the exactly-computable
//! statistics.
//!
//! Exit codes: 0 success, 2 strict-mode precondition abort, 3 verification
//! failure.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use hamcover_core::pipeline::{
    cover_digraph, cover_digraph_input, PipelineError, RunConfig, RunMode,
};
use hamcover_core::audit::typicality_audit_digraph;
use hamcover_core::rng::{self, streams};
use hamcover_core::sample::{sample_bipartite, sample_digraph, sample_permutation};
use hamcover_core::verify_cover;

use hamcover::formats;
use hamcover::stats;

#[derive(Parser)]
#[command(name = "hamcover", about = "Hamilton cycle coverings of random digraphs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Digraph,
    Bipartite,
    Perm,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Strict,
    Adaptive,
}

#[derive(Clone, Copy, ValueEnum)]
enum Task {
    #[value(name = "two-pow-c")]
    TwoPowC,
    #[value(name = "cycle-law")]
    CycleLaw,
    #[value(name = "inv-c")]
    InvC,
    #[value(name = "model-eq")]
    ModelEq,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a random digraph, bipartite graph or permutation to a file.
    Generate {
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Construct a Hamilton cycle covering and persist its certificate.
    Cover {
        /// Vertex count of the sampled model (ignored with --input).
        #[arg(long, default_value_t = 100)]
        n: usize,
        /// Edge probability of the sampled model (ignored with --input).
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cover a digraph read from an edge-list file instead of sampling.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Mode::Adaptive)]
        mode: Mode,
        /// Node-expansion budget per Hamilton search.
        #[arg(long, default_value_t = 400_000)]
        budget: u64,
        /// Fresh sparsifications per forest before demotion.
        #[arg(long, default_value_t = 5)]
        retries: u32,
        /// Certificate directory (per-trial subdirectories when --trials > 1).
        #[arg(long)]
        out: PathBuf,
        /// Also serialize the forest-stage plan into this directory.
        #[arg(long)]
        plan: Option<PathBuf>,
        /// Number of sampled runs, at consecutive seeds.
        #[arg(long, default_value_t = 1)]
        trials: u64,
    },
    /// Re-verify a persisted certificate against a digraph file.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Monte Carlo statistics with exact targets where they exist.
    Stats {
        #[arg(long, value_enum)]
        task: Task,
        #[arg(long)]
        n: Option<usize>,
        /// Matching count for inv-c (default n/4).
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, default_value_t = 0.4)]
        p: f64,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV output path (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Generate { model, n, p, seed, out } => {
            hamcover_core::sample::check_probability(p)?;
            match model {
                Model::Digraph => {
                    let d = sample_digraph(n, p, &mut rng::stream(seed, streams::DIGRAPH_SAMPLE));
                    formats::write_digraph(&out, &d)?;
                    println!("digraph n={n} m={} -> {}", d.m(), out.display());
                }
                Model::Bipartite => {
                    let b =
                        sample_bipartite(n, p, &mut rng::stream(seed, streams::BIPARTITE_SAMPLE));
                    formats::write_bipartite(&out, &b)?;
                    println!("bipartite n={n} m={} -> {}", b.m(), out.display());
                }
                Model::Perm => {
                    let pi =
                        sample_permutation(n, &mut rng::stream(seed, streams::PERMUTATION_SAMPLE));
                    formats::write_permutation(&out, &pi)?;
                    println!("perm n={n} -> {}", out.display());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Cover { n, p, seed, input, mode, budget, retries, out, plan, trials } => {
            let base = RunConfig {
                n,
                p,
                seed,
                mode: match mode {
                    Mode::Strict => RunMode::Strict,
                    Mode::Adaptive => RunMode::Adaptive,
                },
                solver_budget: budget,
                retry_cap: retries,
            };
            if trials == 0 {
                bail!("--trials must be positive");
            }
            if trials > 1 && input.is_some() {
                bail!("--trials applies to sampled runs only");
            }
            for trial_seed in seed..seed + trials {
                let config = RunConfig { seed: trial_seed, ..base.clone() };
                let dir = if trials == 1 {
                    out.clone()
                } else {
                    out.join(format!("seed-{trial_seed}"))
                };
                let code = run_cover(&config, &input, &dir, &plan)?;
                if code != ExitCode::SUCCESS {
                    return Ok(code);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { graph, cert } => {
            let d = formats::read_digraph(&graph)?;
            let certificate = formats::read_certificate(&cert)?;
            let report = verify_cover(&d, &certificate);
            println!(
                "VERIFY valid={} size={} uncovered={} bad_cycles={}",
                report.valid,
                report.size,
                report.uncovered.len(),
                report.bad_cycles.len()
            );
            if report.valid {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(3))
            }
        }
        Command::Stats { task, n, r, p, samples, seed, out } => {
            if samples < 1_000 {
                bail!("sample counts below 1000 give meaningless estimates");
            }
            let csv = run_stats(task, n, r, p, samples, seed)?;
            match out {
                Some(path) => {
                    std::fs::write(&path, &csv)
                        .with_context(|| format!("writing {}", path.display()))?;
                    println!("wrote {}", path.display());
                }
                None => print!("{csv}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_cover(
    config: &RunConfig,
    input: &Option<PathBuf>,
    out: &PathBuf,
    plan: &Option<PathBuf>,
) -> Result<ExitCode> {
    let started = Instant::now();
    let result = match input {
        Some(path) => {
            let d = formats::read_digraph(path)?;
            cover_digraph_input(&d, &RunConfig { n: d.n(), ..config.clone() })
        }
        None => cover_digraph(config),
    };
    let mut artifacts = match result {
        Ok(a) => a,
        Err(PipelineError::StrictAbort { stage, detail }) => {
            eprintln!("strict-mode abort at {stage}: {detail}");
            return Ok(ExitCode::from(2));
        }
        Err(PipelineError::VerificationFailed { uncovered, bad_cycles }) => {
            eprintln!("verification failed: {uncovered} uncovered edges, {bad_cycles} bad cycles");
            return Ok(ExitCode::from(3));
        }
        Err(e) => bail!(e.to_string()),
    };
    artifacts.report.wall_ms = started.elapsed().as_millis() as u64;
    // The emitted certificate has passed verification inside the pipeline;
    // check once more against the persisted digraph.
    let check = verify_cover(&artifacts.digraph, &artifacts.certificate);
    formats::write_certificate(out, &artifacts.certificate, &artifacts.report)?;
    formats::write_digraph(&out.join("graph"), &artifacts.digraph)?;
    let d = &artifacts.digraph;
    let p_used = if d.n() > 1 { d.m() as f64 / (d.n() * (d.n() - 1)) as f64 } else { 0.0 };
    let typ = typicality_audit_digraph(d, p_used, 2000, &mut rng::stream(config.seed, streams::AUDIT));
    formats::write_audit(
        &out.join("audit"),
        &typ,
        &artifacts.family_audits,
        artifacts.plan.as_ref().and_then(|p| p.demand_audit.as_ref()),
    )?;
    if let (Some(plan_dir), Some(p)) = (plan, &artifacts.plan) {
        formats::write_plan(plan_dir, p)?;
    }
    println!("{}", formats::summary_line(&artifacts.report, check.valid));
    if !check.valid {
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}

fn run_stats(
    task: Task,
    n: Option<usize>,
    r: Option<usize>,
    p: f64,
    samples: u64,
    seed: u64,
) -> Result<String> {
    let mut csv = String::new();
    match task {
        Task::TwoPowC => {
            let n = n.unwrap_or(30);
            let est = stats::two_pow_c(n, samples, seed);
            csv.push_str("task,n,samples,estimate,std_error,target,rel_error\n");
            csv.push_str(&format!(
                "two-pow-c,{n},{samples},{:.6},{:.6},{:.1},{:.6}\n",
                est.mean,
                est.std_error,
                est.target,
                (est.mean - est.target).abs() / est.target
            ));
        }
        Task::CycleLaw => {
            let n = n.unwrap_or(20);
            let law = stats::cycle_length_law(n, samples, seed);
            csv.push_str("task,n,samples,chi_square,dof,p_value\n");
            csv.push_str(&format!(
                "cycle-law,{n},{samples},{:.4},{},{:.6}\n",
                law.chi_square, law.dof, law.p_value
            ));
            csv.push_str("length,count,frequency\n");
            for (i, &c) in law.counts.iter().enumerate() {
                csv.push_str(&format!("{},{c},{:.6}\n", i + 1, c as f64 / samples as f64));
            }
        }
        Task::InvC => {
            let grid: Vec<usize> = match n {
                Some(n) => vec![n],
                None => vec![50, 100, 200],
            };
            csv.push_str("task,n,r,samples,third_moment,scale,ratio\n");
            for n in grid {
                let r = r.unwrap_or(n / 4).max(1);
                let est = stats::inv_c_moment(n, r, samples, seed);
                csv.push_str(&format!(
                    "inv-c,{n},{r},{samples},{:.6},{:.6},{:.4}\n",
                    est.third_moment, est.scale, est.ratio
                ));
            }
        }
        Task::ModelEq => {
            let n = n.unwrap_or(25);
            let eq = stats::model_equivalence(n, p, samples, seed)?;
            csv.push_str("task,n,p,samples,statistic,chi_square,p_value\n");
            csv.push_str(&format!(
                "model-eq,{n},{p},{samples},edge_count,{:.4},{:.6}\n",
                eq.edge_stat, eq.edge_p
            ));
            csv.push_str(&format!(
                "model-eq,{n},{p},{samples},out_degree_v1,{:.4},{:.6}\n",
                eq.degree_stat, eq.degree_p
            ));
        }
    }
    Ok(csv)
}
