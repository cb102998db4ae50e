use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use marcopolo::adversary::{make_rewards, Labels, Ref};
use marcopolo::error::Error;
use marcopolo::experiment::{benchmark, run_replicate, summarize, write_outputs, Experiment, Replicate};
use marcopolo::fixtures;
use marcopolo::graph::analyze;
use marcopolo::io::{load_dmdp, parse_adversary, ExperimentConfig, NamedDmdp};
use marcopolo::oracle::{hindsight_report, DEFAULT_POLICY_CAP};
use marcopolo::polytope::{FlowPoint, FlowPolytope, DEFAULT_CYCLE_CAP};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

/// Online learning in deterministic MDPs: structure analysis, regret
/// experiments and hindsight oracles.
#[derive(Parser)]
#[command(name = "marcopolo", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a DMDP file and print the report as JSON.
    Analyze {
        dmdp: PathBuf,
        /// Largest cycle length counted in the arm summary.
        #[arg(long, default_value_t = 3)]
        max_cycle_len: usize,
    },
    /// Run an experiment config, writing one CSV per seed and a JSON summary.
    Run {
        config: PathBuf,
        /// Seeds overriding the config, e.g. `1,2,3` or `1-20`.
        #[arg(long, value_parser = parse_seeds)]
        seeds: Option<Seeds>,
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long)]
        tau: Option<usize>,
        #[arg(long)]
        max_enum: Option<u128>,
    },
    /// Best policy and per-arm best cycles in hindsight, as JSON.
    Oracle {
        dmdp: PathBuf,
        /// TOML file with the adversary table.
        #[arg(long)]
        adversary: PathBuf,
        #[arg(long)]
        horizon: usize,
        #[arg(long, default_value_t = 3)]
        max_cycle_len: usize,
        /// Start state by name or index.
        #[arg(long, default_value = "0")]
        start_state: String,
        #[arg(long, default_value_t = DEFAULT_POLICY_CAP)]
        max_enum: u128,
        /// Report only the cycle benchmarks when enumeration exceeds the cap.
        #[arg(long)]
        fallback_dp: bool,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Decompose random interior points of built-in polytopes and check them.
    DecomposeSelftest {
        #[arg(long, value_parser = parse_seeds, default_value = "0")]
        seeds: Seeds,
        /// Points per seed.
        #[arg(long, default_value_t = 200)]
        points: usize,
    },
}

#[derive(Clone, Debug)]
struct Seeds(Vec<u64>);

fn parse_seeds(text: &str) -> Result<Seeds, String> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let num = |s: &str| s.trim().parse::<u64>().map_err(|e| format!("bad seed {s:?}: {e}"));
        match part.split_once('-') {
            Some((lo, hi)) => {
                let (lo, hi) = (num(lo)?, num(hi)?);
                if lo > hi {
                    return Err(format!("empty seed range {part}"));
                }
                out.extend(lo..=hi);
            }
            None => out.push(num(part)?),
        }
    }
    if out.is_empty() {
        return Err("no seeds given".into());
    }
    Ok(Seeds(out))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::Input(_) | Error::Config(_) | Error::NoPath { .. } => 3,
        Error::CapExceeded { .. } => 4,
        Error::Internal(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze { dmdp, max_cycle_len } => cmd_analyze(&dmdp, max_cycle_len),
        Command::Run { config, seeds, out_dir, tau, max_enum } => {
            cmd_run(&config, seeds.map(|s| s.0), out_dir, tau, max_enum)
        }
        Command::Oracle { dmdp, adversary, horizon, max_cycle_len, start_state, max_enum, fallback_dp, out_dir } => {
            cmd_oracle(&dmdp, &adversary, horizon, max_cycle_len, &start_state, max_enum, fallback_dp, out_dir)
        }
        Command::DecomposeSelftest { seeds, points } => cmd_selftest(&seeds.0, points),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

type CmdResult = Result<ExitCode, Error>;

fn print_json(value: &Value) {
    let text = serde_json::to_string_pretty(value).expect("json values serialize");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn save_json(dir: &Path, name: &str, value: &Value) -> Result<PathBuf, Error> {
    let path = dir.join(name);
    std::fs::create_dir_all(dir)
        .and_then(|_| std::fs::write(&path, serde_json::to_string_pretty(value).expect("serializes") + "\n"))
        .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}

fn names(labels: &[String], idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| labels[i].clone()).collect()
}

fn cmd_analyze(path: &Path, max_cycle_len: usize) -> CmdResult {
    let NamedDmdp { dmdp: m, labels } = load_dmdp(path)?;
    let report = analyze(&m);
    let mut arms = Vec::new();
    for k in 1..=max_cycle_len {
        let mut count = 0;
        for &s in &report.closed_set {
            if FlowPolytope::new(&m, k, s)?.count_cycles() > 0 {
                count += 1;
            }
        }
        arms.push(json!({ "k": k, "arms": count }));
    }
    print_json(&json!({
        "num_states": m.num_states(),
        "num_actions": m.num_actions(),
        "closed_set": names(&labels.states, &report.closed_set),
        "transient_states": names(&labels.states, &report.transient_states),
        "weakly_communicating": report.weakly_communicating,
        "unichain": report.unichain,
        "uniform_d": report.uniform_d,
        "feasible_arms": arms,
    }));
    Ok(ExitCode::SUCCESS)
}

fn cmd_run(
    path: &Path,
    seeds: Option<Vec<u64>>,
    out_dir: Option<PathBuf>,
    tau: Option<usize>,
    max_enum: Option<u128>,
) -> CmdResult {
    let mut cfg = ExperimentConfig::load(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    if let Some(s) = seeds {
        cfg.seeds = s;
    }
    cfg.tau = tau.or(cfg.tau);
    cfg.max_enum = max_enum.or(cfg.max_enum);
    let dir = out_dir.unwrap_or_else(|| cfg.output.as_ref().map_or_else(|| PathBuf::from("results"), |o| base.join(o)));
    let exp = Experiment::from_config(cfg, base)?;
    let bench = benchmark(&exp)?;
    let replicates = exp
        .config
        .seeds
        .par_iter()
        .map(|&seed| run_replicate(&exp, &bench, seed))
        .collect::<Result<Vec<Replicate>, Error>>()?;
    let summary = summarize(&exp, &bench, &replicates)?;
    let files = write_outputs(&dir, &replicates, &summary)?;
    if let Some(note) = &summary.note {
        eprintln!("{note}");
    }
    println!(
        "{} seeds, mean final regret {:.3} (min {:.3}, max {:.3}), exponent {}; wrote {} files to {}",
        replicates.len(),
        summary.final_regret.mean,
        summary.final_regret.min,
        summary.final_regret.max,
        summary.exponent.map_or("n/a".into(), |e| format!("{e:.3}")),
        files.len(),
        dir.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn parse_ref(text: &str) -> Ref {
    text.parse::<usize>().map_or_else(|_| Ref::Name(text.to_owned()), Ref::Index)
}

#[allow(clippy::too_many_arguments)]
fn cmd_oracle(
    dmdp: &Path,
    adversary: &Path,
    horizon: usize,
    max_cycle_len: usize,
    start_state: &str,
    cap: u128,
    fallback: bool,
    out_dir: Option<PathBuf>,
) -> CmdResult {
    let NamedDmdp { dmdp: m, labels } = load_dmdp(dmdp)?;
    let text = std::fs::read_to_string(adversary)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", adversary.display())))?;
    let spec = parse_adversary(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", adversary.display())),
        other => other,
    })?;
    if horizon == 0 || max_cycle_len == 0 {
        return Err(Error::Config("horizon and max-cycle-len must be positive".into()));
    }
    let s1 = labels.state(&parse_ref(start_state))?;
    let rewards = make_rewards(&spec, &m, horizon, Some(&labels))?;
    let report = hindsight_report(&m, &rewards, s1, max_cycle_len, cap, fallback)?;
    let Labels { states, actions } = &labels;
    let policy = report.best_policy.as_ref().map(|p| {
        states.iter().zip(p.actions()).map(|(s, &a)| (s.clone(), json!(actions[a]))).collect::<serde_json::Map<_, _>>()
    });
    let arms: Vec<Value> = report
        .best_cycle_per_arm
        .iter()
        .map(|c| {
            json!({
                "k": c.k,
                "state": states[c.anchor],
                "cycle": names(actions, &c.cycle),
                "epochs": c.num_epochs,
                "reward": c.reward,
            })
        })
        .collect();
    let value = json!({
        "horizon": horizon,
        "max_cycle_len": max_cycle_len,
        "start_state": states[s1],
        "best_policy": policy,
        "best_policy_reward": report.best_policy_reward,
        "best_cycle_per_arm": arms,
        "note": report.note,
    });
    if let Some(dir) = out_dir {
        save_json(&dir, "oracle.json", &value)?;
    }
    print_json(&value);
    Ok(ExitCode::SUCCESS)
}

fn cmd_selftest(seeds: &[u64], points: usize) -> CmdResult {
    let instances = [
        ("d2", fixtures::d2()),
        ("triangle", fixtures::triangle()),
        ("ring4", fixtures::ring4()),
        ("joined_unichains", fixtures::joined_unichains()),
    ];
    let mut polys = Vec::new();
    for (name, m) in &instances {
        for k in 1..=4 {
            for s in 0..m.num_states() {
                let poly = FlowPolytope::new(m, k, s)?;
                let cycles = poly.enumerate_cycles(DEFAULT_CYCLE_CAP)?.cycles;
                if !cycles.is_empty() {
                    polys.push((*name, poly, cycles));
                }
            }
        }
    }
    let (mut checked, mut failures) = (0usize, 0usize);
    let (mut worst_sum, mut worst_err, mut worst_support) = (0.0f64, 0.0f64, 0.0f64);
    for &seed in seeds {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..points {
            let (_, poly, cycles) = &polys[rng.random_range(0..polys.len())];
            let used = rng.random_range(1..=cycles.len());
            let weights: Vec<f64> = (0..used).map(|_| rng.random::<f64>() + 1e-3).collect();
            let total: f64 = weights.iter().sum();
            let mut x = FlowPoint::zeros(poly.dim());
            for w in weights {
                x.add_scaled(w / total, &poly.embed(&cycles[rng.random_range(0..cycles.len())])?);
            }
            checked += 1;
            match poly.decompose(&x) {
                Ok(dist) => {
                    let sum: f64 = dist.support().iter().map(|(_, w)| w).sum();
                    let err = poly.mean_point(&dist)?.sup_distance(&x);
                    let ratio = dist.len() as f64 / (poly.dim() + 1) as f64;
                    worst_sum = worst_sum.max((sum - 1.0).abs());
                    worst_err = worst_err.max(err);
                    worst_support = worst_support.max(ratio);
                    if (sum - 1.0).abs() > 1e-9 || err > 1e-9 || ratio > 1.0 {
                        failures += 1;
                    }
                }
                Err(_) => failures += 1,
            }
        }
    }
    print_json(&json!({
        "polytopes": polys.len(),
        "points": checked,
        "failures": failures,
        "max_weight_sum_error": worst_sum,
        "max_reconstruction_error": worst_err,
        "max_support_fraction": worst_support,
    }));
    Ok(if failures == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
