//! Seeded experiment replicates, hindsight benchmarks and result summaries.

use std::fs;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bandit::{cycle_learner_bound, episodic_bound, episodic_constant, Exp3};
use crate::cycle_learner::{self, lock_in_plan, CycleLearnerConfig};
use crate::error::{Error, Result};
use crate::graph::analyze;
use crate::io::{write_checkpoints, AlgorithmSpec, CheckpointRow, ExperimentConfig, NamedDmdp};
use crate::marco_polo::{self, build_arm_table, default_tau, MarcoPoloConfig};
use crate::oracle::{
    best_cycle_dp, best_policy_bruteforce, cycle_reward_series, hindsight_report, policy_reward_series,
    DEFAULT_POLICY_CAP,
};
use crate::polytope::FlowPolytope;
use crate::rewards::RewardSequence;

pub const FALLBACK_NOTE: &str = "benchmark: cycle-DP only";

/// Smallest checkpoint used by the growth-exponent fit.
pub const FIT_FROM: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Algorithm {
    #[serde(rename = "marcopolo")]
    MarcoPolo,
    CycleLearner { k: usize, anchor: usize },
    Exp3Baseline,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::MarcoPolo => "marcopolo",
            Algorithm::CycleLearner { .. } => "cycle_learner",
            Algorithm::Exp3Baseline => "exp3_baseline",
        }
    }
}

/// A config with every name resolved and the reward sequence built.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub config: ExperimentConfig,
    pub named: NamedDmdp,
    pub rewards: RewardSequence,
    pub start_state: usize,
    pub algorithm: Algorithm,
    pub tau: usize,
    /// Uniform path length on the closed set, when one exists.
    pub d: Option<usize>,
}

impl Experiment {
    pub fn from_config(config: ExperimentConfig, base_dir: &Path) -> Result<Self> {
        let named = config.dmdp.load(base_dir)?;
        Self::with_dmdp(config, named)
    }

    pub fn with_dmdp(config: ExperimentConfig, named: NamedDmdp) -> Result<Self> {
        let cfg_err = |msg: String| Error::Config(msg);
        if config.horizon == 0 {
            return Err(cfg_err("horizon must be positive".into()));
        }
        if config.max_cycle_len == 0 {
            return Err(cfg_err("max_cycle_len must be positive".into()));
        }
        if config.seeds.is_empty() {
            return Err(cfg_err("seeds must be nonempty".into()));
        }
        let labels = &named.labels;
        let start_state = labels.state(&config.start_state).map_err(|e| cfg_err(format!("start_state: {e}")))?;
        let rewards = crate::adversary::make_rewards(&config.adversary, &named.dmdp, config.horizon, Some(labels))
            .map_err(|e| cfg_err(format!("adversary: {e}")))?;
        let algorithm = match &config.algorithm {
            AlgorithmSpec::MarcoPolo => Algorithm::MarcoPolo,
            AlgorithmSpec::Exp3Baseline => Algorithm::Exp3Baseline,
            AlgorithmSpec::CycleLearner { k, anchor } => Algorithm::CycleLearner {
                k: *k,
                anchor: labels.state(anchor).map_err(|e| cfg_err(format!("algorithm.anchor: {e}")))?,
            },
        };
        let tau = config.tau.unwrap_or_else(|| default_tau(config.horizon));
        if tau == 0 {
            return Err(cfg_err("tau must be positive".into()));
        }
        let d = analyze(&named.dmdp).uniform_d;
        Ok(Self { config, named, rewards, start_state, algorithm, tau, d })
    }

    pub fn dmdp(&self) -> &crate::dmdp::Dmdp {
        &self.named.dmdp
    }

    pub fn horizon(&self) -> usize {
        self.config.horizon
    }

    pub fn policy_cap(&self) -> u128 {
        self.config.max_enum.unwrap_or(DEFAULT_POLICY_CAP)
    }

    fn require_d(&self) -> Result<usize> {
        self.d.ok_or_else(|| Error::Config("no uniform path length exists on the closed set".into()))
    }

    fn cycle_learner_config(&self, k: usize, anchor: usize) -> Result<CycleLearnerConfig> {
        Ok(CycleLearnerConfig::new(k, anchor, 1, self.start_state, self.horizon(), self.require_d()?))
    }

    fn marco_polo_config(&self) -> MarcoPoloConfig {
        MarcoPoloConfig::new(self.config.max_cycle_len, self.horizon(), self.start_state).with_tau(self.tau)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BenchmarkKind {
    /// Best policy from the start state whose cycle is at most `L` long.
    BestPolicy,
    /// Best fixed cycle over the epochs the cycle learner actually plays.
    BestCycle,
    /// Best per-arm cycle, used when policy enumeration is over the cap.
    CycleDp,
}

/// The hindsight comparator, round by round.
#[derive(Debug, Clone, PartialEq)]
pub struct Benchmark {
    pub kind: BenchmarkKind,
    pub per_round: Vec<f64>,
    pub total: f64,
    pub note: Option<String>,
    pub description: String,
}

impl Benchmark {
    fn new(kind: BenchmarkKind, per_round: Vec<f64>, note: Option<String>, description: String) -> Self {
        let total = per_round.iter().sum();
        Self { kind, per_round, total, note, description }
    }
}

pub fn benchmark(exp: &Experiment) -> Result<Benchmark> {
    let m = exp.dmdp();
    let r = &exp.rewards;
    let t = exp.horizon();
    match exp.algorithm {
        Algorithm::CycleLearner { k, anchor } => {
            let cfg = exp.cycle_learner_config(k, anchor)?;
            let plan = lock_in_plan(&cfg, m)?;
            let start = 1 + plan.len().min(t);
            let epochs = (t - (start - 1)) / k;
            if epochs == 0 {
                return Err(Error::Config(format!("horizon {t} leaves no full epoch after lock-in")));
            }
            let opt = best_cycle_dp(m, r, k, anchor, start, epochs)?;
            let poly = FlowPolytope::new(m, k, anchor)?;
            let series = cycle_reward_series(&poly, &opt.cycle, start, epochs, r);
            Ok(Benchmark::new(
                BenchmarkKind::BestCycle,
                series,
                None,
                format!("cycle {:?} at state {anchor}, {epochs} epochs from round {start}", opt.cycle),
            ))
        }
        Algorithm::MarcoPolo | Algorithm::Exp3Baseline => {
            let l = exp.config.max_cycle_len;
            match best_policy_bruteforce(m, r, exp.start_state, l, exp.policy_cap()) {
                Ok(best) => {
                    let series = policy_reward_series(m, &best.policy, exp.start_state, r);
                    Ok(Benchmark::new(
                        BenchmarkKind::BestPolicy,
                        series,
                        None,
                        format!("policy {:?}, cycle length {}", best.policy.actions(), best.cycle_len),
                    ))
                }
                Err(Error::CapExceeded { .. }) => {
                    let report = hindsight_report(m, r, exp.start_state, l, exp.policy_cap(), true)?;
                    let best = report
                        .best_cycle_per_arm
                        .iter()
                        .reduce(|a, b| if b.reward > a.reward { b } else { a })
                        .ok_or_else(|| Error::Config("no feasible arm for the cycle-DP benchmark".into()))?;
                    let poly = FlowPolytope::new(m, best.k, best.anchor)?;
                    let series = cycle_reward_series(&poly, &best.cycle, 1, best.num_epochs, r);
                    Ok(Benchmark::new(
                        BenchmarkKind::CycleDp,
                        series,
                        Some(FALLBACK_NOTE.into()),
                        format!("cycle {:?} at state {}", best.cycle, best.anchor),
                    ))
                }
                Err(e) => Err(e),
            }
        }
    }
}

/// `{2^i} ∪ {T}`, ascending.
pub fn checkpoints(horizon: usize) -> Vec<usize> {
    let mut out: Vec<usize> = std::iter::successors(Some(1usize), |&t| t.checked_mul(2))
        .take_while(|&t| t <= horizon)
        .collect();
    if out.last() != Some(&horizon) && horizon > 0 {
        out.push(horizon);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Replicate {
    pub seed: u64,
    pub rows: Vec<CheckpointRow>,
    pub total_reward: f64,
    pub final_regret: f64,
    /// Arm index per episode; empty for algorithms without arms.
    pub arm_choices: Vec<usize>,
}

/// Plays the configured algorithm with `ChaCha8Rng::seed_from_u64(seed)`.
pub fn learner_rewards(exp: &Experiment, seed: u64) -> Result<(Vec<f64>, Vec<usize>)> {
    let m = exp.dmdp();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match exp.algorithm {
        Algorithm::CycleLearner { k, anchor } => {
            let cfg = exp.cycle_learner_config(k, anchor)?;
            let mut hedge = cycle_learner::build_hedge(&cfg, m)?;
            let res = cycle_learner::run(&cfg, m, &exp.rewards, &mut hedge, &mut rng)?;
            Ok((res.per_round_rewards, Vec::new()))
        }
        Algorithm::MarcoPolo => {
            let trace = marco_polo::run(&exp.marco_polo_config(), m, &exp.rewards, &mut rng, None)?;
            Ok((trace.per_round_rewards, trace.episodes.iter().map(|e| e.arm).collect()))
        }
        Algorithm::Exp3Baseline => {
            let na = m.num_actions();
            let mut exp3 = if na > 1 { Some(Exp3::new(na, exp.horizon())?) } else { None };
            let mut s = exp.start_state;
            let mut out = Vec::with_capacity(exp.horizon());
            for t in 1..=exp.horizon() {
                let a = exp3.as_mut().map_or(0, |e| e.select(&mut rng));
                let r = exp.rewards.reward(t, s, a);
                if let Some(e) = exp3.as_mut() {
                    e.update(a, r)?;
                }
                out.push(r);
                s = m.next(s, a);
            }
            Ok((out, Vec::new()))
        }
    }
}

pub fn checkpoint_rows(learner: &[f64], bench: &[f64]) -> Vec<CheckpointRow> {
    let horizon = learner.len().min(bench.len());
    let (mut cum, mut bcum) = (0.0, 0.0);
    let marks = checkpoints(horizon);
    let mut next = marks.iter().peekable();
    let mut rows = Vec::with_capacity(marks.len());
    for t in 1..=horizon {
        cum += learner[t - 1];
        bcum += bench[t - 1];
        if next.peek() == Some(&&t) {
            next.next();
            rows.push(CheckpointRow { round: t, cum_reward: cum, benchmark_cum: bcum, regret: bcum - cum });
        }
    }
    rows
}

pub fn run_replicate(exp: &Experiment, bench: &Benchmark, seed: u64) -> Result<Replicate> {
    let (learner, arm_choices) = learner_rewards(exp, seed)?;
    if learner.len() != exp.horizon() {
        return Err(Error::Internal(format!("learner played {} of {} rounds", learner.len(), exp.horizon())));
    }
    let rows = checkpoint_rows(&learner, &bench.per_round);
    let last = rows.last().copied().expect("horizon is positive");
    Ok(Replicate { seed, rows, total_reward: last.cum_reward, final_regret: last.regret, arm_choices })
}

/// Least-squares slope of `ln max(regret, 1)` on `ln t` over points with
/// `t >= FIT_FROM`. `None` with fewer than two such points.
pub fn fit_exponent(points: &[(usize, f64)]) -> Option<f64> {
    let xy: Vec<(f64, f64)> = points
        .iter()
        .filter(|(t, _)| *t >= FIT_FROM)
        .map(|&(t, r)| ((t as f64).ln(), r.max(1.0).ln()))
        .collect();
    if xy.len() < 2 {
        return None;
    }
    let n = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / n;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}

/// Checkpoint-wise mean regret across replicates.
pub fn mean_regret_curve(replicates: &[Replicate]) -> Vec<(usize, f64)> {
    let Some(first) = replicates.first() else { return Vec::new() };
    first
        .rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mean = replicates.iter().map(|r| r.rows[i].regret).sum::<f64>() / replicates.len() as f64;
            (row.round, mean)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegretStats {
    pub mean: f64,
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundValues {
    pub cycle_learner: Option<f64>,
    pub episodic_constant: Option<f64>,
    pub episodic: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedSummary {
    pub seed: u64,
    pub total_reward: f64,
    pub final_regret: f64,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub arm_counts: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub algorithm: Algorithm,
    pub horizon: usize,
    pub max_cycle_len: usize,
    pub num_states: usize,
    pub num_actions: usize,
    pub start_state: usize,
    pub tau: Option<usize>,
    pub num_arms: Option<usize>,
    pub d: Option<usize>,
    pub benchmark_kind: BenchmarkKind,
    pub benchmark_total: f64,
    pub benchmark_description: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    pub final_regret: RegretStats,
    pub exponent: Option<f64>,
    pub bounds: BoundValues,
    pub mean_regret: Vec<(usize, f64)>,
    pub seeds: Vec<SeedSummary>,
    pub config: ExperimentConfig,
}

pub fn summarize(exp: &Experiment, bench: &Benchmark, replicates: &[Replicate]) -> Result<Summary> {
    if replicates.is_empty() {
        return Err(Error::Config("no replicates to summarize".into()));
    }
    let m = exp.dmdp();
    let (n, na, l, t) = (m.num_states(), m.num_actions(), exp.config.max_cycle_len, exp.horizon());
    let finals: Vec<f64> = replicates.iter().map(|r| r.final_regret).collect();
    let curve = mean_regret_curve(replicates);
    let num_arms = match exp.algorithm {
        Algorithm::MarcoPolo => Some(build_arm_table(m, l)?.len()),
        _ => None,
    };
    let seeds = replicates
        .iter()
        .map(|r| SeedSummary {
            seed: r.seed,
            total_reward: r.total_reward,
            final_regret: r.final_regret,
            arm_counts: num_arms.map_or_else(Vec::new, |k| {
                let mut c = vec![0; k];
                r.arm_choices.iter().for_each(|&a| c[a] += 1);
                c
            }),
        })
        .collect();
    Ok(Summary {
        algorithm: exp.algorithm,
        horizon: t,
        max_cycle_len: l,
        num_states: n,
        num_actions: na,
        start_state: exp.start_state,
        tau: matches!(exp.algorithm, Algorithm::MarcoPolo).then_some(exp.tau),
        num_arms,
        d: exp.d,
        benchmark_kind: bench.kind,
        benchmark_total: bench.total,
        benchmark_description: bench.description.clone(),
        note: bench.note.clone(),
        final_regret: RegretStats {
            mean: finals.iter().sum::<f64>() / finals.len() as f64,
            min: finals.iter().copied().fold(f64::INFINITY, f64::min),
            max: finals.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        },
        exponent: fit_exponent(&curve),
        bounds: BoundValues {
            cycle_learner: exp.d.and_then(|d| cycle_learner_bound(l as f64, n as f64, na as f64, t as f64, d as f64).ok()),
            episodic_constant: episodic_constant(l, n, na).ok(),
            episodic: episodic_bound(l, n, na, t as f64).ok(),
        },
        mean_regret: curve,
        seeds,
        config: exp.config.clone(),
    })
}

pub fn csv_file_name(seed: u64) -> String {
    format!("seed-{seed}.csv")
}

pub const SUMMARY_FILE: &str = "summary.json";

/// Writes one CSV per replicate and `summary.json` into `dir`.
pub fn write_outputs(dir: &Path, replicates: &[Replicate], summary: &Summary) -> Result<Vec<PathBuf>> {
    let io_err = |p: &Path, e: std::io::Error| Error::Config(format!("cannot write {}: {e}", p.display()));
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let mut written = Vec::with_capacity(replicates.len() + 1);
    for r in replicates {
        let path = dir.join(csv_file_name(r.seed));
        let file = fs::File::create(&path).map_err(|e| io_err(&path, e))?;
        write_checkpoints(&r.rows, std::io::BufWriter::new(file))?;
        written.push(path);
    }
    let path = dir.join(SUMMARY_FILE);
    let json = serde_json::to_string_pretty(summary).map_err(|e| Error::Internal(e.to_string()))?;
    fs::write(&path, json + "\n").map_err(|e| io_err(&path, e))?;
    written.push(path);
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversary::{AdversarySpec, Ref};
    use crate::fixtures::{d2, ring4, B};
    use crate::io::DmdpSection;

    fn config(algorithm: AlgorithmSpec, horizon: usize) -> ExperimentConfig {
        ExperimentConfig {
            horizon,
            max_cycle_len: 2,
            tau: None,
            start_state: Ref::Index(1),
            seeds: vec![1, 2],
            output: None,
            max_enum: None,
            dmdp: DmdpSection::default(),
            adversary: AdversarySpec::Indicator { pairs: vec![(0.into(), B.into())] },
            algorithm,
        }
    }

    fn experiment(algorithm: AlgorithmSpec, horizon: usize) -> Experiment {
        Experiment::with_dmdp(config(algorithm, horizon), NamedDmdp::numbered(d2())).unwrap()
    }

    #[test]
    fn checkpoint_schedule() {
        assert_eq!(checkpoints(1), vec![1]);
        assert_eq!(checkpoints(8), vec![1, 2, 4, 8]);
        assert_eq!(checkpoints(10), vec![1, 2, 4, 8, 10]);
        assert!(checkpoints(0).is_empty());
        assert_eq!(checkpoints(100_000).len(), 18);
    }

    #[test]
    fn exponent_of_power_laws() {
        for p in [0.5, 0.75, 1.0] {
            let pts: Vec<_> = checkpoints(1 << 20).into_iter().map(|t| (t, (t as f64).powf(p) * 3.0)).collect();
            assert!((fit_exponent(&pts).unwrap() - p).abs() < 1e-12);
        }
        let flat: Vec<_> = checkpoints(4096).into_iter().map(|t| (t, -5.0)).collect();
        assert_eq!(fit_exponent(&flat), Some(0.0));
        assert_eq!(fit_exponent(&[(64, 2.0)]), None);
    }

    #[test]
    fn rows_recompute() {
        let learner = vec![0.5; 10];
        let bench = vec![1.0; 10];
        let rows = checkpoint_rows(&learner, &bench);
        assert_eq!(rows.iter().map(|r| r.round).collect::<Vec<_>>(), vec![1, 2, 4, 8, 10]);
        for r in &rows {
            assert_eq!(r.regret, r.benchmark_cum - r.cum_reward);
            assert_eq!(r.cum_reward, 0.5 * r.round as f64);
        }
    }

    #[test]
    fn benchmarks_per_algorithm() {
        let exp = experiment(AlgorithmSpec::MarcoPolo, 10);
        let b = benchmark(&exp).unwrap();
        assert_eq!(b.kind, BenchmarkKind::BestPolicy);
        // From state 1 one step is lost reaching the paying self-loop.
        assert_eq!(b.total, 9.0);

        let exp = experiment(AlgorithmSpec::CycleLearner { k: 2, anchor: 0.into() }, 11);
        let b = benchmark(&exp).unwrap();
        assert_eq!(b.kind, BenchmarkKind::BestCycle);
        assert_eq!(b.per_round.len(), 11);
        let plan = lock_in_plan(&exp.cycle_learner_config(2, 0).unwrap(), exp.dmdp()).unwrap();
        assert_eq!(b.total, (2 * ((11 - plan.len()) / 2)) as f64);

        let mut cfg = config(AlgorithmSpec::Exp3Baseline, 10);
        cfg.max_enum = Some(2);
        let exp = Experiment::with_dmdp(cfg, NamedDmdp::numbered(d2())).unwrap();
        let b = benchmark(&exp).unwrap();
        assert_eq!(b.kind, BenchmarkKind::CycleDp);
        assert_eq!(b.note.as_deref(), Some(FALLBACK_NOTE));
        assert_eq!(b.total, 10.0);
    }

    #[test]
    fn config_errors_are_reported() {
        let mut cfg = config(AlgorithmSpec::MarcoPolo, 10);
        cfg.start_state = Ref::Index(7);
        assert!(matches!(Experiment::with_dmdp(cfg, NamedDmdp::numbered(d2())), Err(Error::Config(_))));
        let mut cfg = config(AlgorithmSpec::MarcoPolo, 10);
        cfg.adversary = AdversarySpec::Indicator { pairs: vec![("nowhere".into(), 0.into())] };
        assert!(matches!(Experiment::with_dmdp(cfg, NamedDmdp::numbered(d2())), Err(Error::Config(_))));
        let mut cfg = config(AlgorithmSpec::CycleLearner { k: 1, anchor: 0.into() }, 10);
        cfg.adversary = AdversarySpec::Constant { value: 0.5 };
        let swap = crate::fixtures::dswap();
        let exp = Experiment::with_dmdp(cfg, NamedDmdp::numbered(swap)).unwrap();
        assert!(benchmark(&exp).is_err());
    }

    #[test]
    fn replicates_are_deterministic_and_consistent() {
        for algo in [
            AlgorithmSpec::MarcoPolo,
            AlgorithmSpec::Exp3Baseline,
            AlgorithmSpec::CycleLearner { k: 2, anchor: 0.into() },
        ] {
            let exp = experiment(algo, 3000);
            let b = benchmark(&exp).unwrap();
            let r1 = run_replicate(&exp, &b, 5).unwrap();
            let r2 = run_replicate(&exp, &b, 5).unwrap();
            assert_eq!(r1, r2);
            assert_eq!(r1.rows.last().unwrap().round, 3000);
            let mut prev = 0.0;
            for row in &r1.rows {
                assert!(row.cum_reward >= prev && row.cum_reward <= row.round as f64);
                assert_eq!(row.regret, row.benchmark_cum - row.cum_reward);
                prev = row.cum_reward;
            }
        }
    }

    #[test]
    fn summary_fields() {
        let exp = Experiment::with_dmdp(
            ExperimentConfig { max_cycle_len: 3, ..config(AlgorithmSpec::MarcoPolo, 2000) },
            NamedDmdp::numbered(ring4()),
        )
        .unwrap();
        let b = benchmark(&exp).unwrap();
        let reps: Vec<_> = [1, 2, 3].iter().map(|&s| run_replicate(&exp, &b, s).unwrap()).collect();
        let s = summarize(&exp, &b, &reps).unwrap();
        assert_eq!(s.tau, Some(44));
        assert_eq!(s.bounds.episodic_constant, episodic_constant(3, 4, 2).ok());
        assert_eq!(s.bounds.cycle_learner, cycle_learner_bound(3.0, 4.0, 2.0, 2000.0, exp.d.unwrap() as f64).ok());
        assert!(s.final_regret.min <= s.final_regret.mean && s.final_regret.mean <= s.final_regret.max);
        let counts: usize = s.seeds[0].arm_counts.iter().sum();
        assert_eq!(counts, 2000 / 44);
        let dir = std::env::temp_dir().join(format!("marcopolo-summary-{}", std::process::id()));
        let files = write_outputs(&dir, &reps, &s).unwrap();
        assert_eq!(files.len(), 4);
        let back: Summary = serde_json::from_str(&fs::read_to_string(dir.join(SUMMARY_FILE)).unwrap()).unwrap();
        assert_eq!(back.seeds, s.seeds);
        fs::remove_dir_all(dir).unwrap();
    }
}
