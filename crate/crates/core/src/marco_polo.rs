//! The episodic algorithm: EXP3 over `(k, s)` arms, one fresh cycle learner
//! per episode of `τ` rounds.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bandit::Exp3;
use crate::cycle_learner::{self, canonical_cycle, CycleLearnerConfig};
use crate::dmdp::Dmdp;
use crate::error::{input, Error, Result};
use crate::graph::{closed_communicating_set, minimal_uniform_path_length};
use crate::polytope::DEFAULT_CYCLE_CAP;
use crate::rewards::RewardSequence;

/// `max(1, ⌊√T⌋)`.
pub fn default_tau(horizon: usize) -> usize {
    horizon.isqrt().max(1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarcoPoloConfig {
    /// Longest cycle length `L` considered.
    pub max_cycle_len: usize,
    pub horizon: usize,
    /// Episode length `τ`.
    pub tau: usize,
    pub start_state: usize,
    pub cycle_cap: usize,
}

impl MarcoPoloConfig {
    pub fn new(max_cycle_len: usize, horizon: usize, start_state: usize) -> Self {
        Self {
            max_cycle_len,
            horizon,
            tau: default_tau(horizon),
            start_state,
            cycle_cap: DEFAULT_CYCLE_CAP,
        }
    }

    pub fn with_tau(self, tau: usize) -> Self {
        Self { tau, ..self }
    }

    pub fn num_episodes(&self) -> usize {
        self.horizon / self.tau
    }

    fn validate(&self, m: &Dmdp) -> Result<()> {
        m.check_state(self.start_state)?;
        if self.max_cycle_len == 0 {
            return Err(input("maximum cycle length must be at least 1"));
        }
        if self.horizon == 0 {
            return Err(input("horizon must be positive"));
        }
        if !(1..=self.horizon).contains(&self.tau) {
            return Err(input(format!("episode length {} outside 1..={}", self.tau, self.horizon)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Arm {
    pub k: usize,
    pub state: usize,
}

/// Feasible arms in lexicographic `(k, s)` order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArmTable {
    arms: Vec<Arm>,
}

impl ArmTable {
    pub fn len(&self) -> usize {
        self.arms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arms.is_empty()
    }

    pub fn get(&self, i: usize) -> Arm {
        self.arms[i]
    }

    pub fn position(&self, arm: Arm) -> Option<usize> {
        self.arms.binary_search(&arm).ok()
    }

    pub fn arms(&self) -> &[Arm] {
        &self.arms
    }
}

/// Every `(k, s)` with `k ≤ L`, `s` in the closed set and `C_{k,s} ≠ ∅`.
pub fn build_arm_table(m: &Dmdp, max_cycle_len: usize) -> Result<ArmTable> {
    let closed = closed_communicating_set(m)?;
    let mut arms = Vec::new();
    for k in 1..=max_cycle_len {
        for &state in &closed.closed {
            if canonical_cycle(m, k, state)?.is_some() {
                arms.push(Arm { k, state });
            }
        }
    }
    if arms.is_empty() {
        return Err(Error::Config(format!("no cycles of length <= {max_cycle_len} in the closed set")));
    }
    Ok(ArmTable { arms })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpisodeRecord {
    pub arm: usize,
    pub start_round: usize,
    pub start_state: usize,
    pub reward: f64,
    pub epochs: usize,
    pub aligned: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarcoPoloTrace {
    pub arms: ArmTable,
    pub tau: usize,
    pub d: usize,
    pub per_round_rewards: Vec<f64>,
    pub episodes: Vec<EpisodeRecord>,
    pub final_state: usize,
    /// Counterfactual episode rewards `[episode][arm]`, when requested.
    pub shadow_rewards: Option<Vec<Vec<f64>>>,
}

impl MarcoPoloTrace {
    pub fn total_reward(&self) -> f64 {
        self.per_round_rewards.iter().sum()
    }
}

/// Runs the episodic learner over the whole horizon.
///
/// With `shadow_seed` set, every episode additionally runs one independent
/// cycle learner per arm from the same state, using its own random stream,
/// and records what each arm would have earned. The main trajectory does
/// not depend on whether shadows are run.
pub fn run<R: Rng>(
    cfg: &MarcoPoloConfig,
    m: &Dmdp,
    rewards: &RewardSequence,
    rng: &mut R,
    shadow_seed: Option<u64>,
) -> Result<MarcoPoloTrace> {
    cfg.validate(m)?;
    rewards.check_dims(m)?;
    if rewards.horizon() < cfg.horizon {
        return Err(input(format!(
            "reward horizon {} is shorter than {}",
            rewards.horizon(),
            cfg.horizon
        )));
    }
    let closed = closed_communicating_set(m)?;
    let d = minimal_uniform_path_length(m, &closed.closed)?.ok_or_else(|| {
        Error::Config("no uniform path length exists on the closed set".into())
    })?;
    let arms = build_arm_table(m, cfg.max_cycle_len)?;
    let episodes = cfg.num_episodes();
    let mut exp3 = if arms.len() > 1 { Some(Exp3::new(arms.len(), episodes.max(1))?) } else { None };
    let mut shadow_rng = shadow_seed.map(ChaCha8Rng::seed_from_u64);
    let mut shadows = shadow_seed.map(|_| Vec::with_capacity(episodes));

    let mut per_round = Vec::with_capacity(cfg.horizon);
    let mut records = Vec::with_capacity(episodes);
    let mut state = cfg.start_state;
    let mut last_arm = 0;
    for j in 0..episodes {
        let arm_index = match exp3.as_mut() {
            Some(e) => e.select(rng),
            None => 0,
        };
        let start_round = j * cfg.tau + 1;
        let learner = |arm: Arm, rng: &mut dyn rand::RngCore| {
            let lc = CycleLearnerConfig {
                cycle_cap: cfg.cycle_cap,
                ..CycleLearnerConfig::new(arm.k, arm.state, start_round, state, cfg.tau, d)
            };
            let mut hedge = cycle_learner::build_hedge(&lc, m)?;
            cycle_learner::run(&lc, m, rewards, &mut hedge, rng)
        };
        let result = learner(arms.get(arm_index), rng)?;
        if let (Some(rows), Some(srng)) = (shadows.as_mut(), shadow_rng.as_mut()) {
            let row = arms
                .arms()
                .iter()
                .map(|&arm| learner(arm, srng).map(|r| r.total_reward))
                .collect::<Result<Vec<f64>>>()?;
            rows.push(row);
        }
        if let Some(e) = exp3.as_mut() {
            e.update(arm_index, (result.total_reward / cfg.tau as f64).min(1.0))?;
        }
        records.push(EpisodeRecord {
            arm: arm_index,
            start_round,
            start_state: state,
            reward: result.total_reward,
            epochs: result.epochs_played(),
            aligned: result.lock_in.aligned,
        });
        per_round.extend_from_slice(&result.per_round_rewards);
        state = result.final_state;
        last_arm = arm_index;
    }

    let arm = arms.get(last_arm);
    let replay = canonical_cycle(m, arm.k, arm.state)?.expect("arms have cycles");
    for (t, &a) in (per_round.len() + 1..=cfg.horizon).zip(replay.iter().cycle()) {
        per_round.push(rewards.reward(t, state, a));
        state = m.next(state, a);
    }

    Ok(MarcoPoloTrace {
        arms,
        tau: cfg.tau,
        d,
        per_round_rewards: per_round,
        episodes: records,
        final_state: state,
        shadow_rewards: shadows,
    })
}
