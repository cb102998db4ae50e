//! Learning over cycles of a fixed length through a fixed anchor state.
//!
//! The learner first walks to the anchor so that it arrives exactly when a
//! new cycle phase begins (the lock-in), then repeats epochs of `k` rounds:
//! ask the hedge for a point, decompose it, sample a cycle, play it blindly
//! and report the epoch's total reward. Global round `t` has phase
//! `(t - 1) mod k + 1`, so every epoch starts on a round `≡ 1 (mod k)`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bandit::VertexHedge;
use crate::dmdp::Dmdp;
use crate::error::{input, Error, Result};
use crate::graph::fixed_length_path;
use crate::polytope::{FlowPolytope, DEFAULT_CYCLE_CAP};
use crate::rewards::RewardSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleLearnerConfig {
    /// Cycle length `k`.
    pub k: usize,
    /// Anchor state `s̄`.
    pub anchor: usize,
    /// Global round `t₁` of the first action.
    pub start_round: usize,
    /// State `s₁` occupied at `t₁`.
    pub start_state: usize,
    /// Number of rounds available.
    pub budget: usize,
    /// Uniform path length `d` of the closed set.
    pub d: usize,
    pub cycle_cap: usize,
}

impl CycleLearnerConfig {
    pub fn new(k: usize, anchor: usize, start_round: usize, start_state: usize, budget: usize, d: usize) -> Self {
        Self { k, anchor, start_round, start_state, budget, d, cycle_cap: DEFAULT_CYCLE_CAP }
    }

    fn validate(&self, m: &Dmdp) -> Result<()> {
        m.check_state(self.anchor)?;
        m.check_state(self.start_state)?;
        if self.k == 0 {
            return Err(input("cycle length must be at least 1"));
        }
        if self.start_round == 0 {
            return Err(input("rounds are 1-indexed"));
        }
        if self.budget == 0 {
            return Err(input("round budget must be positive"));
        }
        Ok(())
    }
}

/// `(k′, k″)` for a walk of `d` rounds starting at global round `t₁`.
pub fn lock_in_phases(start_round: usize, d: usize, k: usize) -> (usize, usize) {
    let k1 = (start_round + d - 1) % k + 1;
    (k1, (k - k1 + 1) % k)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LockInPlan {
    /// Lexicographically smallest cycle in `C_{k,s̄}`.
    pub reference_cycle: Vec<usize>,
    pub k_prime: usize,
    pub k_double_prime: usize,
    /// Walk to the reference cycle's state at phase `k′`. Usually of length
    /// `d`; longer when no length-`d` walk exists from the start state.
    pub path: Vec<usize>,
    /// `c_{k′}, ..., c_k`, ending at the anchor.
    pub padding: Vec<usize>,
    /// False when no walk reaches the anchor on a round `≡ 1 (mod k)`; the
    /// plan is then the shortest walk to the anchor and epochs start off-phase.
    pub aligned: bool,
}

impl LockInPlan {
    pub fn len(&self) -> usize {
        self.path.len() + self.padding.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn actions(&self) -> impl Iterator<Item = usize> + '_ {
        self.path.iter().chain(&self.padding).copied()
    }
}

/// Lowest-action-first DFS for the first cycle of `C_{k,s̄}`.
pub fn canonical_cycle(m: &Dmdp, k: usize, anchor: usize) -> Result<Option<Vec<usize>>> {
    m.check_state(anchor)?;
    if k == 0 {
        return Err(input("cycle length must be at least 1"));
    }
    match fixed_length_path(m, anchor, anchor, k) {
        Ok(c) => Ok(Some(c)),
        Err(Error::NoPath { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn lock_in_plan(cfg: &CycleLearnerConfig, m: &Dmdp) -> Result<LockInPlan> {
    cfg.validate(m)?;
    let k = cfg.k;
    let reference = canonical_cycle(m, k, cfg.anchor)?.ok_or_else(|| {
        input(format!("no cycles of length {k} through state {}", cfg.anchor))
    })?;
    let poly = FlowPolytope::new(m, k, cfg.anchor)?;
    let states = poly.cycle_states(&reference);
    let longest = cfg.d + m.num_states() * (k + 1);
    for len in cfg.d..=longest {
        let (k1, k2) = lock_in_phases(cfg.start_round, len, k);
        match fixed_length_path(m, cfg.start_state, states[k1 - 1], len) {
            Ok(path) => {
                let padding = if k2 == 0 { Vec::new() } else { reference[k1 - 1..].to_vec() };
                return Ok(LockInPlan {
                    reference_cycle: reference,
                    k_prime: k1,
                    k_double_prime: k2,
                    path,
                    padding,
                    aligned: true,
                });
            }
            Err(Error::NoPath { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    for len in 0..m.num_states() {
        if let Ok(path) = fixed_length_path(m, cfg.start_state, cfg.anchor, len) {
            let (k1, k2) = lock_in_phases(cfg.start_round, len, k);
            return Ok(LockInPlan {
                reference_cycle: reference,
                k_prime: k1,
                k_double_prime: k2,
                path,
                padding: Vec::new(),
                aligned: false,
            });
        }
    }
    Err(Error::Config(format!(
        "state {} cannot reach the anchor {}",
        cfg.start_state, cfg.anchor
    )))
}

/// Vertex hedge tuned for this configuration: horizon `⌊budget/k⌋`, scale `U = k`.
pub fn build_hedge(cfg: &CycleLearnerConfig, m: &Dmdp) -> Result<VertexHedge> {
    cfg.validate(m)?;
    let poly = FlowPolytope::new(m, cfg.k, cfg.anchor)?;
    VertexHedge::new(poly, (cfg.budget / cfg.k).max(1), cfg.k as f64, cfg.cycle_cap)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpochRecord {
    pub start_round: usize,
    pub start_state: usize,
    pub cycle: Vec<usize>,
    /// Reward collected over the rounds actually played.
    pub reward: f64,
    /// False for a final epoch cut short by the budget.
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleLearnerResult {
    pub total_reward: f64,
    pub final_state: usize,
    pub per_round_rewards: Vec<f64>,
    pub actions: Vec<usize>,
    pub lock_in: LockInPlan,
    /// Rounds spent on the lock-in (at most `lock_in.len()`).
    pub lock_in_rounds: usize,
    pub epochs: Vec<EpochRecord>,
}

impl CycleLearnerResult {
    pub fn rounds(&self) -> usize {
        self.per_round_rewards.len()
    }

    /// Epochs that ran to completion and were fed back.
    pub fn epochs_played(&self) -> usize {
        self.epochs.iter().filter(|e| e.complete).count()
    }
}

struct Walker<'a> {
    m: &'a Dmdp,
    rewards: &'a RewardSequence,
    round: usize,
    last_round: usize,
    state: usize,
    per_round: Vec<f64>,
    actions: Vec<usize>,
}

impl Walker<'_> {
    fn exhausted(&self) -> bool {
        self.round > self.last_round
    }

    fn play(&mut self, a: usize) -> f64 {
        let r = self.rewards.reward(self.round, self.state, a);
        self.per_round.push(r);
        self.actions.push(a);
        self.state = self.m.next(self.state, a);
        self.round += 1;
        r
    }
}

/// Lock-in followed by hedge-driven epochs until the budget runs out.
pub fn run<R: Rng + ?Sized>(
    cfg: &CycleLearnerConfig,
    m: &Dmdp,
    rewards: &RewardSequence,
    hedge: &mut VertexHedge,
    rng: &mut R,
) -> Result<CycleLearnerResult> {
    rewards.check_dims(m)?;
    let plan = lock_in_plan(cfg, m)?;
    if hedge.polytope().k() != cfg.k || hedge.polytope().anchor() != cfg.anchor {
        return Err(input("hedge was built for a different cycle length or anchor"));
    }
    let last_round = cfg.start_round + cfg.budget - 1;
    if last_round > rewards.horizon() {
        return Err(input(format!(
            "rounds {}..={last_round} exceed the reward horizon {}",
            cfg.start_round,
            rewards.horizon()
        )));
    }
    let mut w = Walker {
        m,
        rewards,
        round: cfg.start_round,
        last_round,
        state: cfg.start_state,
        per_round: Vec::with_capacity(cfg.budget),
        actions: Vec::with_capacity(cfg.budget),
    };

    for a in plan.actions() {
        if w.exhausted() {
            break;
        }
        w.play(a);
    }
    let lock_in_rounds = w.per_round.len();

    let mut epochs = Vec::new();
    while !w.exhausted() {
        debug_assert_eq!(w.state, cfg.anchor);
        let dist = hedge.sampling_distribution()?;
        let cycle = dist.sample(rng).to_vec();
        let start_round = w.round;
        let mut reward = 0.0;
        let mut played = 0;
        for &a in &cycle {
            if w.exhausted() {
                break;
            }
            reward += w.play(a);
            played += 1;
        }
        let complete = played == cfg.k;
        if complete {
            hedge.feedback(&dist, &cycle, reward)?;
        }
        epochs.push(EpochRecord { start_round, start_state: cfg.anchor, cycle, reward, complete });
    }

    Ok(CycleLearnerResult {
        total_reward: w.per_round.iter().sum(),
        final_state: w.state,
        per_round_rewards: w.per_round,
        actions: w.actions,
        lock_in: plan,
        lock_in_rounds,
        epochs,
    })
}
