//! Exact best-in-hindsight benchmarks and regret.

use serde::{Deserialize, Serialize};

use crate::dmdp::{Dmdp, Policy};
use crate::error::{input, Error, Result};
use crate::graph::closed_communicating_set;
use crate::polytope::FlowPolytope;
use crate::rewards::RewardSequence;

/// Default limit on the number of policies simulated by brute force.
pub const DEFAULT_POLICY_CAP: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleOptimum {
    pub k: usize,
    pub anchor: usize,
    pub start_round: usize,
    pub num_epochs: usize,
    pub cycle: Vec<usize>,
    pub reward: f64,
}

/// Best cycle of `C_{k,s̄}` replayed for `num_epochs` epochs from round `t₀`.
///
/// Rewards are first aggregated per triplet over the epochs, then a backward
/// DP over the `k` layers finds the heaviest closed walk. The walk is read
/// forward taking the lowest action that attains the optimum, which yields
/// the lexicographically smallest optimal cycle. The reported reward is
/// re-summed epoch by epoch in playing order.
pub fn best_cycle_dp(
    m: &Dmdp,
    rewards: &RewardSequence,
    k: usize,
    anchor: usize,
    start_round: usize,
    num_epochs: usize,
) -> Result<CycleOptimum> {
    rewards.check_dims(m)?;
    let poly = FlowPolytope::new(m, k, anchor)?;
    if start_round == 0 || start_round + num_epochs * k > rewards.horizon() + 1 {
        return Err(input(format!(
            "{num_epochs} epochs of length {k} from round {start_round} exceed horizon {}",
            rewards.horizon()
        )));
    }
    let (n, na) = (m.num_states(), m.num_actions());
    let index = poly.index();
    let mut weight = vec![0.0; index.dim()];
    for j in 0..num_epochs {
        for i in 1..=k {
            let t = start_round + j * k + i - 1;
            for (s, a) in m.pairs() {
                weight[index.flat(s, a, i)] += rewards.reward(t, s, a);
            }
        }
    }

    // value[i][s]: best weight collectable from state s at phase i+1 onward.
    let mut value = vec![vec![f64::NEG_INFINITY; n]; k + 1];
    value[k][anchor] = 0.0;
    for i in (0..k).rev() {
        for s in 0..n {
            value[i][s] = (0..na)
                .map(|a| weight[index.flat(s, a, i + 1)] + value[i + 1][m.next(s, a)])
                .fold(f64::NEG_INFINITY, f64::max);
        }
    }
    if value[0][anchor] == f64::NEG_INFINITY {
        return Err(input(format!("no cycles of length {k} through state {anchor}")));
    }
    let mut cycle = Vec::with_capacity(k);
    let mut s = anchor;
    for i in 0..k {
        let a = (0..na)
            .find(|&a| weight[index.flat(s, a, i + 1)] + value[i + 1][m.next(s, a)] == value[i][s])
            .expect("optimum is attained");
        cycle.push(a);
        s = m.next(s, a);
    }
    let reward = (0..num_epochs).map(|j| poly.cycle_reward(rewards, start_round + j * k, &cycle)).sum();
    Ok(CycleOptimum { k, anchor, start_round, num_epochs, cycle, reward })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolicyOptimum {
    pub policy: Policy,
    pub reward: f64,
    pub cycle_len: usize,
}

/// Number of deterministic stationary policies, `A^N`, saturating.
pub fn policy_count(m: &Dmdp) -> u128 {
    (0..m.num_states()).fold(1u128, |acc, _| acc.saturating_mul(m.num_actions() as u128))
}

/// Simulates every policy whose lasso from `s₁` closes a cycle of length at
/// most `L` and returns the best. Ties go to the lowest policy index.
pub fn best_policy_bruteforce(
    m: &Dmdp,
    rewards: &RewardSequence,
    start_state: usize,
    max_cycle_len: usize,
    cap: u128,
) -> Result<PolicyOptimum> {
    rewards.check_dims(m)?;
    m.check_state(start_state)?;
    let count = policy_count(m);
    if count > cap {
        return Err(Error::CapExceeded {
            what: "policy enumeration (use the cycle DP benchmark instead)".into(),
            needed: count,
            cap,
        });
    }
    let mut best: Option<PolicyOptimum> = None;
    for index in 0..count {
        let policy = Policy::from_index(m, index);
        let shape = m.classify_policy_cycle(&policy, start_state)?;
        if shape.cycle_len > max_cycle_len {
            continue;
        }
        let reward = policy_reward_series(m, &policy, start_state, rewards).iter().sum();
        if best.as_ref().is_none_or(|b| reward > b.reward) {
            best = Some(PolicyOptimum { policy, reward, cycle_len: shape.cycle_len });
        }
    }
    best.ok_or_else(|| {
        Error::Config(format!("no policy from state {start_state} has a cycle of length <= {max_cycle_len}"))
    })
}

/// Per-round rewards of `policy` played from `start` at round 1.
pub fn policy_reward_series(m: &Dmdp, policy: &Policy, start: usize, rewards: &RewardSequence) -> Vec<f64> {
    let mut s = start;
    (1..=rewards.horizon())
        .map(|t| {
            let a = policy.action(s);
            let r = rewards.reward(t, s, a);
            s = m.next(s, a);
            r
        })
        .collect()
}

/// Per-round rewards of `cycle` replayed from the anchor for `num_epochs`
/// epochs starting at `start_round`; zero outside those rounds.
pub fn cycle_reward_series(
    poly: &FlowPolytope,
    cycle: &[usize],
    start_round: usize,
    num_epochs: usize,
    rewards: &RewardSequence,
) -> Vec<f64> {
    let mut out = vec![0.0; rewards.horizon()];
    let states = poly.cycle_states(cycle);
    for j in 0..num_epochs {
        for (i, (&s, &a)) in states.iter().zip(cycle).enumerate() {
            let t = start_round + j * cycle.len() + i;
            out[t - 1] = rewards.reward(t, s, a);
        }
    }
    out
}

/// `benchmark − Σ learner`, not clamped.
pub fn regret(learner_rewards: &[f64], benchmark_reward: f64) -> f64 {
    benchmark_reward - learner_rewards.iter().sum::<f64>()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HindsightReport {
    pub best_policy: Option<Policy>,
    pub best_policy_reward: Option<f64>,
    /// Best cycle for every feasible `(k, s)` arm, epochs aligned to round 1.
    pub best_cycle_per_arm: Vec<CycleOptimum>,
    pub note: Option<String>,
}

/// Brute-force policy optimum plus per-arm cycle optima. When the policy
/// count exceeds `cap`, fails unless `fallback` is set, in which case only
/// the cycle benchmarks are reported.
pub fn hindsight_report(
    m: &Dmdp,
    rewards: &RewardSequence,
    start_state: usize,
    max_cycle_len: usize,
    cap: u128,
    fallback: bool,
) -> Result<HindsightReport> {
    let closed = closed_communicating_set(m)?;
    let mut arms = Vec::new();
    for k in 1..=max_cycle_len {
        let epochs = rewards.horizon() / k;
        if epochs == 0 {
            continue;
        }
        for &s in &closed.closed {
            match best_cycle_dp(m, rewards, k, s, 1, epochs) {
                Ok(opt) => arms.push(opt),
                Err(Error::Input(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    match best_policy_bruteforce(m, rewards, start_state, max_cycle_len, cap) {
        Ok(best) => Ok(HindsightReport {
            best_policy: Some(best.policy),
            best_policy_reward: Some(best.reward),
            best_cycle_per_arm: arms,
            note: None,
        }),
        Err(Error::CapExceeded { .. }) if fallback => Ok(HindsightReport {
            best_policy: None,
            best_policy_reward: None,
            best_cycle_per_arm: arms,
            note: Some("benchmark: cycle-DP only".into()),
        }),
        Err(e) => Err(e),
    }
}
