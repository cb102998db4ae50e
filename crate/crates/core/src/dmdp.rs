//! Deterministic MDP skeleton: states, actions, the transition table, and
//! policies evaluated against a reward sequence.
//!
//! States and actions are dense indices `0..N` and `0..A`. Rounds are
//! 1-indexed throughout the crate.

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::rewards::RewardSequence;

/// A deterministic MDP `(S, A, f)` with a total transition table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dmdp {
    num_states: usize,
    num_actions: usize,
    /// Row-major `next[s * A + a]`.
    next: Vec<usize>,
}

impl Dmdp {
    /// Builds a DMDP from a row-major transition table `next[s * A + a]`.
    pub fn new(num_states: usize, num_actions: usize, next: Vec<usize>) -> Result<Self> {
        if num_states == 0 || num_actions == 0 {
            return Err(input("a DMDP needs at least one state and one action"));
        }
        if next.len() != num_states * num_actions {
            return Err(input(format!(
                "transition table has {} entries, expected {}",
                next.len(),
                num_states * num_actions
            )));
        }
        if let Some(pos) = next.iter().position(|&t| t >= num_states) {
            return Err(input(format!(
                "transition ({}, {}) targets state {} outside 0..{}",
                pos / num_actions,
                pos % num_actions,
                next[pos],
                num_states
            )));
        }
        Ok(Self { num_states, num_actions, next })
    }

    pub fn from_fn(
        num_states: usize,
        num_actions: usize,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let next = (0..num_states)
            .flat_map(|s| (0..num_actions).map(move |a| (s, a)))
            .map(|(s, a)| f(s, a))
            .collect();
        Self::new(num_states, num_actions, next)
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn num_actions(&self) -> usize {
        self.num_actions
    }

    /// The raw row-major transition table.
    pub fn table(&self) -> &[usize] {
        &self.next
    }

    /// Unchecked transition lookup for hot loops. Panics on out-of-range input.
    #[inline]
    pub fn next(&self, s: usize, a: usize) -> usize {
        debug_assert!(s < self.num_states && a < self.num_actions);
        self.next[s * self.num_actions + a]
    }

    pub fn check_state(&self, s: usize) -> Result<()> {
        if s < self.num_states {
            Ok(())
        } else {
            Err(input(format!("state {s} outside 0..{}", self.num_states)))
        }
    }

    pub fn check_action(&self, a: usize) -> Result<()> {
        if a < self.num_actions {
            Ok(())
        } else {
            Err(input(format!("action {a} outside 0..{}", self.num_actions)))
        }
    }

    /// `f(s, a)`.
    pub fn step(&self, s: usize, a: usize) -> Result<usize> {
        self.check_state(s)?;
        self.check_action(a)?;
        Ok(self.next(s, a))
    }

    /// The extended transition `f(s, (a_1, ..., a_k))`.
    pub fn run_actions(&self, s: usize, actions: &[usize]) -> Result<usize> {
        self.check_state(s)?;
        actions.iter().try_fold(s, |state, &a| {
            self.check_action(a)?;
            Ok(self.next(state, a))
        })
    }

    /// The preimage `I(s) = {(s', a') : f(s', a') = s}`, in index order.
    pub fn predecessors(&self, s: usize) -> Result<Vec<(usize, usize)>> {
        self.check_state(s)?;
        Ok(self.pairs().filter(|&(p, a)| self.next(p, a) == s).collect())
    }

    /// All `(state, action)` pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.num_states).flat_map(move |s| (0..self.num_actions).map(move |a| (s, a)))
    }

    /// Follows `policy` from `start` until a state repeats and reports the
    /// shape of the resulting lasso.
    pub fn classify_policy_cycle(&self, policy: &Policy, start: usize) -> Result<PolicyCycle> {
        self.check_state(start)?;
        policy.check(self)?;
        let mut first_visit = vec![usize::MAX; self.num_states];
        let mut path = Vec::with_capacity(self.num_states + 1);
        let mut s = start;
        loop {
            if first_visit[s] != usize::MAX {
                let prefix = first_visit[s];
                let cycle = &path[prefix..];
                let len = cycle.len();
                let origin = cycle[(len - prefix % len) % len];
                return Ok(PolicyCycle {
                    cycle_len: len,
                    entry_round: prefix,
                    entry_state: s,
                    phase_origin: origin,
                });
            }
            first_visit[s] = path.len();
            path.push(s);
            s = self.next(s, policy.action(s));
        }
    }

    /// Plays `policy` from `start` for every round of `rewards`.
    pub fn simulate_policy(
        &self,
        policy: &Policy,
        start: usize,
        rewards: &RewardSequence,
    ) -> Result<(Trajectory, f64)> {
        self.check_state(start)?;
        policy.check(self)?;
        rewards.check_dims(self)?;
        let mut steps = Vec::with_capacity(rewards.horizon());
        let mut total = 0.0;
        let mut s = start;
        for round in 1..=rewards.horizon() {
            let a = policy.action(s);
            let next = self.next(s, a);
            let reward = rewards.reward(round, s, a);
            total += reward;
            steps.push(Step { round, state: s, action: a, next_state: next, reward });
            s = next;
        }
        Ok((Trajectory { start_state: start, steps }, total))
    }
}

/// A deterministic stationary policy `π : S → A`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Policy(Vec<usize>);

impl Policy {
    pub fn new(m: &Dmdp, actions: Vec<usize>) -> Result<Self> {
        let p = Self(actions);
        p.check(m)?;
        Ok(p)
    }

    /// Decodes a mixed-radix policy index (state 0 most significant).
    pub fn from_index(m: &Dmdp, mut index: u128) -> Self {
        let a = m.num_actions() as u128;
        let mut actions = vec![0; m.num_states()];
        for slot in actions.iter_mut().rev() {
            *slot = (index % a) as usize;
            index /= a;
        }
        Self(actions)
    }

    #[inline]
    pub fn action(&self, s: usize) -> usize {
        self.0[s]
    }

    pub fn actions(&self) -> &[usize] {
        &self.0
    }

    fn check(&self, m: &Dmdp) -> Result<()> {
        if self.0.len() != m.num_states() {
            return Err(input(format!(
                "policy covers {} states, DMDP has {}",
                self.0.len(),
                m.num_states()
            )));
        }
        self.0.iter().try_for_each(|&a| m.check_action(a))
    }
}

/// The lasso traced by a policy: `entry_round` non-repeating rounds, then a
/// cycle of `cycle_len` states entered at `entry_state`.
///
/// `phase_origin` is the cycle state `entry_round` positions behind
/// `entry_state`, so the cycle started there at round 1 coincides with the
/// policy from round `entry_round + 1` on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolicyCycle {
    pub cycle_len: usize,
    pub entry_round: usize,
    pub entry_state: usize,
    pub phase_origin: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Step {
    pub round: usize,
    pub state: usize,
    pub action: usize,
    pub next_state: usize,
    pub reward: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub start_state: usize,
    pub steps: Vec<Step>,
}

impl Trajectory {
    pub fn total_reward(&self) -> f64 {
        self.steps.iter().map(|s| s.reward).sum()
    }
}
