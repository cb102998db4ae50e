//! Reward sequences `r_1, ..., r_T` with `r_t : S × A → [0, 1]`.

use std::fmt;
use std::sync::Arc;

use crate::dmdp::Dmdp;
use crate::error::{input, Result};

/// A closed-form reward source. `round` is 1-indexed.
pub trait RewardFn: Send + Sync {
    fn value(&self, round: usize, state: usize, action: usize) -> f64;
}

impl<F> RewardFn for F
where
    F: Fn(usize, usize, usize) -> f64 + Send + Sync,
{
    fn value(&self, round: usize, state: usize, action: usize) -> f64 {
        self(round, state, action)
    }
}

/// An oblivious reward sequence over a fixed horizon.
///
/// Cheap to clone; the backing source is shared.
#[derive(Clone)]
pub struct RewardSequence {
    horizon: usize,
    num_states: usize,
    num_actions: usize,
    source: Arc<dyn RewardFn>,
}

impl fmt::Debug for RewardSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RewardSequence")
            .field("horizon", &self.horizon)
            .field("num_states", &self.num_states)
            .field("num_actions", &self.num_actions)
            .finish_non_exhaustive()
    }
}

struct Table {
    num_states: usize,
    num_actions: usize,
    values: Vec<f64>,
}

impl RewardFn for Table {
    fn value(&self, round: usize, state: usize, action: usize) -> f64 {
        self.values[((round - 1) * self.num_states + state) * self.num_actions + action]
    }
}

impl RewardSequence {
    /// A materialized table laid out as `values[((t - 1) * N + s) * A + a]`.
    /// Values outside `[0, 1]` are rejected.
    pub fn from_table(
        horizon: usize,
        num_states: usize,
        num_actions: usize,
        values: Vec<f64>,
    ) -> Result<Self> {
        check_shape(horizon, num_states, num_actions)?;
        if values.len() != horizon * num_states * num_actions {
            return Err(input(format!(
                "reward table has {} entries, expected {}",
                values.len(),
                horizon * num_states * num_actions
            )));
        }
        if let Some(pos) = values.iter().position(|v| !(0.0..=1.0).contains(v)) {
            let per_round = num_states * num_actions;
            return Err(input(format!(
                "reward {} at round {}, state {}, action {} is outside [0, 1]",
                values[pos],
                pos / per_round + 1,
                (pos % per_round) / num_actions,
                pos % num_actions
            )));
        }
        Ok(Self {
            horizon,
            num_states,
            num_actions,
            source: Arc::new(Table { num_states, num_actions, values }),
        })
    }

    /// Wraps a closed-form generator. The range is not checked here; use
    /// [`crate::adversary::verify_range`] for generators not built by this crate.
    pub fn from_fn(
        horizon: usize,
        num_states: usize,
        num_actions: usize,
        source: impl RewardFn + 'static,
    ) -> Result<Self> {
        check_shape(horizon, num_states, num_actions)?;
        Ok(Self { horizon, num_states, num_actions, source: Arc::new(source) })
    }

    pub fn constant(horizon: usize, num_states: usize, num_actions: usize, c: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&c) {
            return Err(input(format!("constant reward {c} is outside [0, 1]")));
        }
        Self::from_fn(horizon, num_states, num_actions, move |_: usize, _: usize, _: usize| c)
    }

    /// Independent uniform draws keyed by `(seed, t, s, a)`, never materialized.
    /// Every value is a dyadic rational with a 53-bit mantissa.
    pub fn seeded_uniform(horizon: usize, num_states: usize, num_actions: usize, seed: u64) -> Self {
        Self::from_fn(horizon, num_states, num_actions, move |t: usize, s: usize, a: usize| {
            hashed_unit(seed, t, s, a)
        })
        .expect("seeded_uniform needs a nonempty shape")
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn num_actions(&self) -> usize {
        self.num_actions
    }

    /// `r_t(s, a)`. Panics if `t` is outside `1..=T` or the pair is out of range.
    #[inline]
    pub fn reward(&self, round: usize, state: usize, action: usize) -> f64 {
        assert!(
            (1..=self.horizon).contains(&round),
            "round {round} outside 1..={}",
            self.horizon
        );
        debug_assert!(state < self.num_states && action < self.num_actions);
        self.source.value(round, state, action)
    }

    /// Ensures the sequence is defined on the DMDP's state and action sets.
    pub fn check_dims(&self, m: &Dmdp) -> Result<()> {
        if self.num_states != m.num_states() || self.num_actions != m.num_actions() {
            return Err(input(format!(
                "reward sequence is over {}x{} pairs, DMDP has {}x{}",
                self.num_states,
                self.num_actions,
                m.num_states(),
                m.num_actions()
            )));
        }
        Ok(())
    }

    /// Same values restricted to the first `horizon` rounds.
    pub fn truncated(&self, horizon: usize) -> Result<Self> {
        if horizon == 0 || horizon > self.horizon {
            return Err(input(format!("cannot truncate horizon {} to {horizon}", self.horizon)));
        }
        Ok(Self { horizon, ..self.clone() })
    }
}

fn check_shape(horizon: usize, num_states: usize, num_actions: usize) -> Result<()> {
    if horizon == 0 || num_states == 0 || num_actions == 0 {
        return Err(input("reward sequences need T, N, A >= 1"));
    }
    Ok(())
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform value in `[0, 1)` keyed by the tuple; a multiple of `2^-53`.
pub(crate) fn hashed_unit(seed: u64, t: usize, s: usize, a: usize) -> f64 {
    let mut h = splitmix64(seed);
    for part in [t as u64, s as u64, a as u64] {
        h = splitmix64(h ^ part);
    }
    (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
