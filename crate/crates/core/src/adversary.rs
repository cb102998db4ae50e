//! Oblivious reward generators.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dmdp::Dmdp;
use crate::error::{input, Result};
use crate::rewards::RewardSequence;

/// A state or action given by index or by declared name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Ref {
    Index(usize),
    Name(String),
}

impl From<usize> for Ref {
    fn from(i: usize) -> Self {
        Ref::Index(i)
    }
}

impl From<&str> for Ref {
    fn from(s: &str) -> Self {
        Ref::Name(s.to_owned())
    }
}

/// Declared names of states and actions, in index order.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Labels {
    pub states: Vec<String>,
    pub actions: Vec<String>,
}

impl Labels {
    /// `s0, s1, ...` and `a0, a1, ...`.
    pub fn numbered(m: &Dmdp) -> Self {
        Self {
            states: (0..m.num_states()).map(|i| format!("s{i}")).collect(),
            actions: (0..m.num_actions()).map(|i| format!("a{i}")).collect(),
        }
    }

    pub fn state(&self, r: &Ref) -> Result<usize> {
        resolve(r, &self.states, "state")
    }

    pub fn action(&self, r: &Ref) -> Result<usize> {
        resolve(r, &self.actions, "action")
    }
}

fn resolve(r: &Ref, names: &[String], what: &str) -> Result<usize> {
    match r {
        Ref::Index(i) if *i < names.len() => Ok(*i),
        Ref::Index(i) => Err(input(format!("{what} index {i} out of range 0..{}", names.len()))),
        Ref::Name(n) => names
            .iter()
            .position(|x| x == n)
            .ok_or_else(|| input(format!("unknown {what} {n:?}"))),
    }
}

pub type PairRef = (Ref, Ref);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AdversarySpec {
    Constant { value: f64 },
    Indicator { pairs: Vec<PairRef> },
    /// `(1 + sin(2πt/p)) / 2` on the target pair, 0 elsewhere.
    PhaseWave { period: f64, target: PairRef },
    /// Pays on `first` for `block` rounds, then on `second`, and so on.
    Switching { block: usize, first: Vec<PairRef>, second: Vec<PairRef> },
    SeededRandom { seed: u64 },
}

struct Resolver<'a> {
    labels: Option<&'a Labels>,
    num_states: usize,
    num_actions: usize,
}

impl Resolver<'_> {
    fn one(&self, r: &Ref, names: Option<&[String]>, count: usize, what: &str) -> Result<usize> {
        match (r, names) {
            (Ref::Name(_), Some(names)) => resolve(r, names, what),
            (Ref::Name(n), None) => Err(input(format!("{what} {n:?} given by name, but no names are declared"))),
            (Ref::Index(i), _) if *i < count => Ok(*i),
            (Ref::Index(i), _) => Err(input(format!("{what} index {i} out of range 0..{count}"))),
        }
    }

    fn pair(&self, (s, a): &PairRef) -> Result<(usize, usize)> {
        Ok((
            self.one(s, self.labels.map(|l| &l.states[..]), self.num_states, "state")?,
            self.one(a, self.labels.map(|l| &l.actions[..]), self.num_actions, "action")?,
        ))
    }

    fn pairs(&self, pairs: &[PairRef]) -> Result<Vec<(usize, usize)>> {
        pairs.iter().map(|p| self.pair(p)).collect()
    }
}

fn indicator(pairs: &[(usize, usize)], s: usize, a: usize) -> f64 {
    if pairs.contains(&(s, a)) {
        1.0
    } else {
        0.0
    }
}

pub fn phase_wave_value(period: f64, round: usize) -> f64 {
    ((1.0 + (2.0 * PI * round as f64 / period).sin()) / 2.0).clamp(0.0, 1.0)
}

/// Builds the sequence over `horizon` rounds. Names resolve through
/// `labels`; without labels only indices are accepted.
pub fn make_rewards(
    spec: &AdversarySpec,
    m: &Dmdp,
    horizon: usize,
    labels: Option<&Labels>,
) -> Result<RewardSequence> {
    let (n, na) = (m.num_states(), m.num_actions());
    let refs = Resolver { labels, num_states: n, num_actions: na };
    match spec {
        AdversarySpec::Constant { value } => RewardSequence::constant(horizon, n, na, *value),
        AdversarySpec::Indicator { pairs } => {
            let pairs = refs.pairs(pairs)?;
            RewardSequence::from_fn(horizon, n, na, move |_: usize, s: usize, a: usize| indicator(&pairs, s, a))
        }
        AdversarySpec::PhaseWave { period, target } => {
            if !period.is_finite() || *period <= 0.0 {
                return Err(input(format!("phase_wave period {period} must be positive")));
            }
            let target = refs.pair(target)?;
            let period = *period;
            RewardSequence::from_fn(horizon, n, na, move |t: usize, s: usize, a: usize| {
                if (s, a) == target {
                    phase_wave_value(period, t)
                } else {
                    0.0
                }
            })
        }
        AdversarySpec::Switching { block, first, second } => {
            if *block == 0 {
                return Err(input("switching block length must be positive"));
            }
            let sets = [refs.pairs(first)?, refs.pairs(second)?];
            let block = *block;
            RewardSequence::from_fn(horizon, n, na, move |t: usize, s: usize, a: usize| {
                indicator(&sets[((t - 1) / block) % 2], s, a)
            })
        }
        AdversarySpec::SeededRandom { seed } => Ok(RewardSequence::seeded_uniform(horizon, n, na, *seed)),
    }
}

/// Probes `budget` uniformly drawn `(t, s, a)` triples and reports whether
/// every value lies in `[0, 1]`.
pub fn verify_range(rewards: &RewardSequence, budget: usize, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..budget).all(|_| {
        let t = rng.random_range(1..=rewards.horizon());
        let s = rng.random_range(0..rewards.num_states());
        let a = rng.random_range(0..rewards.num_actions());
        (0.0..=1.0).contains(&rewards.reward(t, s, a))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{d2, ring4, A, B};
    use crate::polytope::{epoch_reward_vector, FlowPolytope};

    fn pair(s: usize, a: usize) -> PairRef {
        (s.into(), a.into())
    }

    fn all_specs() -> Vec<AdversarySpec> {
        vec![
            AdversarySpec::Constant { value: 0.5 },
            AdversarySpec::Indicator { pairs: vec![pair(0, B), pair(1, A)] },
            AdversarySpec::PhaseWave { period: 3.0, target: pair(1, A) },
            AdversarySpec::Switching { block: 7, first: vec![pair(0, B)], second: vec![pair(2, B)] },
            AdversarySpec::SeededRandom { seed: 12 },
        ]
    }

    #[test]
    fn constant_values() {
        let r = make_rewards(&AdversarySpec::Constant { value: 0.5 }, &d2(), 20, None).unwrap();
        assert!((1..=20).all(|t| r.reward(t, 1, B) == 0.5));
        assert!(make_rewards(&AdversarySpec::Constant { value: 2.0 }, &d2(), 20, None).is_err());
    }

    #[test]
    fn phase_wave_values() {
        let spec = AdversarySpec::PhaseWave { period: 4.0, target: pair(0, B) };
        let r = make_rewards(&spec, &d2(), 8, None).unwrap();
        assert!((r.reward(1, 0, B) - 1.0).abs() < 1e-15);
        assert!(r.reward(3, 0, B).abs() < 1e-15);
        assert!((r.reward(2, 0, B) - 0.5).abs() < 1e-15);
        assert_eq!(r.reward(1, 0, A), 0.0);
    }

    #[test]
    fn switching_blocks() {
        let spec = AdversarySpec::Switching { block: 100, first: vec![pair(0, A)], second: vec![pair(1, B)] };
        let r = make_rewards(&spec, &d2(), 400, None).unwrap();
        for t in [1, 50, 100, 201, 300] {
            assert_eq!((r.reward(t, 0, A), r.reward(t, 1, B)), (1.0, 0.0), "round {t}");
        }
        for t in [101, 200, 301, 400] {
            assert_eq!((r.reward(t, 0, A), r.reward(t, 1, B)), (0.0, 1.0), "round {t}");
        }
    }

    #[test]
    fn references_are_resolved() {
        let labels = Labels { states: vec!["left".into(), "right".into()], actions: vec!["go".into(), "stay".into()] };
        let spec = AdversarySpec::Indicator { pairs: vec![("right".into(), "stay".into())] };
        let r = make_rewards(&spec, &d2(), 5, Some(&labels)).unwrap();
        assert_eq!(r.reward(3, 1, B), 1.0);
        assert_eq!(r.reward(3, 0, B), 0.0);
        let bad = AdversarySpec::Indicator { pairs: vec![("middle".into(), "stay".into())] };
        assert!(make_rewards(&bad, &d2(), 5, Some(&labels)).is_err());
        assert!(make_rewards(&AdversarySpec::Indicator { pairs: vec![pair(2, A)] }, &d2(), 5, None).is_err());
        assert!(make_rewards(&AdversarySpec::Indicator { pairs: vec![("right".into(), 1.into())] }, &d2(), 5, None).is_err());
    }

    #[test]
    fn builtins_stay_in_range_and_reproduce() {
        let m = ring4();
        for spec in all_specs() {
            let r1 = make_rewards(&spec, &m, 5000, None).unwrap();
            let r2 = make_rewards(&spec, &m, 5000, None).unwrap();
            assert!(verify_range(&r1, 10_000, 1));
            let mut rng = ChaCha8Rng::seed_from_u64(2);
            for _ in 0..10_000 {
                let (t, s, a) = (rng.random_range(1..=5000), rng.random_range(0..4), rng.random_range(0..2));
                assert_eq!(r1.reward(t, s, a), r2.reward(t, s, a));
            }
        }
    }

    #[test]
    fn range_check_catches_bad_generators() {
        let broken = RewardSequence::from_fn(10, 2, 2, |_: usize, _: usize, _: usize| 1.5).unwrap();
        assert!(!verify_range(&broken, 10, 0));
        assert!(verify_range(&broken, 0, 0));
    }

    #[test]
    fn spec_round_trips_through_toml() {
        for spec in all_specs() {
            #[derive(Serialize, Deserialize)]
            struct Wrap {
                adversary: AdversarySpec,
            }
            let text = toml::to_string(&Wrap { adversary: spec.clone() }).unwrap();
            let back: Wrap = toml::from_str(&text).unwrap();
            assert_eq!(back.adversary, spec);
        }
        let err = toml::from_str::<AdversarySpec>("kind = \"constant\"\nvalue = 0.5\nextra = 1\n");
        assert!(err.is_err());
    }

    #[test]
    fn phase_wave_breaks_epoch_parity() {
        // Period 3 does not divide k = 2, so the same cycle pays differently
        // in consecutive epochs.
        let m = d2();
        let spec = AdversarySpec::PhaseWave { period: 3.0, target: pair(0, B) };
        let r = make_rewards(&spec, &m, 4, None).unwrap();
        let poly = FlowPolytope::new(&m, 2, 0).unwrap();
        let x = poly.embed(&[B, B]).unwrap();
        let first = epoch_reward_vector(&r, 1, poly.index()).unwrap().dot(&x);
        let second = epoch_reward_vector(&r, 3, poly.index()).unwrap().dot(&x);
        assert!((first - second).abs() > 0.1, "{first} vs {second}");
    }
}
