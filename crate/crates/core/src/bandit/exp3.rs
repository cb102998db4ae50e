//! EXP3 over finitely many arms with rewards in `[0, 1]`.
//!
//! Arm `i` is drawn from `p_i = (1 - γ) w_i / Σw + γ / n`. After observing
//! reward `x` for the drawn arm, its weight is multiplied by
//! `exp(γ x̂ / n)` with the importance-weighted estimate `x̂ = x / p_i`.
//! Weights are stored as logarithms so long runs cannot overflow.

use rand::Rng;

use crate::error::{input, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Exp3 {
    log_weights: Vec<f64>,
    gamma: f64,
    horizon: usize,
    pending: Option<(usize, f64)>,
}

impl Exp3 {
    /// Uniform weights and the horizon-tuned rate
    /// `γ = min{1, sqrt(n ln n / ((e - 1) m))}`.
    pub fn new(num_arms: usize, horizon: usize) -> Result<Self> {
        if num_arms < 2 {
            return Err(input(format!("EXP3 needs at least 2 arms, got {num_arms}")));
        }
        if horizon == 0 {
            return Err(input("EXP3 horizon must be positive"));
        }
        Ok(Self {
            log_weights: vec![0.0; num_arms],
            gamma: Self::tuned_gamma(num_arms, horizon),
            horizon,
            pending: None,
        })
    }

    pub fn tuned_gamma(num_arms: usize, horizon: usize) -> f64 {
        let n = num_arms as f64;
        let rate = (n * n.ln() / ((std::f64::consts::E - 1.0) * horizon as f64)).sqrt();
        rate.min(1.0)
    }

    /// Starts from explicit positive weights and exploration rate `γ ∈ [0, 1]`.
    pub fn with_weights(weights: &[f64], gamma: f64, horizon: usize) -> Result<Self> {
        if weights.len() < 2 {
            return Err(input("EXP3 needs at least 2 arms"));
        }
        if weights.iter().any(|&w| !w.is_finite() || w <= 0.0) {
            return Err(input("EXP3 weights must be positive and finite"));
        }
        if !(0.0..=1.0).contains(&gamma) {
            return Err(input(format!("exploration rate {gamma} outside [0, 1]")));
        }
        Ok(Self {
            log_weights: weights.iter().map(|w| w.ln()).collect(),
            gamma,
            horizon,
            pending: None,
        })
    }

    pub fn num_arms(&self) -> usize {
        self.log_weights.len()
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    /// Weights scaled so the largest is 1.
    pub fn weights(&self) -> Vec<f64> {
        let top = self.log_weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        self.log_weights.iter().map(|lw| (lw - top).exp()).collect()
    }

    /// The mixed sampling distribution.
    pub fn probabilities(&self) -> Vec<f64> {
        let w = self.weights();
        let total: f64 = w.iter().sum();
        let n = w.len() as f64;
        w.iter().map(|wi| (1.0 - self.gamma) * wi / total + self.gamma / n).collect()
    }

    /// Draws an arm and remembers its probability for the next update.
    pub fn select<R: Rng + ?Sized>(&mut self, rng: &mut R) -> usize {
        let p = self.probabilities();
        let u: f64 = rng.random();
        let mut acc = 0.0;
        let mut arm = p.len() - 1;
        for (i, pi) in p.iter().enumerate() {
            acc += pi;
            if u < acc {
                arm = i;
                break;
            }
        }
        self.pending = Some((arm, p[arm]));
        arm
    }

    /// Feeds back the reward of the arm returned by the last [`select`](Self::select).
    pub fn update(&mut self, arm: usize, reward: f64) -> Result<()> {
        if !(0.0..=1.0).contains(&reward) {
            return Err(input(format!("EXP3 reward {reward} outside [0, 1]")));
        }
        let (expected, prob) = self
            .pending
            .take()
            .ok_or_else(|| input("EXP3 update without a preceding selection"))?;
        if arm != expected {
            self.pending = Some((expected, prob));
            return Err(input(format!("EXP3 update for arm {arm}, but arm {expected} was selected")));
        }
        let estimate = reward / prob;
        self.log_weights[arm] += self.gamma * estimate / self.num_arms() as f64;
        let top = self.log_weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        for lw in &mut self.log_weights {
            *lw -= top;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn construction() {
        let e = Exp3::new(2, 50).unwrap();
        assert_eq!(e.probabilities(), vec![0.5, 0.5]);
        let g = Exp3::new(10, 100).unwrap().gamma();
        assert!((g - 0.366).abs() < 5e-4, "gamma {g}");
        let g2 = Exp3::new(2, 1).unwrap().gamma();
        assert!((g2 - (2.0 * 2f64.ln() / (std::f64::consts::E - 1.0)).sqrt()).abs() < 1e-12);
        assert!((g2 - 0.898).abs() < 5e-4);
        assert_eq!(Exp3::new(3, 1).unwrap().gamma(), 1.0);
        assert!(Exp3::new(1, 10).is_err());
    }

    #[test]
    fn weighted_probabilities() {
        let e = Exp3::with_weights(&[std::f64::consts::E, 1.0], 0.0, 10).unwrap();
        let p = e.probabilities();
        assert!((p[0] - 0.731).abs() < 5e-4);
    }

    #[test]
    fn empirical_selection_matches_distribution() {
        let mut e = Exp3::with_weights(&[4.0, 1.0, 2.0, 1.0], 0.2, 10).unwrap();
        let p = e.probabilities();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut counts = [0usize; 4];
        let draws = 100_000;
        for _ in 0..draws {
            counts[e.select(&mut rng)] += 1;
        }
        for (c, pi) in counts.iter().zip(&p) {
            assert!((*c as f64 / draws as f64 - pi).abs() <= 0.01);
        }
    }

    #[test]
    fn update_rules() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut e = Exp3::with_weights(&[1.0, 1.0], 0.1, 10).unwrap();
        let arm = e.select(&mut rng);
        e.update(arm, 0.0).unwrap();
        assert_eq!(e.weights(), vec![1.0, 1.0]);

        let arm = e.select(&mut rng);
        e.update(arm, 1.0).unwrap();
        let w = e.weights();
        // x̂ = 1 / 0.5 = 2, multiplier exp(0.1 · 2 / 2).
        assert!((w[arm] / w[1 - arm] - 0.1f64.exp()).abs() < 1e-12);
        assert!((0.1f64.exp() - 1.1052).abs() < 1e-4);
    }

    #[test]
    fn update_errors() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut e = Exp3::new(3, 10).unwrap();
        assert!(e.update(0, 0.5).is_err());
        let arm = e.select(&mut rng);
        assert!(e.update((arm + 1) % 3, 0.5).is_err());
        assert!(e.update(arm, 1.5).is_err());
        assert!(e.update(arm, 0.5).is_ok());
    }

    #[test]
    fn repeated_success_concentrates() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut e = Exp3::new(4, 1000).unwrap();
        let target = 2;
        let mut steps = 0;
        while e.probabilities()[target] <= 1.0 - e.gamma() - 0.01 {
            let arm = e.select(&mut rng);
            e.update(arm, if arm == target { 1.0 } else { 0.0 }).unwrap();
            steps += 1;
            assert!(steps < 100_000);
        }
    }

    #[test]
    fn probabilities_sum_to_one_with_floor() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut e = Exp3::new(6, 200).unwrap();
        for t in 0..2000 {
            let arm = e.select(&mut rng);
            e.update(arm, ((t * 7 + arm) % 5) as f64 / 4.0).unwrap();
            let p = e.probabilities();
            assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!(p.iter().all(|&pi| pi >= e.gamma() / 6.0 - 1e-15));
        }
    }
}
