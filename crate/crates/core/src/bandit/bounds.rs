//! Closed-form regret ceilings. All logarithms are natural.

use crate::error::{input, Result};

/// `4 U n^{3/2} sqrt(m ln m)`: expected regret of a bandit linear optimizer
/// in dimension `n` after `m` rounds with per-round reward at most `U`.
pub fn blo_bound(scale: f64, dim: f64, rounds: f64) -> Result<f64> {
    if rounds < 2.0 {
        return Err(input(format!("bandit linear bound needs m >= 2, got {rounds}")));
    }
    positive(&[scale, dim])?;
    Ok(4.0 * scale * dim.powf(1.5) * (rounds * rounds.ln()).sqrt())
}

/// `U sqrt(7 m n ln n)` for EXP3 over `n` arms.
pub fn exp3_bound(scale: f64, num_arms: usize, rounds: f64) -> Result<f64> {
    if num_arms < 2 {
        return Err(input(format!("EXP3 bound needs at least 2 arms, got {num_arms}")));
    }
    positive(&[scale, rounds])?;
    let n = num_arms as f64;
    Ok(scale * (7.0 * rounds * n * n.ln()).sqrt())
}

/// `4 L² (N A)^{3/2} sqrt(T ln T) + (2L + d)`: regret of the fixed-length
/// cycle learner against one `(k, s̄)` competitor class.
pub fn cycle_learner_bound(max_len: f64, num_states: f64, num_actions: f64, horizon: f64, d: f64) -> Result<f64> {
    if horizon < 2.0 {
        return Err(input(format!("cycle-learner bound needs T >= 2, got {horizon}")));
    }
    positive(&[max_len, num_states, num_actions])?;
    if d < 0.0 {
        return Err(input("d must be nonnegative"));
    }
    Ok(4.0 * max_len * max_len * (num_states * num_actions).powf(1.5) * (horizon * horizon.ln()).sqrt()
        + (2.0 * max_len + d))
}

/// `C = 4 L² (N A)^{3/2} + sqrt(7 N L ln(N L))`.
pub fn episodic_constant(max_len: usize, num_states: usize, num_actions: usize) -> Result<f64> {
    let nl = (num_states * max_len) as f64;
    if num_states * max_len < 2 {
        return Err(input("episodic bound needs N·L >= 2"));
    }
    if num_actions == 0 {
        return Err(input("episodic bound needs A >= 1"));
    }
    let l = max_len as f64;
    Ok(4.0 * l * l * ((num_states * num_actions) as f64).powf(1.5) + (7.0 * nl * nl.ln()).sqrt())
}

/// `C T^{3/4} sqrt(ln T)`, the leading term of the episodic regret bound.
pub fn episodic_bound(max_len: usize, num_states: usize, num_actions: usize, horizon: f64) -> Result<f64> {
    if horizon < 2.0 {
        return Err(input("episodic bound needs T >= 2"));
    }
    Ok(episodic_constant(max_len, num_states, num_actions)? * horizon.powf(0.75) * horizon.ln().sqrt())
}

fn positive(values: &[f64]) -> Result<()> {
    if values.iter().all(|&v| v > 0.0 && v.is_finite()) {
        Ok(())
    } else {
        Err(input(format!("bound arguments must be positive, got {values:?}")))
    }
}
