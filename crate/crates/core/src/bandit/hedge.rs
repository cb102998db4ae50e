//! Exponential weights over the vertices of a flow polytope.
//!
//! The engine keeps one log-weight per cycle `c ∈ C_{k,s̄}` and proposes the
//! mean point of the mixture `p = (1 - γ) softmax(w) + γ / |V|`. Feedback is a
//! single scalar, the reward of one sampled cycle, turned into a linear
//! estimate `ρ̂ = C⁺ x(played) R` where `C = Σ θ(u) u uᵀ` is the second-moment
//! matrix of the distribution `θ` the cycle was actually drawn from.
//!
//! `C` lives in `R^{D×D}`, but its support has at most `D + 1` vertices, so
//! all products are taken in the `s × s` Gram space of the support:
//! with `M = [√θ_1 u_1, ..., √θ_s u_s]`, `C⁺ = M (MᵀM)⁺² Mᵀ`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{input, Result};
use crate::polytope::{CycleSet, FlowPoint, FlowPolytope, VertexDistribution};

/// Eigenvalues of the Gram matrix below this are treated as zero.
pub const EIGEN_FLOOR: f64 = 1e-12;

/// Largest magnitude allowed for a single exponent update.
pub const EXPONENT_CLIP: f64 = 30.0;

#[derive(Debug, Clone)]
pub struct VertexHedge {
    polytope: FlowPolytope,
    cycles: CycleSet,
    supports: Vec<Vec<usize>>,
    log_weights: Vec<f64>,
    gamma: f64,
    eta: f64,
    scale: f64,
}

impl VertexHedge {
    /// Uniform weights over `C_{k,s̄}` with `γ = min{1, m^{-1/3}}` and
    /// `η = γ / (U·D)`, where `m` is the number of feedback rounds and `U`
    /// bounds a single reward.
    pub fn new(polytope: FlowPolytope, horizon: usize, scale: f64, cap: usize) -> Result<Self> {
        if horizon == 0 {
            return Err(input("hedge horizon must be positive"));
        }
        if !scale.is_finite() || scale <= 0.0 {
            return Err(input(format!("reward scale {scale} must be positive")));
        }
        let cycles = polytope.enumerate_cycles(cap)?;
        if cycles.is_empty() {
            return Err(input(format!(
                "no cycles of length {} through state {}",
                polytope.k(),
                polytope.anchor()
            )));
        }
        let supports = cycles.cycles.iter().map(|c| polytope.cycle_support(c)).collect();
        let gamma = (horizon as f64).powf(-1.0 / 3.0).min(1.0);
        let eta = gamma / (scale * polytope.dim() as f64);
        Ok(Self {
            log_weights: vec![0.0; cycles.len()],
            polytope,
            cycles,
            supports,
            gamma,
            eta,
            scale,
        })
    }

    pub fn polytope(&self) -> &FlowPolytope {
        &self.polytope
    }

    pub fn cycles(&self) -> &CycleSet {
        &self.cycles
    }

    pub fn num_vertices(&self) -> usize {
        self.cycles.len()
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Mixed distribution over vertices, aligned with [`cycles`](Self::cycles).
    pub fn probabilities(&self) -> Vec<f64> {
        let top = self.log_weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let w: Vec<f64> = self.log_weights.iter().map(|lw| (lw - top).exp()).collect();
        let total: f64 = w.iter().sum();
        let n = w.len() as f64;
        w.iter().map(|wi| (1.0 - self.gamma) * wi / total + self.gamma / n).collect()
    }

    /// Probability of a specific cycle under the mixed distribution.
    pub fn probability_of(&self, cycle: &[usize]) -> Option<f64> {
        self.cycles.position(cycle).map(|i| self.probabilities()[i])
    }

    /// Mean point of the mixed distribution.
    pub fn propose(&self) -> FlowPoint {
        let mut x = FlowPoint::zeros(self.polytope.dim());
        for (support, p) in self.supports.iter().zip(self.probabilities()) {
            for &j in support {
                x.coords[j] += p;
            }
        }
        x
    }

    /// The distribution cycles are drawn from: the decomposition of the proposal.
    pub fn sampling_distribution(&self) -> Result<VertexDistribution> {
        self.polytope.decompose(&self.propose())
    }

    /// `ρ̂ · v` for every vertex `v`, in [`cycles`](Self::cycles) order.
    pub fn reward_estimates(
        &self,
        dist: &VertexDistribution,
        played: &[usize],
        reward: f64,
    ) -> Result<Vec<f64>> {
        if !(0.0..=self.scale).contains(&reward) {
            return Err(input(format!("epoch reward {reward} outside [0, {}]", self.scale)));
        }
        let played_at = self
            .cycles
            .position(played)
            .ok_or_else(|| input(format!("{played:?} is not a vertex of this polytope")))?;
        let played = &self.supports[played_at];
        let basis: Vec<(Vec<usize>, f64)> = dist
            .support()
            .iter()
            .map(|(c, w)| {
                self.cycles
                    .position(c)
                    .map(|i| (self.supports[i].clone(), w.sqrt()))
                    .ok_or_else(|| input(format!("{c:?} is not a vertex of this polytope")))
            })
            .collect::<Result<_>>()?;
        if reward == 0.0 {
            return Ok(vec![0.0; self.num_vertices()]);
        }

        let s = basis.len();
        let gram = DMatrix::from_fn(s, s, |i, j| {
            basis[i].1 * basis[j].1 * overlap(&basis[i].0, &basis[j].0) as f64
        });
        let z = DVector::from_fn(s, |i, _| basis[i].1 * overlap(&basis[i].0, played) as f64);
        let eig = SymmetricEigen::new(gram);
        let mut y = DVector::zeros(s);
        for (l, q) in eig.eigenvalues.iter().zip(eig.eigenvectors.column_iter()) {
            if *l >= EIGEN_FLOOR {
                y += q * (q.dot(&z) / (l * l));
            }
        }
        Ok(self
            .supports
            .iter()
            .map(|v| {
                reward
                    * basis
                        .iter()
                        .zip(y.iter())
                        .map(|((u, root), yi)| root * overlap(u, v) as f64 * yi)
                        .sum::<f64>()
            })
            .collect())
    }

    /// Multiplicative update from the reward of `played`, drawn from `dist`.
    pub fn feedback(&mut self, dist: &VertexDistribution, played: &[usize], reward: f64) -> Result<()> {
        let estimates = self.reward_estimates(dist, played, reward)?;
        for (lw, est) in self.log_weights.iter_mut().zip(estimates) {
            *lw += (self.eta * est).clamp(-EXPONENT_CLIP, EXPONENT_CLIP);
        }
        let top = self.log_weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        for lw in &mut self.log_weights {
            *lw -= top;
        }
        Ok(())
    }
}

/// Number of phases on which two cycles use the same `(state, action)` pair.
fn overlap(u: &[usize], v: &[usize]) -> usize {
    u.iter().zip(v).filter(|(a, b)| a == b).count()
}
