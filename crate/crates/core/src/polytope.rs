//! The flow polytope over length-`k` action cycles through an anchor state.
//!
//! Coordinates are triplets `(s, a, i)` with phase `i ∈ 1..=k`, laid out
//! phase-major so that a dot product walks the phases in playing order.
//! A cycle `c` embeds as the 0/1 vector marking the `(state, action)` pair
//! it visits at each phase; the polytope is the convex hull of these
//! embeddings, described by
//!
//! * `x ≥ 0` and unit outflow `Σ_a x(s̄, a, 1) = 1`,
//! * `x(s, a, 1) = 0` for `s ≠ s̄`,
//! * `x(s', a', k) = 0` unless `f(s', a') = s̄`,
//! * conservation `Σ_{(s',a') ∈ I(s)} x(s', a', i-1) = Σ_a x(s, a, i)` for `i ≥ 2`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dmdp::Dmdp;
use crate::error::{input, Error, Result};
use crate::rewards::RewardSequence;

/// Absolute tolerance for membership and reconstruction checks.
pub const FLOW_TOLERANCE: f64 = 1e-9;

/// Default limit on the number of cycles materialized by enumeration.
pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;

/// Bijection between triplets `(s, a, i)` and flat coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripletIndex {
    num_states: usize,
    num_actions: usize,
    k: usize,
}

impl TripletIndex {
    pub fn new(num_states: usize, num_actions: usize, k: usize) -> Result<Self> {
        if num_states == 0 || num_actions == 0 || k == 0 {
            return Err(input("triplet index needs N, A, k >= 1"));
        }
        Ok(Self { num_states, num_actions, k })
    }

    pub fn for_dmdp(m: &Dmdp, k: usize) -> Result<Self> {
        Self::new(m.num_states(), m.num_actions(), k)
    }

    /// `N · A · k`.
    pub fn dim(&self) -> usize {
        self.num_states * self.num_actions * self.k
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Flat coordinate of `(s, a, i)`; `phase` is 1-based.
    #[inline]
    pub fn flat(&self, state: usize, action: usize, phase: usize) -> usize {
        debug_assert!(state < self.num_states && action < self.num_actions);
        debug_assert!((1..=self.k).contains(&phase));
        ((phase - 1) * self.num_states + state) * self.num_actions + action
    }

    /// Inverse of [`flat`](Self::flat).
    pub fn triplet(&self, index: usize) -> (usize, usize, usize) {
        let a = index % self.num_actions;
        let rest = index / self.num_actions;
        (rest % self.num_states, a, rest / self.num_states + 1)
    }
}

/// The action cycles `C_{k,s̄}` in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleSet {
    pub k: usize,
    pub anchor: usize,
    pub cycles: Vec<Vec<usize>>,
}

impl CycleSet {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn contains(&self, cycle: &[usize]) -> bool {
        self.position(cycle).is_some()
    }

    pub fn position(&self, cycle: &[usize]) -> Option<usize> {
        self.cycles.binary_search_by(|c| c.as_slice().cmp(cycle)).ok()
    }
}

/// A point of `R^{N·A·k}` indexed by [`TripletIndex`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlowPoint {
    pub coords: Vec<f64>,
}

impl FlowPoint {
    pub fn new(coords: Vec<f64>) -> Self {
        Self { coords }
    }

    pub fn zeros(dim: usize) -> Self {
        Self { coords: vec![0.0; dim] }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// `self += weight · other`.
    pub fn add_scaled(&mut self, weight: f64, other: &FlowPoint) {
        for (x, y) in self.coords.iter_mut().zip(&other.coords) {
            *x += weight * y;
        }
    }

    pub fn sup_distance(&self, other: &FlowPoint) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }
}

/// `ρ_j(s, a, i) = r_{t0 + i - 1}(s, a)`: the rewards of one epoch laid out
/// on the triplet coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpochRewardVector {
    pub coords: Vec<f64>,
}

impl EpochRewardVector {
    /// Sums coordinate products in flat (phase-major) order.
    pub fn dot(&self, x: &FlowPoint) -> f64 {
        self.coords.iter().zip(&x.coords).map(|(r, x)| r * x).sum()
    }
}

pub fn epoch_reward_vector(
    rewards: &RewardSequence,
    epoch_start: usize,
    index: &TripletIndex,
) -> Result<EpochRewardVector> {
    let k = index.k();
    if epoch_start == 0 || epoch_start + k - 1 > rewards.horizon() {
        return Err(input(format!(
            "epoch starting at round {epoch_start} with length {k} exceeds horizon {}",
            rewards.horizon()
        )));
    }
    if rewards.num_states() != index.num_states || rewards.num_actions() != index.num_actions {
        return Err(input("reward sequence does not match the triplet index"));
    }
    let mut coords = vec![0.0; index.dim()];
    for i in 1..=k {
        for s in 0..index.num_states {
            for a in 0..index.num_actions {
                coords[index.flat(s, a, i)] = rewards.reward(epoch_start + i - 1, s, a);
            }
        }
    }
    Ok(EpochRewardVector { coords })
}

/// A finite distribution over cycles with positive weights summing to 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexDistribution {
    support: Vec<(Vec<usize>, f64)>,
}

impl VertexDistribution {
    pub fn new(support: Vec<(Vec<usize>, f64)>) -> Result<Self> {
        if support.is_empty() {
            return Err(input("empty distribution"));
        }
        if support.iter().any(|(_, w)| !w.is_finite() || *w <= 0.0) {
            return Err(input("distribution weights must be positive and finite"));
        }
        let total: f64 = support.iter().map(|(_, w)| w).sum();
        if (total - 1.0).abs() > FLOW_TOLERANCE {
            return Err(input(format!("distribution weights sum to {total}, not 1")));
        }
        Ok(Self { support })
    }

    pub fn support(&self) -> &[(Vec<usize>, f64)] {
        &self.support
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// Draws cycle `c_i` with probability `w_i`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> &[usize] {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        for (c, w) in &self.support {
            acc += w;
            if u < acc {
                return c;
            }
        }
        &self.support.last().expect("nonempty").0
    }
}

/// Which linear constraint a point violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Constraint {
    Nonnegative { state: usize, action: usize, phase: usize },
    UnitOutflow,
    StartsAtAnchor { state: usize, action: usize },
    EndsAtAnchor { state: usize, action: usize },
    Conservation { state: usize, phase: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub constraint: Constraint,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct MembershipReport {
    pub violations: Vec<Violation>,
}

impl MembershipReport {
    pub fn is_member(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The polytope for a fixed DMDP, cycle length and anchor state.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowPolytope {
    dmdp: Dmdp,
    k: usize,
    anchor: usize,
    index: TripletIndex,
}

impl FlowPolytope {
    pub fn new(m: &Dmdp, k: usize, anchor: usize) -> Result<Self> {
        m.check_state(anchor)?;
        let index = TripletIndex::for_dmdp(m, k)?;
        Ok(Self { dmdp: m.clone(), k, anchor, index })
    }

    pub fn dmdp(&self) -> &Dmdp {
        &self.dmdp
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn anchor(&self) -> usize {
        self.anchor
    }

    pub fn index(&self) -> &TripletIndex {
        &self.index
    }

    pub fn dim(&self) -> usize {
        self.index.dim()
    }

    /// `|C_{k,s̄}|` counted by walk DP, saturating at `u128::MAX`.
    pub fn count_cycles(&self) -> u128 {
        let m = &self.dmdp;
        let mut walks = vec![0u128; m.num_states()];
        walks[self.anchor] = 1;
        for _ in 0..self.k {
            let mut next = vec![0u128; m.num_states()];
            for (s, a) in m.pairs() {
                let t = m.next(s, a);
                next[t] = next[t].saturating_add(walks[s]);
            }
            walks = next;
        }
        walks[self.anchor]
    }

    /// All of `C_{k,s̄}` in lexicographic order, including non-simple cycles.
    /// Fails if there are more than `cap` cycles.
    pub fn enumerate_cycles(&self, cap: usize) -> Result<CycleSet> {
        let count = self.count_cycles();
        if count > cap as u128 {
            return Err(Error::CapExceeded {
                what: format!("cycle set C(k={}, s={})", self.k, self.anchor),
                needed: count,
                cap: cap as u128,
            });
        }
        let m = &self.dmdp;
        let k = self.k;
        // returns[r][s]: the anchor is reachable from s in exactly r steps.
        let mut returns = vec![vec![false; m.num_states()]; k + 1];
        returns[0][self.anchor] = true;
        for r in 1..=k {
            for s in 0..m.num_states() {
                returns[r][s] = (0..m.num_actions()).any(|a| returns[r - 1][m.next(s, a)]);
            }
        }
        let mut cycles = Vec::with_capacity(count as usize);
        let mut prefix = Vec::with_capacity(k);
        self.extend_cycles(self.anchor, &returns, &mut prefix, &mut cycles);
        Ok(CycleSet { k, anchor: self.anchor, cycles })
    }

    fn extend_cycles(
        &self,
        s: usize,
        returns: &[Vec<bool>],
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let remaining = self.k - prefix.len();
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for a in 0..self.dmdp.num_actions() {
            let t = self.dmdp.next(s, a);
            if returns[remaining - 1][t] {
                prefix.push(a);
                self.extend_cycles(t, returns, prefix, out);
                prefix.pop();
            }
        }
    }

    /// The state occupied at each phase `1..=k` while playing `cycle` from the anchor.
    pub fn cycle_states(&self, cycle: &[usize]) -> Vec<usize> {
        let mut s = self.anchor;
        cycle
            .iter()
            .map(|&a| {
                let here = s;
                s = self.dmdp.next(s, a);
                here
            })
            .collect()
    }

    fn check_cycle(&self, cycle: &[usize]) -> Result<()> {
        if cycle.len() != self.k {
            return Err(input(format!("cycle has length {}, expected {}", cycle.len(), self.k)));
        }
        if self.dmdp.run_actions(self.anchor, cycle)? != self.anchor {
            return Err(input(format!("{cycle:?} does not return to state {}", self.anchor)));
        }
        Ok(())
    }

    /// Flat coordinates of the `k` ones of `x(c)`, in phase order.
    pub fn cycle_support(&self, cycle: &[usize]) -> Vec<usize> {
        self.cycle_states(cycle)
            .into_iter()
            .zip(cycle)
            .enumerate()
            .map(|(i, (s, &a))| self.index.flat(s, a, i + 1))
            .collect()
    }

    /// The binary embedding `x(c)`.
    pub fn embed(&self, cycle: &[usize]) -> Result<FlowPoint> {
        self.check_cycle(cycle)?;
        let mut x = FlowPoint::zeros(self.dim());
        for j in self.cycle_support(cycle) {
            x.coords[j] = 1.0;
        }
        Ok(x)
    }

    /// Checks every defining constraint within [`FLOW_TOLERANCE`].
    pub fn check_membership(&self, p: &FlowPoint) -> Result<MembershipReport> {
        if p.dim() != self.dim() {
            return Err(input(format!("point has dimension {}, expected {}", p.dim(), self.dim())));
        }
        let m = &self.dmdp;
        let (n, na, k) = (m.num_states(), m.num_actions(), self.k);
        let x = |s, a, i| p.coords[self.index.flat(s, a, i)];
        let mut violations = Vec::new();
        let mut flag = |constraint, residual: f64| {
            if residual.abs() > FLOW_TOLERANCE || residual.is_nan() {
                violations.push(Violation { constraint, residual });
            }
        };

        for i in 1..=k {
            for (s, a) in m.pairs() {
                let v = x(s, a, i);
                flag(Constraint::Nonnegative { state: s, action: a, phase: i }, v.min(0.0));
            }
        }
        let outflow: f64 = (0..na).map(|a| x(self.anchor, a, 1)).sum();
        flag(Constraint::UnitOutflow, outflow - 1.0);
        for (s, a) in m.pairs().filter(|&(s, _)| s != self.anchor) {
            flag(Constraint::StartsAtAnchor { state: s, action: a }, x(s, a, 1));
        }
        for (s, a) in m.pairs().filter(|&(s, a)| m.next(s, a) != self.anchor) {
            flag(Constraint::EndsAtAnchor { state: s, action: a }, x(s, a, k));
        }
        for i in 2..=k {
            let mut inflow = vec![0.0; n];
            for (s, a) in m.pairs() {
                inflow[m.next(s, a)] += x(s, a, i - 1);
            }
            for (s, &into) in inflow.iter().enumerate() {
                let out: f64 = (0..na).map(|a| x(s, a, i)).sum();
                flag(Constraint::Conservation { state: s, phase: i }, into - out);
            }
        }
        Ok(MembershipReport { violations })
    }

    /// Writes a member point as a convex combination of at most `dim + 1`
    /// cycle embeddings.
    ///
    /// Greedy path extraction: from the anchor at phase 1, follow the
    /// largest residual coordinate at each phase (lowest action on ties),
    /// remove the path's bottleneck weight, and repeat until less than
    /// [`FLOW_TOLERANCE`] of outflow is left. Weights are renormalized to 1.
    pub fn decompose(&self, p: &FlowPoint) -> Result<VertexDistribution> {
        let report = self.check_membership(p)?;
        if let Some(v) = report.violations.first() {
            return Err(input(format!(
                "point is not in the polytope: {:?} off by {:e} ({} violations)",
                v.constraint,
                v.residual,
                report.violations.len()
            )));
        }
        let m = &self.dmdp;
        let mut residual: Vec<f64> = p.coords.iter().map(|&v| v.max(0.0)).collect();
        let mut support: Vec<(Vec<usize>, f64)> = Vec::new();
        let mut path = Vec::with_capacity(self.k);
        let mut coords = Vec::with_capacity(self.k);
        loop {
            let mass: f64 =
                (0..m.num_actions()).map(|a| residual[self.index.flat(self.anchor, a, 1)]).sum();
            if mass < FLOW_TOLERANCE {
                break;
            }
            if support.len() > self.dim() {
                return Err(Error::Internal(format!(
                    "decomposition did not converge within {} extractions (residual mass {mass:e})",
                    self.dim() + 1
                )));
            }
            path.clear();
            coords.clear();
            let mut s = self.anchor;
            for i in 1..=self.k {
                let last = i == self.k;
                let best = (0..m.num_actions())
                    .filter(|&a| !last || m.next(s, a) == self.anchor)
                    .map(|a| (a, self.index.flat(s, a, i)))
                    .fold(None, |best: Option<(usize, usize)>, (a, j)| match best {
                        Some((_, bj)) if residual[bj] >= residual[j] => best,
                        _ => Some((a, j)),
                    });
                match best {
                    Some((a, j)) if residual[j] > 0.0 => {
                        path.push(a);
                        coords.push(j);
                        s = m.next(s, a);
                    }
                    _ => {
                        return Err(Error::Internal(format!(
                            "flow path from state {} stalled at phase {i} (residual mass {mass:e})",
                            self.anchor
                        )))
                    }
                }
            }
            let (bottleneck, weight) = coords
                .iter()
                .map(|&j| (j, residual[j]))
                .fold((coords[0], f64::INFINITY), |acc, (j, v)| if v < acc.1 { (j, v) } else { acc });
            for &j in &coords {
                residual[j] = (residual[j] - weight).max(0.0);
            }
            residual[bottleneck] = 0.0;
            support.push((path.clone(), weight));
        }
        let total: f64 = support.iter().map(|(_, w)| w).sum();
        if support.is_empty() || total.is_nan() || total <= 0.0 {
            return Err(Error::Internal("decomposition extracted no mass".into()));
        }
        for (_, w) in &mut support {
            *w /= total;
        }
        VertexDistribution::new(support)
    }

    /// `Σ_i w_i x(c_i)`.
    pub fn mean_point(&self, dist: &VertexDistribution) -> Result<FlowPoint> {
        let mut x = FlowPoint::zeros(self.dim());
        for (c, w) in dist.support() {
            self.check_cycle(c)?;
            for j in self.cycle_support(c) {
                x.coords[j] += w;
            }
        }
        Ok(x)
    }

    /// Reward collected by playing `cycle` from the anchor starting at round
    /// `epoch_start`, summed in playing order.
    pub fn cycle_reward(&self, rewards: &RewardSequence, epoch_start: usize, cycle: &[usize]) -> f64 {
        self.cycle_states(cycle)
            .into_iter()
            .zip(cycle)
            .enumerate()
            .map(|(i, (s, &a))| rewards.reward(epoch_start + i, s, a))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{d2, dswap, indicator_rewards, A, B};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn poly(m: &Dmdp, k: usize, s: usize) -> FlowPolytope {
        FlowPolytope::new(m, k, s).unwrap()
    }

    #[test]
    fn triplet_index_round_trips() {
        let idx = TripletIndex::new(3, 2, 4).unwrap();
        assert_eq!(idx.dim(), 24);
        for j in 0..idx.dim() {
            let (s, a, i) = idx.triplet(j);
            assert_eq!(idx.flat(s, a, i), j);
        }
        assert!(TripletIndex::new(3, 2, 0).is_err());
    }

    #[test]
    fn cycles_of_fixtures() {
        assert_eq!(poly(&d2(), 2, 0).enumerate_cycles(100).unwrap().cycles, vec![vec![A, A], vec![B, B]]);
        assert_eq!(poly(&dswap(), 2, 0).enumerate_cycles(100).unwrap().cycles, vec![vec![A, A]]);
        assert!(poly(&dswap(), 1, 0).enumerate_cycles(100).unwrap().is_empty());
        assert_eq!(poly(&d2(), 2, 0).count_cycles(), 2);
    }

    #[test]
    fn enumeration_respects_cap() {
        let p = poly(&d2(), 6, 0);
        let n = p.count_cycles();
        assert!(p.enumerate_cycles(n as usize).is_ok());
        assert!(matches!(p.enumerate_cycles(n as usize - 1), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn embeddings_of_d2_cycles() {
        let p = poly(&d2(), 2, 0);
        let idx = *p.index();
        let bb = p.embed(&[B, B]).unwrap();
        let ones: Vec<_> = (0..8).filter(|&j| bb.coords[j] == 1.0).collect();
        assert_eq!(ones, vec![idx.flat(0, B, 1), idx.flat(0, B, 2)]);
        let aa = p.embed(&[A, A]).unwrap();
        let ones: Vec<_> = (0..8).filter(|&j| aa.coords[j] == 1.0).collect();
        assert_eq!(ones, vec![idx.flat(0, A, 1), idx.flat(1, A, 2)]);
        assert!(p.embed(&[A, B]).is_err());
        assert!(p.embed(&[B]).is_err());
    }

    #[test]
    fn membership_examples() {
        let p = poly(&d2(), 2, 0);
        let aa = p.embed(&[A, A]).unwrap();
        let bb = p.embed(&[B, B]).unwrap();
        assert!(p.check_membership(&aa).unwrap().is_member());
        let mut mid = FlowPoint::zeros(8);
        mid.add_scaled(0.5, &aa);
        mid.add_scaled(0.5, &bb);
        assert!(p.check_membership(&mid).unwrap().is_member());
        let zero = p.check_membership(&FlowPoint::zeros(8)).unwrap();
        assert!(!zero.is_member());
        assert_eq!(zero.violations[0].constraint, Constraint::UnitOutflow);
        assert!(p.check_membership(&FlowPoint::zeros(7)).is_err());
    }

    #[test]
    fn broken_conservation_is_reported() {
        let p = poly(&d2(), 2, 0);
        let mut x = p.embed(&[A, A]).unwrap();
        // Move the phase-2 mass from (1, a) to (0, b): wrong state at phase 2.
        x.coords[p.index().flat(1, A, 2)] = 0.0;
        x.coords[p.index().flat(0, B, 2)] = 1.0;
        let report = p.check_membership(&x).unwrap();
        assert!(report
            .violations
            .iter()
            .any(|v| v.constraint == Constraint::Conservation { state: 1, phase: 2 }));
    }

    #[test]
    fn decompose_examples() {
        let p = poly(&d2(), 2, 0);
        let aa = p.embed(&[A, A]).unwrap();
        let bb = p.embed(&[B, B]).unwrap();
        let d = p.decompose(&bb).unwrap();
        assert_eq!(d.support(), &[(vec![B, B], 1.0)]);

        let mut mid = FlowPoint::zeros(8);
        mid.add_scaled(0.5, &aa);
        mid.add_scaled(0.5, &bb);
        let mut d = p.decompose(&mid).unwrap().support().to_vec();
        d.sort_by(|x, y| x.0.cmp(&y.0));
        assert_eq!(d, vec![(vec![A, A], 0.5), (vec![B, B], 0.5)]);

        assert!(p.decompose(&FlowPoint::zeros(8)).is_err());
    }

    #[test]
    fn epoch_vectors() {
        let m = d2();
        let p = poly(&m, 2, 0);
        let half = RewardSequence::constant(4, 2, 2, 0.5).unwrap();
        let rho = epoch_reward_vector(&half, 1, p.index()).unwrap();
        assert!(rho.coords.iter().all(|&v| v == 0.5));
        assert!(epoch_reward_vector(&half, 4, p.index()).is_err());
        assert!(epoch_reward_vector(&half, 0, p.index()).is_err());

        let pay = indicator_rewards(4, 2, 2, &[(0, B)]);
        let rho = epoch_reward_vector(&pay, 3, p.index()).unwrap();
        assert_eq!(rho.dot(&p.embed(&[B, B]).unwrap()), 2.0);
        assert_eq!(rho.dot(&p.embed(&[A, A]).unwrap()), 0.0);
    }

    #[test]
    fn sampling_frequencies() {
        let single = VertexDistribution::new(vec![(vec![B, B], 1.0)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!((0..100).all(|_| single.sample(&mut rng) == [B, B]));

        let p = poly(&d2(), 2, 0);
        let dist = VertexDistribution::new(vec![(vec![A, A], 0.5), (vec![B, B], 0.5)]).unwrap();
        let draws = 100_000;
        let mut hits = 0usize;
        let mut mean = FlowPoint::zeros(8);
        for _ in 0..draws {
            let c = dist.sample(&mut rng).to_vec();
            hits += usize::from(c == [A, A]);
            mean.add_scaled(1.0 / draws as f64, &p.embed(&c).unwrap());
        }
        let freq = hits as f64 / draws as f64;
        assert!((freq - 0.5).abs() <= 0.01, "frequency {freq}");
        let target = p.mean_point(&dist).unwrap();
        assert!(mean.sup_distance(&target) <= 0.01);
    }

    #[test]
    fn distribution_validation() {
        assert!(VertexDistribution::new(vec![]).is_err());
        assert!(VertexDistribution::new(vec![(vec![0], 0.5)]).is_err());
        assert!(VertexDistribution::new(vec![(vec![0], 1.5), (vec![1], -0.5)]).is_err());
    }
}
