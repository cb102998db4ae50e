//! Structural analysis of a DMDP's transition graph: the closed
//! communicating set, the unichain test, the uniform path length `d`, and
//! fixed-length path extraction.

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};

use crate::dmdp::Dmdp;
use crate::error::{input, Error, Result};

/// Largest state count accepted by [`is_unichain`].
pub const UNICHAIN_MAX_STATES: usize = 20;

/// The state graph `{(s, s') : ∃a. f(s, a) = s'}` as sorted, deduplicated
/// successor lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionGraph {
    succ: Vec<Vec<usize>>,
}

impl TransitionGraph {
    pub fn num_states(&self) -> usize {
        self.succ.len()
    }

    pub fn successors(&self, s: usize) -> &[usize] {
        &self.succ[s]
    }

    pub fn has_edge(&self, s: usize, t: usize) -> bool {
        self.succ[s].binary_search(&t).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ.iter().enumerate().flat_map(|(s, ts)| ts.iter().map(move |&t| (s, t)))
    }
}

pub fn transition_graph(m: &Dmdp) -> TransitionGraph {
    let succ = (0..m.num_states())
        .map(|s| {
            let mut ts: Vec<usize> = (0..m.num_actions()).map(|a| m.next(s, a)).collect();
            ts.sort_unstable();
            ts.dedup();
            ts
        })
        .collect();
    TransitionGraph { succ }
}

/// The unique terminal strongly connected component and the remaining
/// (transient) states.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedSet {
    pub closed: Vec<usize>,
    pub transient: Vec<usize>,
}

impl ClosedSet {
    pub fn contains(&self, s: usize) -> bool {
        self.closed.binary_search(&s).is_ok()
    }
}

/// Splits the states into the closed communicating set and transient states.
/// Fails with [`Error::Config`] when there are several terminal components,
/// i.e. the DMDP is not weakly communicating.
pub fn closed_communicating_set(m: &Dmdp) -> Result<ClosedSet> {
    let g = transition_graph(m);
    let mut pg = DiGraph::<(), ()>::with_capacity(g.num_states(), 0);
    let nodes: Vec<_> = (0..g.num_states()).map(|_| pg.add_node(())).collect();
    for (s, t) in g.edges() {
        pg.add_edge(nodes[s], nodes[t], ());
    }
    let sccs = tarjan_scc(&pg);
    let mut component = vec![0usize; g.num_states()];
    for (i, scc) in sccs.iter().enumerate() {
        for n in scc {
            component[n.index()] = i;
        }
    }
    let terminal: Vec<usize> = (0..sccs.len())
        .filter(|&c| {
            sccs[c]
                .iter()
                .all(|n| g.successors(n.index()).iter().all(|&t| component[t] == c))
        })
        .collect();
    // Every state reaches some terminal component, so a unique terminal
    // component is reachable from everywhere.
    match terminal.as_slice() {
        [c] => {
            let mut closed: Vec<usize> = sccs[*c].iter().map(|n| n.index()).collect();
            closed.sort_unstable();
            let transient = (0..g.num_states()).filter(|&s| component[s] != *c).collect();
            Ok(ClosedSet { closed, transient })
        }
        _ => Err(Error::Config(format!(
            "not weakly communicating: {} closed components",
            terminal.len()
        ))),
    }
}

/// True iff no two vertex-disjoint cycles exist in the transition graph.
///
/// Computes, for every vertex subset, whether the induced subgraph is
/// acyclic (peeling sinks), then looks for a subset that carries a cycle
/// whose complement also carries one.
pub fn is_unichain(m: &Dmdp) -> Result<bool> {
    let n = m.num_states();
    if n > UNICHAIN_MAX_STATES {
        return Err(input(format!(
            "unichain analysis supports at most {UNICHAIN_MAX_STATES} states, got {n}"
        )));
    }
    let g = transition_graph(m);
    let succ_mask: Vec<u32> = (0..n)
        .map(|s| g.successors(s).iter().fold(0u32, |acc, &t| acc | (1 << t)))
        .collect();
    let full: u32 = (1u32 << n) - 1;
    let mut acyclic = vec![false; 1usize << n];
    acyclic[0] = true;
    for set in 1..=full {
        // A set is acyclic iff it has a sink whose removal leaves an acyclic set.
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if succ_mask[v] & set == 0 && acyclic[(set & !(1 << v)) as usize] {
                acyclic[set as usize] = true;
                break;
            }
        }
    }
    let disjoint = (1..full).any(|set| !acyclic[set as usize] && !acyclic[(full & !set) as usize]);
    Ok(!disjoint)
}

/// Boolean matrix over a fixed vertex list, rows stored as bit blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
struct BitMatrix {
    n: usize,
    rows: Vec<Vec<u64>>,
}

impl BitMatrix {
    fn zeros(n: usize) -> Self {
        Self { n, rows: vec![vec![0; n.div_ceil(64)]; n] }
    }

    fn set(&mut self, i: usize, j: usize) {
        self.rows[i][j / 64] |= 1 << (j % 64);
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i][j / 64] >> (j % 64) & 1 == 1
    }

    /// `self · other` over the boolean semiring.
    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) {
                    for (o, r) in out.rows[i].iter_mut().zip(&other.rows[j]) {
                        *o |= r;
                    }
                }
            }
        }
        out
    }

    fn off_diagonal_full(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j)))
    }
}

/// Smallest `d ≥ 1` such that every ordered pair of distinct states in
/// `closed` is joined by an action sequence of length exactly `d`.
///
/// The search stops at `(n - 1)^2 + 1` for `n = |closed|`.
pub fn minimal_uniform_path_length(m: &Dmdp, closed: &[usize]) -> Result<Option<usize>> {
    if closed.is_empty() {
        return Err(input("closed set is empty"));
    }
    let mut position = vec![usize::MAX; m.num_states()];
    for (i, &s) in closed.iter().enumerate() {
        m.check_state(s)?;
        position[s] = i;
    }
    let n = closed.len();
    let mut step = BitMatrix::zeros(n);
    for (i, &s) in closed.iter().enumerate() {
        for a in 0..m.num_actions() {
            let j = position[m.next(s, a)];
            if j != usize::MAX {
                step.set(i, j);
            }
        }
    }
    let cap = (n - 1) * (n - 1) + 1;
    let mut reach = step.clone();
    for d in 1..=cap {
        if reach.off_diagonal_full() {
            return Ok(Some(d));
        }
        reach = reach.mul(&step);
    }
    Ok(None)
}

/// An action sequence of exactly `len` steps from `from` to `to`, choosing
/// the lowest feasible action at every step.
pub fn fixed_length_path(m: &Dmdp, from: usize, to: usize, len: usize) -> Result<Vec<usize>> {
    m.check_state(from)?;
    m.check_state(to)?;
    let n = m.num_states();
    // can_finish[r][s]: `to` is reachable from s in exactly r steps.
    let mut can_finish = vec![vec![false; n]; len + 1];
    can_finish[0][to] = true;
    for r in 1..=len {
        let (done, rest) = can_finish.split_at_mut(r);
        let prev = &done[r - 1];
        for (s, slot) in rest[0].iter_mut().enumerate() {
            *slot = (0..m.num_actions()).any(|a| prev[m.next(s, a)]);
        }
    }
    if !can_finish[len][from] {
        return Err(Error::NoPath { from, to, len });
    }
    let mut path = Vec::with_capacity(len);
    let mut s = from;
    for r in (1..=len).rev() {
        let a = (0..m.num_actions())
            .find(|&a| can_finish[r - 1][m.next(s, a)])
            .expect("layer table guarantees a continuation");
        path.push(a);
        s = m.next(s, a);
    }
    Ok(path)
}

/// Everything [`analyze`] learns about a DMDP.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureReport {
    pub closed_set: Vec<usize>,
    pub transient_states: Vec<usize>,
    pub weakly_communicating: bool,
    /// `None` when the state count exceeds [`UNICHAIN_MAX_STATES`].
    pub unichain: Option<bool>,
    pub uniform_d: Option<usize>,
}

pub fn analyze(m: &Dmdp) -> StructureReport {
    let unichain = is_unichain(m).ok();
    match closed_communicating_set(m) {
        Ok(set) => {
            let d = minimal_uniform_path_length(m, &set.closed).expect("closed set is valid");
            StructureReport {
                closed_set: set.closed,
                transient_states: set.transient,
                weakly_communicating: true,
                unichain,
                uniform_d: d,
            }
        }
        Err(_) => StructureReport {
            closed_set: Vec::new(),
            transient_states: Vec::new(),
            weakly_communicating: false,
            unichain,
            uniform_d: None,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{chain3, d2, dsplit, dswap, joined_unichains, ring4, triangle, A, B};

    #[test]
    fn graphs_of_fixtures() {
        let e: Vec<_> = transition_graph(&d2()).edges().collect();
        assert_eq!(e, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
        let e: Vec<_> = transition_graph(&dsplit()).edges().collect();
        assert_eq!(e, vec![(0, 0), (1, 1)]);
        let e: Vec<_> = transition_graph(&dswap()).edges().collect();
        assert_eq!(e, vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn closed_sets() {
        let c = closed_communicating_set(&d2()).unwrap();
        assert_eq!((c.closed, c.transient), (vec![0, 1], vec![]));
        let c = closed_communicating_set(&chain3()).unwrap();
        assert_eq!((c.closed, c.transient), (vec![2], vec![0, 1]));
        assert!(matches!(closed_communicating_set(&dsplit()), Err(Error::Config(_))));
    }

    #[test]
    fn unichain_fixtures() {
        assert!(!is_unichain(&dsplit()).unwrap());
        assert!(!is_unichain(&d2()).unwrap());
        assert!(is_unichain(&dswap()).unwrap());
        assert!(is_unichain(&triangle()).unwrap());
        assert!(is_unichain(&chain3()).unwrap());
        assert!(!is_unichain(&ring4()).unwrap());
    }

    #[test]
    fn joined_unichains_lose_the_property() {
        let m = joined_unichains();
        let r = analyze(&m);
        assert!(r.weakly_communicating);
        assert_eq!(r.unichain, Some(false));
        assert_eq!(r.closed_set, vec![0, 2, 3]);
        assert_eq!(r.transient_states, vec![1]);
    }

    #[test]
    fn uniform_lengths() {
        assert_eq!(minimal_uniform_path_length(&d2(), &[0, 1]).unwrap(), Some(1));
        assert_eq!(minimal_uniform_path_length(&dswap(), &[0, 1]).unwrap(), Some(1));
        assert_eq!(minimal_uniform_path_length(&chain3(), &[2]).unwrap(), Some(1));
        // A bare 3-cycle is periodic; no single length serves every pair.
        let cycle3 = Dmdp::new(3, 1, vec![1, 2, 0]).unwrap();
        assert_eq!(minimal_uniform_path_length(&cycle3, &[0, 1, 2]).unwrap(), None);
    }

    #[test]
    fn triangle_uniform_length() {
        // R1 misses 0->2, R2 misses 0->1, R3 misses 0->2, R4 is full off the
        // diagonal. Also frozen against the naive oracle in tests/structure.rs.
        assert_eq!(minimal_uniform_path_length(&triangle(), &[0, 1, 2]).unwrap(), Some(4));
    }

    #[test]
    fn fixed_length_paths() {
        assert_eq!(fixed_length_path(&d2(), 0, 0, 0).unwrap(), Vec::<usize>::new());
        assert_eq!(fixed_length_path(&d2(), 0, 1, 1).unwrap(), vec![A]);
        assert_eq!(fixed_length_path(&d2(), 0, 0, 3).unwrap(), vec![A, A, B]);
        assert_eq!(
            fixed_length_path(&dswap(), 0, 0, 1),
            Err(Error::NoPath { from: 0, to: 0, len: 1 })
        );
        assert!(fixed_length_path(&dswap(), 0, 3, 1).is_err());
    }
}
