//! Brute-force reference implementations shared by the integration tests.
#![allow(dead_code)]

use marcopolo::dmdp::Dmdp;
use rand::Rng;

pub fn random_dmdp<R: Rng>(rng: &mut R, n: usize, na: usize) -> Dmdp {
    Dmdp::new(n, na, (0..n * na).map(|_| rng.random_range(0..n)).collect()).unwrap()
}

/// Every transition table with `n` states and `na` actions.
pub fn all_dmdps(n: usize, na: usize) -> impl Iterator<Item = Dmdp> {
    let cells = n * na;
    let total = n.pow(cells as u32);
    (0..total).map(move |mut code| {
        let table = (0..cells)
            .map(|_| {
                let t = code % n;
                code /= n;
                t
            })
            .collect();
        Dmdp::new(n, na, table).unwrap()
    })
}

/// `reach[s][t]`: some walk of length ≥ 0 goes from `s` to `t`.
pub fn reachability(m: &Dmdp) -> Vec<Vec<bool>> {
    let n = m.num_states();
    let mut r = vec![vec![false; n]; n];
    for s in 0..n {
        r[s][s] = true;
        for a in 0..m.num_actions() {
            r[s][m.next(s, a)] = true;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    r
}

/// The unique terminal class, or `None` when there are several.
pub fn naive_closed_set(m: &Dmdp) -> Option<Vec<usize>> {
    let r = reachability(m);
    let n = m.num_states();
    // A state is in a terminal class iff everything it reaches reaches it back.
    let terminal: Vec<usize> = (0..n).filter(|&s| (0..n).all(|t| !r[s][t] || r[t][s])).collect();
    let first = *terminal.first()?;
    terminal.iter().all(|&t| r[first][t] && r[t][first]).then_some(terminal)
}

/// Vertex sets of every simple cycle, as bitmasks.
pub fn simple_cycles(m: &Dmdp) -> Vec<u32> {
    let n = m.num_states();
    let mut adj = vec![0u32; n];
    for (s, a) in m.pairs() {
        adj[s] |= 1 << m.next(s, a);
    }
    let mut out = Vec::new();
    fn dfs(start: usize, v: usize, visited: u32, adj: &[u32], out: &mut Vec<u32>) {
        for w in 0..adj.len() {
            if adj[v] & (1 << w) == 0 || w < start {
                continue;
            }
            if w == start {
                out.push(visited);
            } else if visited & (1 << w) == 0 {
                dfs(start, w, visited | (1 << w), adj, out);
            }
        }
    }
    for s in 0..n {
        dfs(s, s, 1 << s, &adj, &mut out);
    }
    out.sort_unstable();
    out.dedup();
    out
}

pub fn naive_unichain(m: &Dmdp) -> bool {
    let c = simple_cycles(m);
    c.iter().enumerate().all(|(i, x)| c[i + 1..].iter().all(|y| x & y != 0))
}

fn bool_mul(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).any(|k| a[i][k] && b[k][j])).collect()).collect()
}

/// Smallest `d ≥ 1` with exact-length-`d` walks between every ordered pair
/// of distinct states of `closed`, by repeated boolean matrix products.
pub fn naive_uniform_length(m: &Dmdp, closed: &[usize]) -> Option<usize> {
    let c = closed.len();
    let one: Vec<Vec<bool>> =
        closed.iter().map(|&s| closed.iter().map(|&t| m.pairs().any(|(x, a)| x == s && m.next(x, a) == t)).collect()).collect();
    let cap = (c.saturating_sub(1)).pow(2) + 1;
    let mut power = one.clone();
    for d in 1..=cap {
        if (0..c).all(|i| (0..c).all(|j| i == j || power[i][j])) {
            return Some(d);
        }
        power = bool_mul(&power, &one);
    }
    None
}

/// `C_{k,s̄}` by running every action sequence, in lexicographic order.
pub fn naive_cycles(m: &Dmdp, k: usize, anchor: usize) -> Vec<Vec<usize>> {
    let na = m.num_actions();
    let mut out = Vec::new();
    for code in 0..na.pow(k as u32) {
        let mut c = code;
        let mut seq = vec![0; k];
        for slot in seq.iter_mut().rev() {
            *slot = c % na;
            c /= na;
        }
        if m.run_actions(anchor, &seq).unwrap() == anchor {
            out.push(seq);
        }
    }
    out
}

/// Flat coordinate of `(s, a, i)`, phase-major.
pub fn flat(m: &Dmdp, s: usize, a: usize, i: usize) -> usize {
    ((i - 1) * m.num_states() + s) * m.num_actions() + a
}

/// The flow constraints evaluated exactly on an integer point.
pub fn satisfies_flow(m: &Dmdp, k: usize, anchor: usize, x: &[u8]) -> bool {
    let (n, na) = (m.num_states(), m.num_actions());
    let at = |s, a, i| x[flat(m, s, a, i)] as i64;
    if (0..na).map(|a| at(anchor, a, 1)).sum::<i64>() != 1 {
        return false;
    }
    for (s, a) in m.pairs() {
        if s != anchor && at(s, a, 1) != 0 {
            return false;
        }
        if m.next(s, a) != anchor && at(s, a, k) != 0 {
            return false;
        }
    }
    for i in 2..=k {
        for t in 0..n {
            let into: i64 = m.pairs().filter(|&(s, a)| m.next(s, a) == t).map(|(s, a)| at(s, a, i - 1)).sum();
            let out: i64 = (0..na).map(|a| at(t, a, i)).sum();
            if into != out {
                return false;
            }
        }
    }
    true
}

/// Calls `f` with every 0/1 vector of length `dim` holding exactly `ones` ones.
pub fn for_each_binary(dim: usize, ones: usize, mut f: impl FnMut(&[u8])) {
    let mut x = vec![0u8; dim];
    fn rec(x: &mut [u8], from: usize, left: usize, f: &mut dyn FnMut(&[u8])) {
        if left == 0 {
            f(x);
            return;
        }
        for j in from..=x.len() - left {
            x[j] = 1;
            rec(x, j + 1, left - 1, f);
            x[j] = 0;
        }
    }
    rec(&mut x, 0, ones, &mut f);
}

/// Corpus for the vertex-equivalence check: every table with `N ≤ 2`, every
/// single-action table with `N ≤ 3`, then seeded random tables up to `N = 4`,
/// `A = 2`.
pub fn polytope_corpus(random: usize, seed: u64) -> Vec<Dmdp> {
    use rand::SeedableRng;
    let mut out: Vec<Dmdp> = Vec::new();
    for (n, na) in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)] {
        out.extend(all_dmdps(n, na));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for i in 0..random {
        let n = 3 + i % 2;
        out.push(random_dmdp(&mut rng, n, 2));
    }
    out
}
