//! Small named instances used by tests, the CLI self-test and the browser demo.

use crate::dmdp::Dmdp;
use crate::rewards::RewardSequence;

/// Action `a`.
pub const A: usize = 0;
/// Action `b`.
pub const B: usize = 1;

/// Two states, two actions: `a` swaps, `b` stays.
pub fn d2() -> Dmdp {
    Dmdp::new(2, 2, vec![1, 0, 0, 1]).expect("static table")
}

/// Two isolated self-loops, one action.
pub fn dsplit() -> Dmdp {
    Dmdp::new(2, 1, vec![0, 1]).expect("static table")
}

/// Two states, one action that swaps them.
pub fn dswap() -> Dmdp {
    Dmdp::new(2, 1, vec![1, 0]).expect("static table")
}

/// `0 -> 1 -> 2 -> 2` under a single action.
pub fn chain3() -> Dmdp {
    Dmdp::new(3, 1, vec![1, 2, 2]).expect("static table")
}

/// [`dswap`] extended by a third state: `0 -> 1`, `1 -> {0, 2}`, `2 -> 0`.
/// Contains a 2-cycle and a 3-cycle, no self-loop.
pub fn triangle() -> Dmdp {
    Dmdp::new(3, 2, vec![1, 1, 0, 2, 0, 0]).expect("static table")
}

/// Two unichain pieces (a self-loop at 0, and the loop `2 -> 3 -> 2`)
/// joined by `0 <-> 2`. Weakly communicating, not unichain.
pub fn joined_unichains() -> Dmdp {
    // state 0: a -> 0 (loop), b -> 2 ; state 1: a, b -> 0 (transient)
    // state 2: a -> 3, b -> 0 ; state 3: a -> 2, b -> 2
    Dmdp::new(4, 2, vec![0, 2, 0, 0, 3, 0, 2, 2]).expect("static table")
}

/// Four states on a ring `0 -> 1 -> 2 -> 3 -> 0` (action `a`) with
/// self-loops at 0 and 2, and shortcuts `1 -> 0`, `3 -> 1` (action `b`).
pub fn ring4() -> Dmdp {
    Dmdp::new(4, 2, vec![1, 0, 2, 0, 3, 2, 0, 1]).expect("static table")
}

/// Pays 1 on each listed `(state, action)` pair, 0 elsewhere, every round.
pub fn indicator_rewards(
    horizon: usize,
    num_states: usize,
    num_actions: usize,
    pairs: &[(usize, usize)],
) -> RewardSequence {
    let pairs = pairs.to_vec();
    RewardSequence::from_fn(horizon, num_states, num_actions, move |_: usize, s: usize, a: usize| {
        if pairs.contains(&(s, a)) {
            1.0
        } else {
            0.0
        }
    })
    .expect("nonempty shape")
}
