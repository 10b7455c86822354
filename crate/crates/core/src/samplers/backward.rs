use crate::chain::MoranStep;
use crate::forest::RootedForest;
use crate::rng::RngStream;

use super::{check_n, SamplerError};

#[derive(Clone, Debug)]
pub struct BackwardSample {
    pub forest: RootedForest,
    /// Transitions read before every vertex had been disconnected once.
    pub pairs_consumed: u64,
}

/// Reads i.i.d. transitions backward from the focal time. Each vertex `w` is
/// linked to its last mother `m(w)` iff `m(w)` was itself born earlier.
pub fn sample_backward(n: usize, rng: &mut RngStream) -> Result<BackwardSample, SamplerError> {
    check_n(n)?;
    let mut seen = vec![false; n + 1];
    let mut order = Vec::with_capacity(n);
    let mut mother = vec![0usize; n];
    let mut t = 0u64;
    while order.len() < n {
        let MoranStep { u, v } = MoranStep::random(n, rng);
        t += 1;
        if !seen[v] {
            seen[v] = true;
            order.push(v);
            mother[v - 1] = u;
        }
    }
    Ok(BackwardSample {
        forest: backward_outcome(&order, &mother),
        pairs_consumed: t,
    })
}

/// Forest built from the vertices in the order they are first met going back in
/// time (`order[0]` was born most recently) and the mother of each
/// (`mother[w - 1]`): `w` keeps its mother iff the mother was born before `w`.
pub fn backward_outcome(order: &[usize], mother: &[usize]) -> RootedForest {
    let n = order.len();
    let mut rank = vec![0usize; n + 1];
    for (i, &w) in order.iter().enumerate() {
        rank[w] = i;
    }
    let parents = (1..=n)
        .map(|w| {
            let m = mother[w - 1];
            if rank[m] > rank[w] {
                m
            } else {
                0
            }
        })
        .collect();
    RootedForest::from_parents_unchecked(parents)
}
