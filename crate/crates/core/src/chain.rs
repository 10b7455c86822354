//! The disconnect-and-reattach Markov chain and its Cannings generalization.

use thiserror::Error;

use crate::forest::{DirectedGraph, RootedForest};
use crate::rng::RngStream;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("invalid step ({u}, {v}) on {n} vertices")]
    InvalidStep { u: usize, v: usize, n: usize },
    #[error("offspring vector sums to {sum}, expected {n}")]
    InvalidOffspring { sum: usize, n: usize },
    #[error("offspring vector has length {len}, forest has {n} vertices")]
    OffspringLength { len: usize, n: usize },
}

/// One transition: disconnect `v`, then add the edge `u -> v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MoranStep {
    pub u: usize,
    pub v: usize,
}

impl MoranStep {
    pub fn new(u: usize, v: usize, n: usize) -> Result<Self, ChainError> {
        if u == v || u == 0 || v == 0 || u > n || v > n {
            return Err(ChainError::InvalidStep { u, v, n });
        }
        Ok(Self { u, v })
    }

    /// Uniform ordered pair of distinct vertices.
    pub fn random(n: usize, rng: &mut RngStream) -> Self {
        let u = rng.vertex(n);
        let v = rng.vertex_except(n, u);
        Self { u, v }
    }
}

pub fn moran_step(g: &DirectedGraph, step: MoranStep) -> Result<DirectedGraph, ChainError> {
    let mut next = g.clone();
    apply_moran_step(&mut next, step)?;
    Ok(next)
}

pub fn apply_moran_step(g: &mut DirectedGraph, step: MoranStep) -> Result<(), ChainError> {
    let MoranStep { u, v } = MoranStep::new(step.u, step.v, g.n())?;
    g.disconnect(v);
    g.insert_edge(u, v);
    Ok(())
}

#[derive(Clone, Debug)]
pub struct ChainRun {
    pub state: DirectedGraph,
    /// First time at which the state was a rooted forest, if it happened.
    pub absorption_time: Option<u64>,
}

/// Runs `steps` uniform transitions from `g0`. `observe` sees `(t, step, state)` after each step.
pub fn run_chain<F>(g0: &DirectedGraph, steps: u64, rng: &mut RngStream, mut observe: F) -> ChainRun
where
    F: FnMut(u64, MoranStep, &DirectedGraph),
{
    let n = g0.n();
    let mut state = g0.clone();
    let mut absorption_time = state.is_forest().then_some(0);
    if n < 2 {
        return ChainRun {
            state,
            absorption_time,
        };
    }
    for t in 1..=steps {
        let step = MoranStep::random(n, rng);
        apply_moran_step(&mut state, step).expect("random steps are valid");
        // forests are closed under the dynamics, so stop checking once absorbed
        if absorption_time.is_none() && state.is_forest() {
            absorption_time = Some(t);
        }
        observe(t, step, &state);
    }
    ChainRun {
        state,
        absorption_time,
    }
}

/// Applies a fixed list of transitions.
pub fn run_scripted(g0: &DirectedGraph, steps: &[MoranStep]) -> Result<DirectedGraph, ChainError> {
    let mut state = g0.clone();
    for &s in steps {
        apply_moran_step(&mut state, s)?;
    }
    Ok(state)
}

/// Offspring numbers `xi(v)` of a Cannings generation; they sum to `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OffspringVector {
    xi: Vec<usize>,
}

impl OffspringVector {
    pub fn new(xi: Vec<usize>) -> Result<Self, ChainError> {
        let sum: usize = xi.iter().sum();
        if sum != xi.len() {
            return Err(ChainError::InvalidOffspring { sum, n: xi.len() });
        }
        Ok(Self { xi })
    }

    /// Uniform permutation of `(2, 0, 1, ..., 1)`: the Moran transition.
    pub fn moran(n: usize, rng: &mut RngStream) -> Self {
        let mut xi = vec![1; n];
        xi[0] = 2;
        xi[1] = 0;
        rng.shuffle(&mut xi);
        Self { xi }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.xi
    }

    pub fn is_dead(&self, v: usize) -> bool {
        self.xi[v - 1] == 0
    }
}

/// One Cannings transition: dead vertices are disconnected, then each gets a
/// mother drawn uniformly among assignments giving live `v` exactly `xi(v) - 1` children.
pub fn cannings_step(
    f: &RootedForest,
    xi: &OffspringVector,
    rng: &mut RngStream,
) -> Result<RootedForest, ChainError> {
    let n = f.n();
    if xi.xi.len() != n {
        return Err(ChainError::OffspringLength {
            len: xi.xi.len(),
            n,
        });
    }
    let mut parents = f.parents().to_vec();
    for v in 1..=n {
        let p = parents[v - 1];
        if xi.is_dead(v) || (p != 0 && xi.is_dead(p)) {
            parents[v - 1] = 0;
        }
    }
    let mut slots: Vec<usize> = (1..=n)
        .flat_map(|v| std::iter::repeat_n(v, xi.xi[v - 1].saturating_sub(1)))
        .collect();
    rng.shuffle(&mut slots);
    let dead = (1..=n).filter(|&v| xi.is_dead(v));
    for (v, mother) in dead.zip(slots) {
        parents[v - 1] = mother;
    }
    Ok(RootedForest::from_parents_unchecked(parents))
}
