//! Exact samplers of the Moran forest and related random objects.
//!
//! Three constructions produce the stationary forest of the chain:
//! [`sample_ua`] (uniform attachment plus uniform relabeling),
//! [`sample_backward`] (reading i.i.d. transitions backward in time) and
//! [`sample_via_uniform_tree`] (pruning the decreasing edges of a uniform
//! rooted tree). [`sample_local_limit`] draws the neighbourhood of a typical
//! vertex in the `n -> infinity` limit.

mod backward;
mod local_limit;
mod ua;
mod uniform_tree;

use thiserror::Error;

pub use backward::{backward_outcome, sample_backward, BackwardSample};
pub use local_limit::{
    sample_local_limit, sample_local_limit_with_budget, LocalLimitSample, DEFAULT_NODE_BUDGET,
};
pub use ua::{sample_ua, ua_record, vertex1_record, UaForestRecord, UaVector, Vertex1Record};
pub use uniform_tree::{
    orient_tree, prufer_decode, prune_and_attach, sample_uniform_rooted_tree,
    sample_via_uniform_tree, sample_via_uniform_tree_record, ViaTreeRecord,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SamplerError {
    #[error("n = {n} is too small, need at least {min}")]
    InvalidN { n: usize, min: usize },
    #[error("attachment vector entry {index} = {value} is invalid for n = {n}")]
    InvalidAttachment {
        index: usize,
        value: usize,
        n: usize,
    },
    #[error("not a permutation of 1..={0}")]
    InvalidPermutation(usize),
    #[error("local-limit expansion exceeded {budget} nodes")]
    BudgetExceeded { budget: usize },
}

/// The three equivalent constructions of the Moran forest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ForestSampler {
    UniformAttachment,
    Backward,
    UniformTree,
}

impl ForestSampler {
    pub const ALL: [ForestSampler; 3] =
        [Self::UniformAttachment, Self::Backward, Self::UniformTree];

    pub fn sample(
        self,
        n: usize,
        rng: &mut crate::rng::RngStream,
    ) -> Result<crate::forest::RootedForest, SamplerError> {
        match self {
            Self::UniformAttachment => sample_ua(n, rng).map(|r| r.forest),
            Self::Backward => sample_backward(n, rng).map(|s| s.forest),
            Self::UniformTree => sample_via_uniform_tree(n, rng),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::UniformAttachment => "ua",
            Self::Backward => "backward",
            Self::UniformTree => "uniform-tree",
        }
    }
}

pub(crate) fn check_n(n: usize) -> Result<(), SamplerError> {
    if n < 2 {
        Err(SamplerError::InvalidN { n, min: 2 })
    } else {
        Ok(())
    }
}
