use crate::forest::RootedForest;
use crate::rng::RngStream;

use super::{check_n, SamplerError};

/// Attachment targets `(U(1), ..., U(n))` with `U(l) != l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UaVector {
    u: Vec<usize>,
}

impl UaVector {
    pub fn new(u: Vec<usize>) -> Result<Self, SamplerError> {
        let n = u.len();
        check_n(n)?;
        for (i, &value) in u.iter().enumerate() {
            if value == 0 || value > n || value == i + 1 {
                return Err(SamplerError::InvalidAttachment {
                    index: i + 1,
                    value,
                    n,
                });
            }
        }
        Ok(Self { u })
    }

    pub fn random(n: usize, rng: &mut RngStream) -> Self {
        let u = (1..=n).map(|l| rng.vertex_except(n, l)).collect();
        Self { u }
    }

    pub fn n(&self) -> usize {
        self.u.len()
    }

    pub fn get(&self, l: usize) -> usize {
        self.u[l - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.u
    }

    /// Forest on arrival indices: `l` hangs from `U(l)` iff `U(l) < l`.
    pub fn arrival_forest(&self) -> RootedForest {
        let parents = self
            .u
            .iter()
            .enumerate()
            .map(|(i, &k)| if k < i + 1 { k } else { 0 })
            .collect();
        RootedForest::from_parents_unchecked(parents)
    }
}

/// Everything produced by one run of the uniform attachment construction.
#[derive(Clone, Debug)]
pub struct UaForestRecord {
    pub u: UaVector,
    /// `sigma[l - 1]` is the label given to the `l`-th arrival.
    pub sigma: Vec<usize>,
    sigma_inv: Vec<usize>,
    /// Forest on arrival indices; all edges are increasing.
    pub pre_relabel: RootedForest,
    pub forest: RootedForest,
}

impl UaForestRecord {
    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    /// Step `B_v` at which vertex `v` arrived.
    pub fn arrival_index(&self, v: usize) -> usize {
        self.sigma_inv[v - 1]
    }

    /// Number of steps after `v` arrived, `L_v = n - B_v`.
    pub fn steps_remaining(&self, v: usize) -> usize {
        self.n() - self.arrival_index(v)
    }
}

/// Deterministic part of the construction.
pub fn ua_record(u: UaVector, sigma: Vec<usize>) -> Result<UaForestRecord, SamplerError> {
    let n = u.n();
    let mut sigma_inv = vec![0; n];
    for (i, &s) in sigma.iter().enumerate() {
        if s == 0 || s > n || sigma_inv[s - 1] != 0 {
            return Err(SamplerError::InvalidPermutation(n));
        }
        sigma_inv[s - 1] = i + 1;
    }
    if sigma.len() != n {
        return Err(SamplerError::InvalidPermutation(n));
    }
    let pre_relabel = u.arrival_forest();
    let forest = pre_relabel.relabel(&sigma);
    Ok(UaForestRecord {
        u,
        sigma,
        sigma_inv,
        pre_relabel,
        forest,
    })
}

pub fn sample_ua(n: usize, rng: &mut RngStream) -> Result<UaForestRecord, SamplerError> {
    check_n(n)?;
    let u = UaVector::random(n, rng);
    let sigma = rng.permutation(n);
    ua_record(u, sigma)
}

/// Tree statistics of vertex 1 read off a UA record.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Vertex1Record {
    /// Size of the tree containing vertex 1.
    pub tree_size: usize,
    /// Steps of the construction after the root of that tree arrived.
    pub root_age: usize,
    /// Size of the subtree descending from vertex 1.
    pub descending_size: usize,
}

pub fn vertex1_record(rec: &UaForestRecord) -> Vertex1Record {
    let n = rec.n();
    let b = rec.arrival_index(1);
    let parents = rec.pre_relabel.parents();
    // Edges are increasing, so one pass in arrival order resolves roots.
    let mut root = vec![0usize; n + 1];
    let mut below_b = vec![false; n + 1];
    for l in 1..=n {
        let p = parents[l - 1];
        root[l] = if p == 0 { l } else { root[p] };
        below_b[l] = l == b || (p != 0 && below_b[p]);
    }
    let r = root[b];
    Vertex1Record {
        tree_size: root[1..].iter().filter(|&&x| x == r).count(),
        root_age: n - r,
        descending_size: below_b[1..].iter().filter(|&&x| x).count(),
    }
}
