//! Exact finite-n laws, limiting laws, tail bounds and asymptotic centering
//! sequences for the Moran forest.
//!
//! Laws that are used for exact identities are generic over [`Weight`], so the
//! same code runs with big rationals (small n, zero tolerance) and with floats
//! (large n).

mod asymptotics;
mod degree;
mod ntrees;
mod pmf;
mod quadrature;
mod treesize;
mod yule;

use thiserror::Error;

pub use asymptotics::{maxdegree_prediction, maxtree_prediction, tree_tail_asymptotic, ALPHA};
pub use degree::{
    degree_limit_pmf, degree_limit_prob, degree_limit_tail, degree_pgf_closed_form, degree_pmf,
    degree_tail_bounds,
};
pub use ntrees::{a_table, clt_normalized_dist, ntrees_pmf, ntrees_pmf_via_a, NormalizedLaw};
pub use pmf::{add_scaled, Pmf, Weight};
pub use quadrature::integrate;
pub use treesize::{
    h1_pmf, limit_tree1_pmf, limit_tree1_table, limit_tree1_tail, limit_tree_u_pmf,
    limit_tree_u_table, limit_tree_u_tail, t1_conditional, t1_pmf, t1_pmf_f64,
};
pub use yule::{
    lambda_n, yule_continuous_tail, yule_law, yule_mixture_tail, yule_sandwich, yule_tail_f64,
    YuleChainLaw, YuleRow, YuleVariant,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExactError {
    #[error("domain error: {0}")]
    Domain(String),
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T, ExactError> {
    Err(ExactError::Domain(msg.into()))
}

pub(crate) fn check_n(n: usize) -> Result<(), ExactError> {
    if n < 2 {
        domain(format!("n = {n}, need n >= 2"))
    } else {
        Ok(())
    }
}

/// Arithmetic used for a probability table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Rational,
    Float,
}

/// Emitted when a truncated limit table leaves more than `1e-15` of mass out.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncationWarning {
    pub kmax: usize,
    pub tail_mass: f64,
}

pub const TRUNCATION_CUTOFF: f64 = 1e-15;

/// Truncation `k <= kmax` of a limit law on the integers.
#[derive(Clone, Debug)]
pub struct LimitTable {
    pub pmf: Pmf<f64>,
    /// Mass of `{k > kmax}`.
    pub tail_mass: f64,
    pub warning: Option<TruncationWarning>,
}

impl LimitTable {
    pub(crate) fn new(pmf: Pmf<f64>, tail_mass: f64) -> Self {
        let kmax = pmf.max() as usize;
        let warning =
            (tail_mass > TRUNCATION_CUTOFF).then_some(TruncationWarning { kmax, tail_mass });
        Self {
            pmf,
            tail_mass,
            warning,
        }
    }
}
