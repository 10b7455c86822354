//! Monte Carlo experiments and their comparison with exact or limiting laws.
//!
//! Replicate `i` of an experiment always draws from stream `i` of its master
//! seed and results are gathered in replicate order, so reports do not depend
//! on the number of worker threads.

mod experiment;
mod extremes;
mod gof;

use thiserror::Error;

use crate::exactdist::ExactError;
use crate::samplers::SamplerError;

pub use experiment::{
    collect_values, compare, observe, reference_for, run, run_with_jobs, size_biasing_check,
    size_biasing_rows, uniform_tree_statistic, Experiment, Reference, SamplerKind, SizeBiasRow,
    Statistic, TestReport, EXACT_REFERENCE_CAP, TREE_U_BINS,
};
pub use extremes::{extremes_scan, prediction, ExtremesReport, ExtremesRow};
pub use gof::{chi_square, ks_distance, pool_bins, tv_distance, ChiSquareResult};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HarnessError {
    #[error("invalid experiment: {0}")]
    InvalidExperiment(String),
    #[error("no reference law: {0}")]
    IncompatibleReference(String),
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Sampler(#[from] SamplerError),
}

impl From<ExactError> for HarnessError {
    fn from(e: ExactError) -> Self {
        match e {
            ExactError::Domain(msg) => HarnessError::Domain(msg),
        }
    }
}
