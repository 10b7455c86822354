//! Sampling, exact laws and Monte Carlo verification for the Moran forest, the
//! stationary state of the disconnect-and-reattach chain on labeled graphs.

pub mod bijection;
pub mod chain;
pub mod cli;
pub mod exactdist;
pub mod forest;
pub mod harness;
pub mod oracle;
pub mod rng;
pub mod samplers;
