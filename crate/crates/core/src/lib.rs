//! Quenched limit theorems for sums of random weights along randomly selected
//! configurations: environment models, selection schemes with exact inclusion
//! probabilities, a two-level Monte Carlo estimator, limit targets, distances,
//! bound calculators and an experiment harness.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod environments;
pub mod error;
pub mod harness;
pub mod quenched;
pub mod rng;
pub mod selectors;
pub mod stats;
pub mod theory;

pub use error::{Error, Result};
