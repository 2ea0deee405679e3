//! Experiment configuration, execution and result handling.

mod config;
mod presets;
mod result;
mod run;

pub use config::*;
pub use presets::{preset, preset_names, PRESETS};
pub use result::{rate_fit, wip_tail, ExperimentResult, ResultRow, SizeSummary, Summary};
pub use run::{run_experiment, run_experiment_with_threads, THREADS_ENV};
