//! Experiment harness for ridge-function approximation: configuration,
//! network files, deterministic seeding and the experiment runner.

pub mod config;
pub mod error;
pub mod netfile;
pub mod runner;
pub mod seeds;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub use config::{parse_config, ExperimentConfig, ExperimentKind};
pub use error::{AppError, AppResult};
pub use runner::{run, ExperimentReport};
