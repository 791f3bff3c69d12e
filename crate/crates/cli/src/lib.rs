//! Batch verification driver: expands a grid config into points, evaluates
//! them in parallel and assembles a report.

pub mod config;
pub mod points;
pub mod report;
pub mod run;

pub use config::{RunConfig, SuiteSpec};
pub use report::{Entry, Report, Status, Summary};
pub use run::run;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(String),
}
