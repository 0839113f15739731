//! Command-line front end for `qvh-core`: argument handling, dispatch and
//! JSON/CSV/table rendering of result envelopes.

pub mod args;
pub mod commands;
pub mod config;
pub mod envelope;
pub mod render;

pub use args::{Cli, Command, Format};
pub use commands::dispatch;
pub use config::{merge_config_file, RunConfig};
pub use envelope::ResultEnvelope;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] qvh_core::Error),
    #[error("{0}")]
    Config(String),
}
