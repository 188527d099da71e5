//! Command implementations behind the `gasket` binary.

pub mod commands;
pub mod config;
pub mod error;
pub mod inputs;
pub mod svg;
pub mod sweep;

pub use config::RunConfig;
pub use error::{CliError, CliResult};
