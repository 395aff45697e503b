//! Command-line front end and the sweeps it runs.

pub mod checks;
pub mod cli;
pub mod golden;
pub mod report;

pub use cli::{run, Cli, CliError};
pub use report::{CheckReport, Failure};
