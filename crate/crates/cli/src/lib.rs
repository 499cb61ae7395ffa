//! Library half of the `poincare` binary: spec parsing, commands and output.

pub mod error;
pub mod output;
pub mod reproduce;
pub mod run;
pub mod spec;

pub use error::CliError;
pub use output::{render, Format};
pub use run::{cmd_analyze, cmd_reproduce, cmd_verify, Claim, RunResult};
pub use spec::DistSpec;
