//! Verification campaigns and report plumbing behind the `biortho` binary.
//!
//! Each CLI subcommand maps to one campaign in [`campaigns`]; campaigns are
//! plain functions so the acceptance suite can drive them directly.

pub mod campaigns;
pub mod config;
pub mod report;

pub use config::{RunConfig, SystemChoice, WeightChoice};
pub use report::{CliError, Report};
