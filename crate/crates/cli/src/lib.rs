//! Driver for the almost Kähler identity checks: configuration, parallel
//! evaluation over sample points, and JSON/CSV reports.

pub mod config;
pub mod conventions;
pub mod error;
pub mod report;
pub mod run;

pub use config::{Format, RunConfig};
pub use error::CliError;
pub use report::Report;
pub use run::{run, run_with_threads};
