//! Command-line front end for `boxpart-core`: exact distributions, moments,
//! convergence tables, Ferrers-diagram diagnostics, brute-force oracle runs
//! and seeded sampling, emitted as JSON or CSV.

pub mod cli;
pub mod commands;
pub mod error;
pub mod output;

pub use error::CliError;
pub use output::{Format, OutputDocument, FORMAT_VERSION};
