//! Command-line front end: `verify`, `run` and `analytic`.
//!
//! Every command prints `key: value` lines on stdout. Exit status is 0 on
//! success, 1 when a computed identity or invariant is out of tolerance and
//! 2 for usage, config or output-path errors.

pub mod args;
pub mod commands;
pub mod config;
pub mod export;
pub mod failure;
pub mod manifest;
pub mod report;

pub use args::{Cli, Command};
pub use commands::{execute, Execution};
pub use failure::Failure;
pub use manifest::RunManifest;
pub use report::Report;
