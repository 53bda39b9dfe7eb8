//! Command-line harness for `gnpmod-core`: edge-list and partition files,
//! JSON run configurations, CSV and text reports, and seeded multi-trial
//! experiments that give the same rows at any thread count.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod error;
pub mod experiments;
pub mod io;
pub mod report;

pub use error::{CliError, CliResult};
