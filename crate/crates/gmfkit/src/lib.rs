//! File formats and the command-line driver for `gmfkit-core`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod family_json;
pub mod jet_json;
pub mod report;
pub mod series_json;

pub use error::CliError;
