//! File formats, the experiment runner and report emission on top of
//! `quasicorners-core`.
//!
//! A run takes one [`config::ExperimentConfig`] (a group, an optional subset
//! of `G × G` and a task list) and produces a [`run::Report`], written as
//! canonical JSON by [`json::to_canonical`]. Reports do not depend on the
//! thread count.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod formats;
pub mod json;
pub mod parallel;
pub mod run;
pub mod suite;

pub use config::ExperimentConfig;
pub use error::{CliError, ParseError, Result};
pub use run::{run, Report, RunOptions};
