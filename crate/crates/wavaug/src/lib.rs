//! File formats, dataset ingestion, batch runs and the `wavaug` command line
//! on top of [`wavaug_core`].

pub mod araf;
pub mod batch;
pub mod cli;
pub mod config;
pub mod dataset;
mod error;
pub mod host;
pub mod png;
pub mod wav;

pub use error::{Error, Result};
pub use wavaug_core as core;
