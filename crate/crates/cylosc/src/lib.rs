//! Command-line front end for `cylosc-core`: parameter resolution and CSV
//! output for densities, mean trajectories, jump points and classical orbits.

pub mod commands;
pub mod config;
pub mod csv;
mod error;

pub use config::{Overrides, RunConfig};
pub use error::CliError;
