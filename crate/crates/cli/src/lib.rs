//! Scenario runners and state I/O behind the `bellkit` command.

pub mod error;
pub mod params;
pub mod scenarios;
pub mod state_io;

pub use error::{CliError, Result};
