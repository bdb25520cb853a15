//! Command-line front end: function files, worked-example reproduction and
//! the benchmark harness.

pub mod bench;
pub mod commands;
pub mod error;
pub mod function_file;
pub mod repro;

pub use commands::{run, EXIT_ERROR, EXIT_FAIL, EXIT_PASS};
pub use error::{CliError, CliResult};
