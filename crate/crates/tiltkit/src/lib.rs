//! File formats, seeded instance generators and the randomized verification
//! suites behind the `tiltkit` command-line tool.

pub mod error;
pub mod examples;
pub mod gen;
pub mod json;
pub mod ops;
pub mod suites;

pub use error::CliError;
