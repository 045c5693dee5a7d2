//! File formats, subcommand implementations, and the parallel witness
//! driver behind the `broomlab` binary.

pub mod commands;
pub mod format;
pub mod parallel;
