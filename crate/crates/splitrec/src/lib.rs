//! File formats, parallel verification and the command-line driver for
//! `splitrec-core`.

pub mod artifact;
pub mod cli;
pub mod error;
pub mod parallel;
pub mod poly_parse;
pub mod report;

pub use artifact::{Artifact, State};
pub use error::{CliError, CliResult};
pub use parallel::{verify_parallel, Tuning};
