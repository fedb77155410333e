//! Problem files, reports, float oracles and the command-line front end for
//! the exact core in `monolin-core`.

pub mod cli;
pub mod error;
pub mod oracle;
pub mod problem;
pub mod render;

pub use error::CliError;
