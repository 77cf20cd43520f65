//! File formats and the command-line front end for `polyiso-core`.

pub mod cli;
pub mod formats;

pub use cli::run;
