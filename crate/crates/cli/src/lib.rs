//! Command-line front end for `dws-core`.
//!
//! Every command writes one table: `#` lines carrying the version and the
//! fully resolved settings, then a single header row and the data rows as
//! CSV or TSV. Identical settings give byte-identical output.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod reference;

pub use cli::run;
