//! File formats, parallel database builds and the `partitions` command line,
//! on top of `partitions-core`.

pub mod app;
pub mod build;
pub mod dbfile;
pub mod error;
pub mod json;

pub use error::CliError;
