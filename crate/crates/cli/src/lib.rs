//! IO, file formats and commands behind the `dkbound` binary.

pub mod commands;
pub mod error;
pub mod experiment;
pub mod io;

pub use error::{CliError, CliResult};

/// Version tag written as `"schema"` in every JSON document.
pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable overriding the default seed.
pub const SEED_ENV: &str = "DKBOUND_SEED";
