//! JSON lattice files and the `hyperlattice` command line.

pub mod args;
pub mod commands;
pub mod error;
pub mod file;
pub mod json;

pub use args::{Cli, Command};
pub use commands::run;
pub use error::{CliError, CliResult};
pub use file::{parse_lattice_file, LatticeFile};
