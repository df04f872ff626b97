//! Files, experiments and the command-line front end for [`uso_core`].

pub mod cli;
pub mod family;
pub mod harness;
pub mod io;
pub mod record;

pub use cli::run_command;
