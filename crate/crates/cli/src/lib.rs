//! Front end for `seifert-core`: input parsing, subcommands and rendering.

pub mod batch;
pub mod commands;
pub mod input;
pub mod render;

pub use commands::{run_job, JobOutput};
pub use input::{parse_input, parse_job, CliError, Command, Format, JobSpec, Overrides};
