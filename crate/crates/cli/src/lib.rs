//! Command-line front end: configuration, scenario runners and tabular output.

pub mod args;
pub mod config;
pub mod error;
pub mod output;
pub mod run;

pub use args::{Cli, Command, ConfigArgs};
pub use config::{ModelParams, RunConfig, Scenario, TimeUnit, Times};
pub use error::CliError;
pub use output::{Cell, Format, Table};
pub use run::{run_negativity, run_simulate, run_spectrum, run_verify, VerifyReport};
