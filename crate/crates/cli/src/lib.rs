//! Command-line front end for the `wronbeta-core` estimators.
//!
//! [`config::parse_args`] turns argv into a validated [`RunConfig`];
//! [`run::run`] executes it.

pub mod config;
pub mod run;

pub use config::{parse_args, parse_args_with_env, CommandKind, Mode, RunConfig, UsageError};
pub use run::{execute, run, DataError, Report};
