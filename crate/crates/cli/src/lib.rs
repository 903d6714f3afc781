//! Command-line driver: group expressions, program files, task execution,
//! JSON reports and DOT export.

pub mod cli;
pub mod dot;
pub mod elaborate;
pub mod error;
pub mod program;
pub mod report;
pub mod run;
pub mod syntax;

pub use error::{CliError, Pos, Result};
