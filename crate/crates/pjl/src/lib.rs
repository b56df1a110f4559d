//! Command implementations behind the `pjl` binary, plus JSON formats and
//! the property suites.

pub mod commands;
pub mod json;
pub mod verify;

pub use commands::{Outcome, RunConfig};
