//! JSON formats and command runners behind the `hypcurve` binary.

pub mod commands;
pub mod formats;

pub use commands::{exit, Config, Failure, Format, Output};
