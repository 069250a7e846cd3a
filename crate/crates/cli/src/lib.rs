//! Command implementations behind the `distortion` binary.

pub mod commands;
pub mod golden;
