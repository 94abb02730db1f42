//! Library surface of the command-line front end; the binary in `main.rs` is
//! a thin argument-parsing wrapper so tests can call commands directly.

pub mod catalog;
pub mod commands;
pub mod fixtures;
