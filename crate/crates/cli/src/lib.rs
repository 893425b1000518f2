//! Library half of the `gaudin` command-line tool: configuration, the three
//! commands and their renderers. The binary in `main.rs` only parses flags.

pub mod commands;
pub mod config;
pub mod error;
pub mod render;
