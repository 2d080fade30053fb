//! Library side of the `zdvce` command-line tool.

pub mod commands;
pub mod format;
