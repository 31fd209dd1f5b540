//! Command-line front end: graph formats, certificate documents, DOT
//! output and the `circarc` subcommands.

pub mod app;
pub mod document;
pub mod dot;
pub mod format;

pub use app::run;
