//! Catalog file formats and subcommand implementations for the
//! `design-forge` binary, exposed as a library so integration tests can
//! exercise the text formats directly.

pub mod commands;
pub mod format;
