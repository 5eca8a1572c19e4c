//! Driver for weak-commutativity group computations: commands, result
//! records, the on-disk cache and file formats.

pub mod cache;
pub mod cli;
pub mod commands;
pub mod expected;
pub mod formats;
pub mod record;
pub mod report;
pub mod sweep;
