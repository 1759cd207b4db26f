//! Library half of the `brooks` CLI: file formats, run reports, and the
//! command implementations.

pub mod commands;
pub mod formats;
pub mod report;
