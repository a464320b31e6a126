//! Reports for the `dp6` command-line tool.
//!
//! Every command produces a [`RunManifest`]: the inputs, a payload, and a list
//! of checks each carrying a citation and a pass/fail/recorded-constant status.

pub mod commands;
pub mod manifest;

pub use commands::InputError;
pub use manifest::{Row, RunManifest, Status};

/// Exit code for unreadable or malformed input.
pub const EXIT_INPUT_ERROR: i32 = 2;
