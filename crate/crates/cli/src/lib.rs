//! Command-line harness for the faber-core verification suites.

pub mod config;
pub mod render;
pub mod runner;

pub use config::{Cli, ConfigError, Format, IntRange, RunConfig, Suite};
pub use render::render_report;
pub use runner::{plan, run, Job, RunSummary};

/// Exit status for a usage or configuration error.
pub const EXIT_USAGE: i32 = 2;
