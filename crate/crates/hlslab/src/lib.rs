//! File formats, the on-disk quotient cache and the `hlslab` command line,
//! on top of [`hlslab_core`].

pub mod cache;
pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod format;
pub mod report;
pub mod snapshot;
pub mod source;

pub use hlslab_core as core;

use cli::{Cli, Command};
use error::Result;

/// Runs a parsed command line; `Ok(false)` means a check failed.
pub fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Quotients(a) => commands::quotients(a, a.common.timings),
        Command::Gap(a) => commands::gap(a, a.common.timings),
        Command::Amen(a) => commands::amen(a, a.common.timings),
        Command::Tau(a) => commands::tau(a, a.common.timings),
        Command::ConvolveCheck(a) => commands::convolve_check(a, a.common.timings),
    }
}
