//! Library side of the `modmethod` command: reports, subcommands and the paper checks.

pub mod checks;
pub mod commands;
pub mod report;
