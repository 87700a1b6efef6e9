//! Command-line tools, verification suites and report formats on top of
//! `mevreg-core`.

pub mod cli;
pub mod oracle;
pub mod output;
pub mod parse;
pub mod suites;
