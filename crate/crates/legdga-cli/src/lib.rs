//! Shared pieces of the `legdga` command-line tool: report assembly and the
//! corpus regression suite (also exercised by the integration tests).

pub mod acceptance;
pub mod report;
