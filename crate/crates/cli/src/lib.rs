//! Library half of the `tracegate` binary: parsing, reports, corpus runs.

pub mod commands;
pub mod corpus;
pub mod error;
pub mod example;
pub mod parse;
pub mod report;

pub use error::CliError;
pub use parse::{parse_polynomial, ParseError};
pub use report::{field_report, FieldReportJson};
