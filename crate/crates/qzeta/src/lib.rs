//! Command-line front end for `qzeta-core`: polynomial parsing, subcommand
//! dispatch and JSON, text and CSV output.

pub mod cli;
pub mod parse;

pub use cli::{run, Cli};
pub use parse::{parse_operator_poly, parse_poly, ParseError};
