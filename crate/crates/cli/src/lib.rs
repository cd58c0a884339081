//! Text front end for `weyl-core`: expression parser and printer, session
//! configuration, the `weyl` command set and the property self-test suites.

pub mod ast;
pub mod commands;
pub mod config;
pub mod error;
pub mod eval;
pub mod lexer;
pub mod parser;
pub mod printer;
pub mod selftest;

pub use commands::{run, Cli};
pub use error::{CliError, CliResult};
pub use eval::evaluate;
pub use parser::parse_element;
pub use printer::{print_element, print_monomial};
