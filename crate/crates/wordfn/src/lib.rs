//! Parsers, file formats, random generators and the command-line front end
//! for `wordfn-core`.

pub mod cli;
pub mod error;
pub mod format;
pub mod generate;
pub mod parse;
pub mod sexpr;

pub use error::{Error, Result};
