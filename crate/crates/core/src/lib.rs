#![no_std]
extern crate alloc;

mod env;
pub mod automata;
pub mod error;
pub mod linalg;
pub mod mso;
pub mod msoleval;
pub mod names;
pub mod semiring;
pub mod wmsol;
pub mod translate;
pub mod word;

pub use error::{Error, Result};
