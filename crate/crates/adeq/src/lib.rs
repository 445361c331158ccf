//! Equation language, JSON formats and the `adeq` command line.

pub mod cli;
pub mod dsl;
pub mod expr;
pub mod formats;

pub use cli::{run, Outcome};
pub use dsl::{parse_equation, render_equation, ParseError};
