//! Plain-text model files and expressions.
//!
//! ```text
//! model sugra_d0;
//! dim 0;
//! field e ghost 0 parity even;
//! field c ghost 1 parity odd;
//! action { d(anti(e),1) * c }
//! ```
//!
//! Antifields are declared automatically unless a field says `noanti`.
//! Expressions use `+ - * ^`, rationals `a/b`, atoms `name`, `anti(name)`,
//! `d(atom, n)` and `inv(name)`. Products are ordered, so `psi * c` and
//! `c * psi` differ by a sign.

mod lexer;
mod parser;
mod printer;

pub use parser::{parse_expr, parse_model};
pub use printer::{print_expr, print_model};
