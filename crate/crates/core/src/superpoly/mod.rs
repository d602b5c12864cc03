//! Graded supercommutative differential polynomials over Q, with an optional
//! localization at designated even order-zero generators.

mod monomial;
mod poly;
mod roster;

pub use monomial::{Monomial, Parity, SymbolId, VarRef};
pub use poly::{int, rat, Coeff, Polynomial};
pub use roster::{FieldSymbol, GradedDegree, Role, Roster};
