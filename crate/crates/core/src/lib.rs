//! Exact Batalin-Vilkovisky calculus for mechanics: graded differential
//! polynomials, antibrackets and evolutionary vector fields, the spinning
//! particle models with their cocycles, the zero-mode ring, and windowed
//! cohomology by exact linear algebra.

pub mod calculus;
pub mod dsl;
pub mod error;
pub mod exec;
pub mod homology;
pub mod linalg;
pub mod models;
pub mod superpoly;
pub mod zeromode;

pub use error::{Error, Result};
pub use exec::Exec;
