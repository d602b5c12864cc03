//! Variational calculus on the jet algebra: Euler operators, the antibracket,
//! evolutionary vector fields and the global BV checks.

mod checks;
mod field;
mod variational;

pub use checks::{check_master_equation, check_nilpotence, check_quantum_condition, master_density, CheckReport};
pub use field::{differential_from_action, EvolutionaryField};
pub use variational::{
    antibracket_density, functional_antibracket, is_total_derivative, monomials_with_content,
    solve_total_derivative, variational_derivative, DerivativeSolve, FunctionalClass,
};
