//! Windowed cohomology by exact linear algebra over Q.

mod complex;
mod filtration;
mod probes;
mod space;
mod vcomplex;
mod window;

pub use space::{BlockKey, Grading, Space, SpaceVariant};
pub use window::Window;
pub use complex::{cohomology_window, is_cocycle, solve_total_derivative_in, CohomologyReport, MarginResult};
pub use probes::{
    bracket_identity_check, bracket_scalar, fk_probe, functional_class_test, is_coboundary, CoboundarySearch, FkEntry,
    FkReport, FunctionalClassTest,
};
pub use filtration::{filtration_check, generator_degrees, min_generator_degree, Affine};
pub use vcomplex::{v_cohomology_window, v_complex_check, v_differential, unit_eps_exact, VComplexRanks, VElement};

#[cfg(test)]
mod tests;
