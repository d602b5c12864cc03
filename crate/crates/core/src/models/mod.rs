//! The spinning particle, free and coupled to supergravity, with its
//! covariance data and named cocycles.

mod cocycles;
mod covariance;
mod embed;
mod spec;
mod spinning;

pub use cocycles::{
    alpha_tilde, beta_tilde, field_vector, gradient, iota, matter_cocycle, named_cocycle, volume_form, CocycleKind,
    MatterKind,
};
pub use covariance::{
    check_homotopy, covariance_bracket, covariance_density, covariance_identity_rhs, hamiltonian_field, reparametrization_field,
    topological_field, transgress, verify_covariance,
};
pub use embed::{xi0, xi1, xi_embed, zero_mode_ring};
pub use spec::{MetricSignature, ModelSpec};
pub use spinning::{build_free_spinning, build_sugra_spinning, builtin_model, p_name, sugra_parts, theta_name, x_name};

/// Name of the auxiliary reparametrization parameter.
pub const XI: &str = "xi";
