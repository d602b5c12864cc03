use crate::error::{Error, Result};
use crate::superpoly::Polynomial;
use crate::zeromode::{ZeroModeGen, ZeroModeRing};

use super::spec::ModelSpec;
use super::spinning::{p_name, theta_name, x_name};

/// A zero-mode ring matching the model's metric.
pub fn zero_mode_ring(model: &ModelSpec) -> ZeroModeRing {
    ZeroModeRing::new(&model.metric)
}

fn check_ring(model: &ModelSpec, ring: &ZeroModeRing) -> Result<()> {
    if ring.metric() != &model.metric || !model.is_sugra() {
        return Err(Error::InvalidArgument(format!(
            "zero-mode ring does not match the supergravity model `{}`",
            model.name
        )));
    }
    Ok(())
}

fn substitute(model: &ModelSpec, ring: &ZeroModeRing, u: &Polynomial) -> Polynomial {
    u.substitute(|v| {
        Some(match ring.classify(v.symbol) {
            ZeroModeGen::X(mu) => model.f(&x_name(mu)),
            ZeroModeGen::Theta(mu) => model.f(&theta_name(mu)),
            ZeroModeGen::P(mu) => model.f(&p_name(mu)),
            ZeroModeGen::Gamma => model.f("gamma"),
        })
    })
}

/// ξ⁰(u): the zero-mode generators replaced by the order-0 fields x, θ, p
/// (and Γ by γ).
pub fn xi0(model: &ModelSpec, ring: &ZeroModeRing, u: &Polynomial) -> Result<Polynomial> {
    check_ring(model, ring)?;
    Ok(substitute(model, ring, u))
}

/// ξ¹(v) = γξ⁰(v) + cξ⁰(Qv) for Γ-free v. Q acts on the representative,
/// so the result depends on v itself and not only on its class.
pub fn xi1(model: &ModelSpec, ring: &ZeroModeRing, v: &Polynomial) -> Result<Polynomial> {
    check_ring(model, ring)?;
    let gamma = ring.var(ZeroModeGen::Gamma);
    if v.terms().any(|(m, _)| m.exponent(gamma) != 0) {
        return Err(Error::InvalidArgument("xi1 takes Gamma-free input".into()));
    }
    let a = &model.f("gamma") * &substitute(model, ring, v);
    let b = &model.f("c") * &substitute(model, ring, &ring.q_free(v));
    Ok(&a + &b)
}

/// Dispatch on i ∈ {0, 1}.
pub fn xi_embed(model: &ModelSpec, ring: &ZeroModeRing, i: u8, u: &Polynomial) -> Result<Polynomial> {
    match i {
        0 => xi0(model, ring, u),
        1 => xi1(model, ring, u),
        _ => Err(Error::InvalidArgument(format!("xi embedding index {i} (expected 0 or 1)"))),
    }
}
