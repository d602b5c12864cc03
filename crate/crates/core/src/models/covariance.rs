use std::collections::BTreeMap;

use crate::calculus::{antibracket_density, variational_derivative, CheckReport, EvolutionaryField};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::superpoly::{int, rat, Parity, Polynomial, Roster};

use super::spec::ModelSpec;
use super::spinning::{p_name, theta_name, x_name};
use super::XI;

/// The evolutionary field {H, −} of a homogeneous density H.
pub fn hamiltonian_field(roster: &Roster, h: &Polynomial) -> Result<EvolutionaryField> {
    let g = roster
        .grading(h)?
        .ok_or_else(|| Error::InvalidArgument("zero density has no grading".into()))?;
    let ph = g.parity.bit();
    let mut chars = BTreeMap::new();
    for (phi, anti) in roster.canonical_pairs() {
        let pphi = roster.symbol(phi).parity.bit();
        let outer_neg = (ph + 1) * pphi % 2 == 1;
        let mut on_anti = variational_derivative(roster, h, phi)?;
        let mut on_field = variational_derivative(roster, h, anti)?;
        if outer_neg {
            on_anti = -on_anti;
            on_field = -on_field;
        }
        if ph == 1 {
            on_field = -on_field;
        }
        chars.insert(phi, on_field);
        chars.insert(anti, on_anti);
    }
    Ok(EvolutionaryField::new(chars, g.parity.flip(), g.ghost + 1))
}

fn require_sugra(model: &ModelSpec) -> Result<()> {
    if model.is_sugra() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("`{}` is not a supergravity model", model.name)))
    }
}

/// G = x⁺_μp⁺^μ − ½η^{μν}θ⁺_μθ⁺_ν + c⁺e + γ⁺ψ.
pub fn covariance_density(model: &ModelSpec) -> Result<Polynomial> {
    require_sugra(model)?;
    let mut g = &(&model.a("c") * &model.f("e")) + &(&model.a("gamma") * &model.f("psi"));
    for mu in 1..=model.dim() {
        let tha = model.a(&theta_name(mu));
        g += &(&model.a(&x_name(mu)) * &model.a(&p_name(mu)));
        g -= &(&tha * &tha).scale(&rat(model.metric.eta(mu), 2));
    }
    Ok(g)
}

/// −ξ(x⁺_μ∂x^μ + θ⁺_μ∂θ^μ + p⁺^μ∂p_μ − ∂e⁺e + c⁺∂c − ∂ψ⁺ψ + γ⁺∂γ).
pub fn covariance_identity_rhs(model: &ModelSpec) -> Result<Polynomial> {
    require_sugra(model)?;
    let xi = model.f(XI);
    let mut inner = Polynomial::zero();
    for mu in 1..=model.dim() {
        for name in [x_name(mu), theta_name(mu), p_name(mu)] {
            inner += &(&model.a(&name) * &model.fd(&name, 1));
        }
    }
    inner -= &(&model.ad("e", 1) * &model.f("e"));
    inner += &(&model.a("c") * &model.fd("c", 1));
    inner -= &(&model.ad("psi", 1) * &model.f("psi"));
    inner += &(&model.a("gamma") * &model.fd("gamma", 1));
    Ok(-(&xi * &inner))
}

/// {S, ξG} as a density; the model must carry the auxiliary ξ.
pub fn covariance_bracket(model: &ModelSpec) -> Result<Polynomial> {
    if !model.has_aux_xi() {
        return Err(Error::InvalidArgument("model lacks the auxiliary generator xi".into()));
    }
    let xi_g = &model.f(XI) * &covariance_density(model)?;
    antibracket_density(&model.roster, &model.action, &xi_g)
}

/// Checks {S, ξG} against the displayed identity, term by term.
pub fn verify_covariance(model: &ModelSpec) -> Result<CheckReport> {
    let model = model.with_aux_xi()?;
    let lhs = covariance_bracket(&model)?;
    let rhs = covariance_identity_rhs(&model)?;
    let detail = vec![format!("{{S, xi G}} = {}", model.render(&lhs))];
    Ok(CheckReport::new("covariance", &lhs - &rhs, None, detail))
}

/// Fields on which T(ξ) carries a weight term.
const WEIGHTED_FIELDS: [&str; 2] = ["e", "psi"];

/// T(ξ) = {{S, ξG}, −}: ξ∂Φ on every generator plus the weight term ∂ξ·Φ
/// on the densities e, ψ, x⁺, θ⁺, p⁺, c⁺, γ⁺. With `use_aux_xi = false`,
/// ξ = 1 and T = ∂.
pub fn reparametrization_field(model: &ModelSpec, use_aux_xi: bool) -> Result<EvolutionaryField> {
    require_sugra(model)?;
    if !use_aux_xi {
        return Ok(EvolutionaryField::total_derivative(&model.roster));
    }
    if !model.has_aux_xi() {
        return Err(Error::InvalidArgument("model lacks the auxiliary generator xi".into()));
    }
    let r = &model.roster;
    let xi = model.f(XI);
    let dxi = model.fd(XI, 1);
    let mut weighted: Vec<Polynomial> = WEIGHTED_FIELDS.iter().map(|n| model.f(n)).collect();
    for mu in 1..=model.dim() {
        for name in [x_name(mu), theta_name(mu), p_name(mu)] {
            weighted.push(model.a(&name));
        }
    }
    weighted.push(model.a("c"));
    weighted.push(model.a("gamma"));
    let xi_id = r.field(XI)?;
    let mut chars = BTreeMap::new();
    for s in r.symbols() {
        if s.id == xi_id {
            continue;
        }
        let gen = r.gen(s.id, 0);
        let mut v = &xi * &r.gen(s.id, 1);
        if weighted.contains(&gen) {
            v += &(&dxi * &gen);
        }
        chars.insert(s.id, v);
    }
    Ok(EvolutionaryField::new(chars, Parity::Even, 0))
}

/// g = p⁺^μ∂/∂x^μ − x⁺_μ∂/∂p_μ + η^{μν}θ⁺_μ∂/∂θ^ν + c⁺∂/∂e⁺ − e∂/∂c
///     + γ⁺∂/∂ψ⁺ + ψ∂/∂γ.
pub fn topological_field(model: &ModelSpec) -> Result<EvolutionaryField> {
    require_sugra(model)?;
    let r = &model.roster;
    let mut chars = BTreeMap::new();
    for mu in 1..=model.dim() {
        chars.insert(r.field(&x_name(mu))?, model.a(&p_name(mu)));
        chars.insert(r.field(&p_name(mu))?, -model.a(&x_name(mu)));
        chars.insert(r.field(&theta_name(mu))?, model.a(&theta_name(mu)).scale(&int(model.metric.eta(mu))));
    }
    chars.insert(r.antifield("e")?, model.a("c"));
    chars.insert(r.field("c")?, -model.f("e"));
    chars.insert(r.antifield("psi")?, model.a("gamma"));
    chars.insert(r.field("gamma")?, model.f("psi"));
    Ok(EvolutionaryField::new(chars, Parity::Odd, -1))
}

/// The transgression a ↦ g(a).
pub fn transgress(model: &ModelSpec, a: &Polynomial) -> Result<Polynomial> {
    Ok(topological_field(model)?.apply(a))
}

/// [s, g] = ∂ on every generator.
pub fn check_homotopy(model: &ModelSpec) -> Result<CheckReport> {
    let g = topological_field(model)?;
    let r = &model.roster;
    let c = model.s().commutator(&g, r, Exec::default());
    let items = c
        .difference(&EvolutionaryField::total_derivative(r), r)
        .into_iter()
        .map(|(id, p)| (format!("[s,g]({}) - d({})", r.symbol(id).display_name(), r.symbol(id).display_name()), p))
        .collect();
    Ok(CheckReport::from_items("homotopy", r, items))
}
