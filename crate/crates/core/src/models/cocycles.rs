use crate::error::{Error, Result};
use crate::superpoly::{int, rat, Polynomial};

use super::covariance::transgress;
use super::spec::ModelSpec;
use super::spinning::{theta_name, x_name};

/// The d = 0 families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CocycleKind {
    /// A_k = (ψ⁺)^{k+1} c γ⁻¹, k ≥ −1.
    A,
    /// B_k = (1/k)(ψ⁺)^k γ⁻¹, k ≥ 1.
    B,
    /// α_k = 2(k+1)(ψ⁺)^k e⁺c + (ψ⁺)^{k+1}γ, k ≥ −1.
    Alpha,
    /// β_k = (ψ⁺)^{k−1}e⁺, k ≥ 1.
    Beta,
}

impl std::str::FromStr for CocycleKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" => Ok(CocycleKind::A),
            "B" => Ok(CocycleKind::B),
            "alpha" => Ok(CocycleKind::Alpha),
            "beta" => Ok(CocycleKind::Beta),
            _ => Err(Error::InvalidArgument(format!("unknown cocycle kind `{s}`"))),
        }
    }
}

fn require(model: &ModelSpec, cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{what} (model `{}`)", model.name)))
    }
}

fn psi_plus_pow(model: &ModelSpec, n: i64) -> Polynomial {
    model.a("psi").pow(n as u32)
}

fn gamma_inv(model: &ModelSpec, n: u32) -> Polynomial {
    model.roster.inverse_power(model.id("gamma").expect("gamma"), n).expect("gamma is invertible")
}

pub fn named_cocycle(model: &ModelSpec, kind: CocycleKind, k: i64) -> Result<Polynomial> {
    require(model, model.is_sugra(), "needs the supergravity roster")?;
    let min = match kind {
        CocycleKind::A | CocycleKind::Alpha => -1,
        CocycleKind::B | CocycleKind::Beta => 1,
    };
    if k < min {
        return Err(Error::InvalidArgument(format!("k = {k} out of range (k >= {min})")));
    }
    let c = model.f("c");
    let gamma = model.f("gamma");
    let ea = model.a("e");
    Ok(match kind {
        CocycleKind::A => &(&psi_plus_pow(model, k + 1) * &c) * &gamma_inv(model, 1),
        CocycleKind::B => (&psi_plus_pow(model, k) * &gamma_inv(model, 1)).scale(&rat(1, k)),
        CocycleKind::Alpha => {
            let second = &psi_plus_pow(model, k + 1) * &gamma;
            if k == -1 {
                second
            } else {
                &(&(&psi_plus_pow(model, k) * &ea) * &c).scale(&int(2 * (k + 1))) + &second
            }
        }
        CocycleKind::Beta => &psi_plus_pow(model, k - 1) * &ea,
    })
}

/// α̃_k = g(α_{k−1}), k ≥ 0.
pub fn alpha_tilde(model: &ModelSpec, k: i64) -> Result<Polynomial> {
    if k < 0 {
        return Err(Error::InvalidArgument("alpha tilde needs k >= 0".into()));
    }
    transgress(model, &named_cocycle(model, CocycleKind::Alpha, k - 1)?)
}

/// β̃_k = g(β_{k−1}), k ≥ 2.
pub fn beta_tilde(model: &ModelSpec, k: i64) -> Result<Polynomial> {
    if k < 2 {
        return Err(Error::InvalidArgument("beta tilde needs k >= 2".into()));
    }
    transgress(model, &named_cocycle(model, CocycleKind::Beta, k - 1)?)
}

/// Ω = θ¹…θ^d.
pub fn volume_form(model: &ModelSpec) -> Result<Polynomial> {
    require(model, model.dim() >= 1, "the volume form needs d >= 1")?;
    let mut w = Polynomial::one();
    for mu in 1..=model.dim() {
        w = &w * &model.f(&theta_name(mu));
    }
    Ok(w)
}

/// ι(v)a = η^{μν} v_μ ∂a/∂θ^ν (left derivative), v given by its d components.
pub fn iota(model: &ModelSpec, v: &[Polynomial], a: &Polynomial) -> Result<Polynomial> {
    require(model, model.dim() >= 1 && v.len() == model.dim(), "iota needs d >= 1 and d components")?;
    let mut out = Polynomial::zero();
    for (mu, vm) in v.iter().enumerate() {
        let th = model.roster.var(model.id(&theta_name(mu + 1))?, 0);
        let d = a.partial_derivative(th);
        out += &(vm * &d).scale(&int(model.metric.eta(mu + 1)));
    }
    Ok(out)
}

/// Components ∂f/∂x^μ.
pub fn gradient(model: &ModelSpec, f: &Polynomial) -> Result<Vec<Polynomial>> {
    (1..=model.dim())
        .map(|mu| Ok(f.partial_derivative(model.roster.var(model.id(&x_name(mu))?, 0))))
        .collect()
}

/// The field vector (p_1, …, p_d) or any other named family.
pub fn field_vector(model: &ModelSpec, name: fn(usize) -> String) -> Vec<Polynomial> {
    (1..=model.dim()).map(|mu| model.f(&name(mu))).collect()
}

/// The d > 0 families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatterKind {
    A,
    Z,
    Alpha,
    Zeta,
}

impl std::str::FromStr for MatterKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" => Ok(MatterKind::A),
            "Z" => Ok(MatterKind::Z),
            "alpha" => Ok(MatterKind::Alpha),
            "zeta" => Ok(MatterKind::Zeta),
            _ => Err(Error::InvalidArgument(format!("unknown matter cocycle kind `{s}`"))),
        }
    }
}

fn check_coordinate_function(model: &ModelSpec, f: &Polynomial) -> Result<()> {
    let coords: Vec<_> = (1..=model.dim()).filter_map(|mu| model.id(&x_name(mu)).ok()).collect();
    for (m, _) in f.terms() {
        for (v, _) in m.factors() {
            if v.order != 0 || !coords.contains(&v.symbol) {
                return Err(Error::InvalidArgument(format!(
                    "`{}` is not a function of the coordinates",
                    model.render(f)
                )));
            }
        }
    }
    Ok(())
}

/// A_k(f) = (ψ⁺)^{k+1} c f Ω γ⁻¹, Z_k(f) = (k+1)(ψ⁺)^k f Ω γ⁻¹ +
/// (ψ⁺)^{k+1} c ι(grad f) Ω γ⁻¹, α_k(f) = s A_k(f), ζ_k(f) = s Z_k(f).
pub fn matter_cocycle(model: &ModelSpec, kind: MatterKind, k: i64, f: &Polynomial) -> Result<Polynomial> {
    require(model, model.is_sugra() && model.dim() >= 1, "needs the supergravity model with d >= 1")?;
    if k < 0 {
        return Err(Error::InvalidArgument("matter cocycles need k >= 0".into()));
    }
    check_coordinate_function(model, f)?;
    let omega = volume_form(model)?;
    let ginv = gamma_inv(model, 1);
    let c = model.f("c");
    let a_k = || &(&(&(&psi_plus_pow(model, k + 1) * &c) * f) * &omega) * &ginv;
    let z_k = || -> Result<Polynomial> {
        let first = (&(&(&psi_plus_pow(model, k) * f) * &omega) * &ginv).scale(&int(k + 1));
        let contracted = iota(model, &gradient(model, f)?, &omega)?;
        let second = &(&(&psi_plus_pow(model, k + 1) * &c) * &contracted) * &ginv;
        Ok(&first + &second)
    };
    Ok(match kind {
        MatterKind::A => a_k(),
        MatterKind::Z => z_k()?,
        MatterKind::Alpha => model.s().apply(&a_k()),
        MatterKind::Zeta => model.s().apply(&z_k()?),
    })
}
