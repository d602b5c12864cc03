use std::fmt;

use num::{Signed, Zero};

use crate::calculus::CheckReport;
use crate::error::{Error, Result};
use crate::models::ModelSpec;
use crate::superpoly::{int, Coeff, Monomial, Polynomial, Role};

/// A filtration degree a + bσ.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Affine {
    pub constant: Coeff,
    pub sigma: Coeff,
}

impl Affine {
    fn new(a: i64, b: i64) -> Self {
        Affine { constant: int(a), sigma: int(b) }
    }

    pub fn at(&self, sigma: &Coeff) -> Coeff {
        &self.constant + &self.sigma * sigma
    }

    fn add_scaled(&mut self, other: &Affine, e: i64) {
        self.constant += &other.constant * int(e);
        self.sigma += &other.sigma * int(e);
    }

    fn minus(&self, other: &Affine) -> Affine {
        Affine { constant: &self.constant - &other.constant, sigma: &self.sigma - &other.sigma }
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.constant.is_zero(), self.sigma.is_zero()) {
            (_, true) => write!(f, "{}", self.constant),
            (true, false) => write!(f, "{}σ", self.sigma),
            (false, false) if self.sigma.is_negative() => write!(f, "{} - {}σ", self.constant, -&self.sigma),
            (false, false) => write!(f, "{} + {}σ", self.constant, self.sigma),
        }
    }
}

/// (deg Φ, deg Φ⁺) for the field named `name`, with ∂ of degree zero.
fn table(name: &str) -> Option<(Affine, Affine)> {
    let family = name.trim_end_matches(|c: char| c.is_ascii_digit());
    let indexed = family.len() < name.len();
    let (f, a) = match (family, indexed) {
        ("x", true) => ((0, 0), (0, 2)),
        ("theta", true) => ((0, 1), (0, 1)),
        ("p", true) => ((0, 2), (0, 0)),
        ("e", false) | ("c", false) => ((2, -2), (-1, 4)),
        ("psi", false) | ("gamma", false) => ((2, -1), (-1, 3)),
        _ => return None,
    };
    Some((Affine::new(f.0, f.1), Affine::new(a.0, a.1)))
}

/// Filtration degrees of every generator of a supergravity model.
pub fn generator_degrees(model: &ModelSpec) -> Result<Vec<Affine>> {
    if !model.is_sugra() {
        return Err(Error::InvalidArgument(format!("the filtration is defined for the supergravity models, not `{}`", model.name)));
    }
    model
        .roster
        .symbols()
        .iter()
        .map(|s| {
            let (f, a) = table(&s.name)
                .ok_or_else(|| Error::InvalidArgument(format!("no filtration degree for `{}`", s.display_name())))?;
            Ok(if s.role == Role::Field { f } else { a })
        })
        .collect()
}

fn degree_of(degs: &[Affine], m: &Monomial) -> Affine {
    let mut d = Affine::default();
    for (v, e) in m.factors() {
        d.add_scaled(&degs[v.symbol as usize], *e as i64);
    }
    d
}

/// Checks that every term of every characteristic sΦ raises the filtration
/// degree by an amount in [0, 2] that does not depend on σ; degrees are
/// reported at the given σ.
pub fn filtration_check(model: &ModelSpec, sigma: &Coeff) -> Result<CheckReport> {
    let degs = generator_degrees(model)?;
    let mut residual = Polynomial::zero();
    let mut detail = Vec::new();
    let lo = int(0);
    let hi = int(2);
    for (id, chi) in model.s().characteristics() {
        let name = model.roster.symbol(*id).display_name();
        let base = &degs[*id as usize];
        for (m, c) in chi.terms() {
            let drop = degree_of(&degs, m).minus(base);
            let at = drop.at(sigma);
            let ok = drop.sigma.is_zero() && at >= lo && at <= hi;
            let term = Polynomial::term(m.clone(), c.clone());
            if !ok {
                residual += &term;
            }
            detail.push(format!(
                "s {name} ∋ {}: shift {drop} = {at}{}",
                model.render(&term),
                if ok { "" } else { "  <- out of range" }
            ));
        }
    }
    let gens = generator_degrees(model)?;
    let negatives: Vec<String> = model
        .roster
        .symbols()
        .iter()
        .zip(&gens)
        .filter(|(_, d)| d.at(sigma).is_negative())
        .map(|(s, d)| format!("{} = {}", s.display_name(), d.at(sigma)))
        .collect();
    detail.push(if negatives.is_empty() {
        format!("all generator degrees are non-negative at σ = {sigma}")
    } else {
        format!("negative generator degrees at σ = {sigma}: {}", negatives.join(", "))
    });
    Ok(CheckReport::new("filtration", residual, None, detail))
}

/// Lowest generator filtration degree at σ.
pub fn min_generator_degree(model: &ModelSpec, sigma: &Coeff) -> Result<Coeff> {
    Ok(generator_degrees(model)?.iter().map(|d| d.at(sigma)).min().unwrap_or_else(Coeff::zero))
}
