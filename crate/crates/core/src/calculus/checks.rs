use std::fmt::Write;

use crate::error::Result;
use crate::exec::Exec;
use crate::superpoly::{Polynomial, Roster, SymbolId};

use super::field::EvolutionaryField;
use super::variational::{solve_total_derivative, variational_derivative};

/// Outcome of a verification: `passed` iff `residual` is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub residual: Polynomial,
    pub witness: Option<Polynomial>,
    pub detail: Vec<String>,
}

impl CheckReport {
    pub fn new(name: &str, residual: Polynomial, witness: Option<Polynomial>, detail: Vec<String>) -> Self {
        CheckReport { name: name.to_string(), passed: residual.is_zero(), residual, witness, detail }
    }

    /// Builds a report from per-item residuals; the reported residual is the
    /// first nonzero one in the given order.
    pub fn from_items(name: &str, roster: &Roster, items: Vec<(String, Polynomial)>) -> Self {
        let mut detail = Vec::new();
        let mut residual = Polynomial::zero();
        for (label, p) in items {
            if !p.is_zero() {
                detail.push(format!("{label}: {}", roster.render(&p)));
                if residual.is_zero() {
                    residual = p;
                }
            }
        }
        CheckReport::new(name, residual, None, detail)
    }

    pub fn render(&self, roster: &Roster) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}: {}", self.name, if self.passed { "PASS" } else { "FAIL" });
        let _ = writeln!(s, "residual: {}", roster.render(&self.residual));
        if let Some(w) = &self.witness {
            let _ = writeln!(s, "witness: {}", roster.render(w));
        }
        for d in &self.detail {
            let _ = writeln!(s, "  {d}");
        }
        s
    }
}

/// Σ_i (−1)^{pa Φ_i} δS/δΦ_i δS/δΦ_i⁺, half the density of {∫S, ∫S}.
pub fn master_density(roster: &Roster, action: &Polynomial) -> Result<Polynomial> {
    let mut out = Polynomial::zero();
    for (phi, anti) in roster.canonical_pairs() {
        let term = &variational_derivative(roster, action, phi)? * &variational_derivative(roster, action, anti)?;
        if roster.symbol(phi).parity.is_odd() {
            out -= &term;
        } else {
            out += &term;
        }
    }
    Ok(out)
}

/// Classical master equation: the density must equal ∂S̃. The residual is
/// the part of the density outside ∂𝒜; S̃ is returned as the witness.
pub fn check_master_equation(roster: &Roster, action: &Polynomial) -> Result<CheckReport> {
    let density = master_density(roster, action)?;
    let solve = solve_total_derivative(roster, &density);
    let detail = vec![format!("density: {}", roster.render(&density))];
    Ok(CheckReport::new("master", solve.remainder, Some(solve.witness), detail))
}

/// X(X(Φ)) = 0 for every generator.
pub fn check_nilpotence(roster: &Roster, x: &EvolutionaryField, exec: Exec) -> CheckReport {
    let ids: Vec<SymbolId> = roster.symbols().iter().map(|s| s.id).collect();
    let squares = exec.map(&ids, |&id| x.apply(&x.characteristic(id)));
    let items = ids.iter().zip(squares).map(|(id, p)| (roster.symbol(*id).display_name(), p)).collect();
    CheckReport::from_items("nilpotent", roster, items)
}

/// ∂²S/∂Φ∂Φ⁺ = 0 at order zero for every field with an antifield.
pub fn check_quantum_condition(roster: &Roster, action: &Polynomial) -> CheckReport {
    let items = roster
        .canonical_pairs()
        .into_iter()
        .map(|(phi, anti)| {
            let p = action.partial_derivative(roster.var(anti, 0)).partial_derivative(roster.var(phi, 0));
            (roster.symbol(phi).display_name(), p)
        })
        .collect();
    CheckReport::from_items("quantum", roster, items)
}
