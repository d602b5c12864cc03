use std::collections::BTreeMap;
use std::sync::Mutex;


use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::superpoly::{int, Parity, Polynomial, Roster, SymbolId};

use super::variational::variational_derivative;

/// A derivation commuting with ∂, fixed by its values on order-zero
/// generators: X(∂^ℓΦ) = ∂^ℓ(XΦ). Missing characteristics are zero.
#[derive(Debug)]
pub struct EvolutionaryField {
    characteristics: BTreeMap<SymbolId, Polynomial>,
    parity: Parity,
    ghost_shift: i32,
    prolonged: Mutex<BTreeMap<(SymbolId, u32), Polynomial>>,
}

impl Clone for EvolutionaryField {
    fn clone(&self) -> Self {
        EvolutionaryField::new(self.characteristics.clone(), self.parity, self.ghost_shift)
    }
}

impl PartialEq for EvolutionaryField {
    fn eq(&self, other: &Self) -> bool {
        self.parity == other.parity && self.ghost_shift == other.ghost_shift && self.characteristics == other.characteristics
    }
}

impl EvolutionaryField {
    pub fn new(characteristics: BTreeMap<SymbolId, Polynomial>, parity: Parity, ghost_shift: i32) -> Self {
        let characteristics = characteristics.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        EvolutionaryField { characteristics, parity, ghost_shift, prolonged: Mutex::new(BTreeMap::new()) }
    }

    pub fn zero(parity: Parity, ghost_shift: i32) -> Self {
        EvolutionaryField::new(BTreeMap::new(), parity, ghost_shift)
    }

    /// The total derivative as an evolutionary field.
    pub fn total_derivative(roster: &Roster) -> Self {
        let chars = roster.symbols().iter().map(|s| (s.id, roster.gen(s.id, 1))).collect();
        EvolutionaryField::new(chars, Parity::Even, 0)
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn ghost_shift(&self) -> i32 {
        self.ghost_shift
    }

    pub fn characteristics(&self) -> &BTreeMap<SymbolId, Polynomial> {
        &self.characteristics
    }

    pub fn characteristic(&self, sym: SymbolId) -> Polynomial {
        self.characteristics.get(&sym).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.characteristics.is_empty()
    }

    fn prolongation(&self, sym: SymbolId, order: u32) -> Polynomial {
        if let Some(p) = self.prolonged.lock().unwrap().get(&(sym, order)) {
            return p.clone();
        }
        let p = match order {
            0 => self.characteristic(sym),
            _ => self.prolongation(sym, order - 1).total_derivative(),
        };
        self.prolonged.lock().unwrap().insert((sym, order), p.clone());
        p
    }

    /// X(a) = Σ ∂^ℓ(XΦ) · ∂a/∂(∂^ℓΦ).
    pub fn apply(&self, a: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in a.terms() {
            for &(v, _) in m.factors() {
                if !self.characteristics.contains_key(&v.symbol) {
                    continue;
                }
                let (e, neg, rest) = m.partial(v).expect("factor present");
                let mut k = c * int(e as i64);
                if neg {
                    k = -k;
                }
                let image = self.prolongation(v.symbol, v.order);
                out += &(&image * &Polynomial::term(rest, k));
            }
        }
        out
    }

    pub fn scale(&self, c: &crate::superpoly::Coeff) -> Self {
        let chars = self.characteristics.iter().map(|(s, p)| (*s, p.scale(c))).collect();
        EvolutionaryField::new(chars, self.parity, self.ghost_shift)
    }

    /// Graded commutator [X, Y] = XY − (−1)^{pa X pa Y} YX.
    pub fn commutator(&self, other: &EvolutionaryField, roster: &Roster, exec: Exec) -> Self {
        let sign_neg = self.parity.sign_with(other.parity);
        let ids: Vec<SymbolId> = roster.symbols().iter().map(|s| s.id).collect();
        let values = exec.map(&ids, |&id| {
            let xy = self.apply(&other.characteristic(id));
            let yx = other.apply(&self.characteristic(id));
            if sign_neg {
                &xy + &yx
            } else {
                &xy - &yx
            }
        });
        EvolutionaryField::new(
            ids.into_iter().zip(values).collect(),
            self.parity.add(other.parity),
            self.ghost_shift + other.ghost_shift,
        )
    }

    /// Per-generator difference `self(Φ) − other(Φ)`, zero entries dropped.
    pub fn difference(&self, other: &EvolutionaryField, roster: &Roster) -> Vec<(SymbolId, Polynomial)> {
        roster
            .symbols()
            .iter()
            .map(|s| (s.id, &self.characteristic(s.id) - &other.characteristic(s.id)))
            .filter(|(_, p)| !p.is_zero())
            .collect()
    }
}

/// The BV differential s = {S, −}: sΦ = (−1)^{pa Φ} δS/δΦ⁺ and
/// sΦ⁺ = (−1)^{pa Φ} δS/δΦ, with left variational derivatives.
pub fn differential_from_action(roster: &Roster, action: &Polynomial, exec: Exec) -> Result<EvolutionaryField> {
    roster.check(action)?;
    if let Some(g) = roster.grading(action)? {
        if g.ghost != 0 || g.parity.is_odd() {
            return Err(Error::Semantic(format!(
                "action must be even with ghost number 0, found ghost {} parity {}",
                g.ghost, g.parity
            )));
        }
    }
    let pairs = roster.canonical_pairs();
    let computed: Vec<Result<[(SymbolId, Polynomial); 2]>> = exec.map(&pairs, |&(phi, anti)| {
        let mut on_field = variational_derivative(roster, action, anti)?;
        let mut on_anti = variational_derivative(roster, action, phi)?;
        if roster.symbol(phi).parity.is_odd() {
            on_field = -on_field;
            on_anti = -on_anti;
        }
        Ok([(phi, on_field), (anti, on_anti)])
    });
    let mut chars = BTreeMap::new();
    for c in computed {
        for (id, p) in c? {
            chars.insert(id, p);
        }
    }
    Ok(EvolutionaryField::new(chars, Parity::Odd, 1))
}
