use std::collections::HashMap;
use std::fmt::Write;

use num::{One, Signed};

use super::monomial::{Monomial, Parity, SymbolId, VarRef};
use super::poly::{Coeff, Polynomial};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Field,
    Antifield,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSymbol {
    pub id: SymbolId,
    pub name: String,
    pub ghost: i32,
    pub parity: Parity,
    pub role: Role,
    pub partner: Option<SymbolId>,
    pub invertible: bool,
}

impl FieldSymbol {
    /// `name` for fields, `anti(name)` for antifields.
    pub fn display_name(&self) -> String {
        match self.role {
            Role::Field => self.name.clone(),
            Role::Antifield => format!("anti({})", self.name),
        }
    }
}

/// Ghost number and parity of a homogeneous element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GradedDegree {
    pub ghost: i32,
    pub parity: Parity,
}

/// The generators of a differential polynomial algebra, in declaration order.
/// A field's antifield is declared immediately after it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Roster {
    symbols: Vec<FieldSymbol>,
    by_name: HashMap<(String, bool), SymbolId>,
}

impl Roster {
    pub fn new() -> Self {
        Roster::default()
    }

    /// Declares a field and, when `with_antifield`, its antifield with
    /// ghost `-1 - ghost` and opposite parity. Returns the field's id.
    pub fn add_field(
        &mut self,
        name: &str,
        ghost: i32,
        parity: Parity,
        with_antifield: bool,
        invertible: bool,
    ) -> Result<SymbolId> {
        if self.by_name.contains_key(&(name.to_string(), false)) {
            return Err(Error::Semantic(format!("duplicate field `{name}`")));
        }
        if invertible && parity.is_odd() {
            return Err(Error::Semantic(format!("odd generator `{name}` cannot be invertible")));
        }
        let id = self.symbols.len() as SymbolId;
        let partner = with_antifield.then_some(id + 1);
        self.symbols.push(FieldSymbol {
            id,
            name: name.to_string(),
            ghost,
            parity,
            role: Role::Field,
            partner,
            invertible,
        });
        self.by_name.insert((name.to_string(), false), id);
        if with_antifield {
            self.symbols.push(FieldSymbol {
                id: id + 1,
                name: name.to_string(),
                ghost: -1 - ghost,
                parity: parity.flip(),
                role: Role::Antifield,
                partner: Some(id),
                invertible: false,
            });
            self.by_name.insert((name.to_string(), true), id + 1);
        }
        Ok(id)
    }

    pub fn symbols(&self) -> &[FieldSymbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbol(&self, id: SymbolId) -> &FieldSymbol {
        &self.symbols[id as usize]
    }

    pub fn field(&self, name: &str) -> Result<SymbolId> {
        self.by_name
            .get(&(name.to_string(), false))
            .copied()
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn antifield(&self, name: &str) -> Result<SymbolId> {
        self.by_name
            .get(&(name.to_string(), true))
            .copied()
            .ok_or_else(|| Error::UnknownSymbol(format!("anti({name})")))
    }

    /// Fields that have an antifield partner, as `(field, antifield)` pairs.
    pub fn canonical_pairs(&self) -> Vec<(SymbolId, SymbolId)> {
        self.symbols
            .iter()
            .filter(|s| s.role == Role::Field)
            .filter_map(|s| s.partner.map(|p| (s.id, p)))
            .collect()
    }

    pub fn var(&self, id: SymbolId, order: u32) -> VarRef {
        VarRef::new(id, order, self.symbol(id).parity)
    }

    /// `∂^order` of a generator as a polynomial.
    pub fn gen(&self, id: SymbolId, order: u32) -> Polynomial {
        Polynomial::var(self.var(id, order))
    }

    /// Field by name at order zero. Panics on unknown names; meant for builders.
    pub fn f(&self, name: &str) -> Polynomial {
        self.gen(self.field(name).expect("known field"), 0)
    }

    /// Antifield by name at order zero. Panics on unknown names.
    pub fn a(&self, name: &str) -> Polynomial {
        self.gen(self.antifield(name).expect("known antifield"), 0)
    }

    /// `γ^-n` for an invertible generator.
    pub fn inverse_power(&self, id: SymbolId, n: u32) -> Result<Polynomial> {
        let s = self.symbol(id);
        if !s.invertible {
            return Err(Error::InvalidArgument(format!("`{}` is not invertible", s.display_name())));
        }
        Ok(Polynomial::product_of(Coeff::one(), &[(self.var(id, 0), -(n as i32))]))
    }

    pub fn ghost_of(&self, v: VarRef) -> i32 {
        self.symbol(v.symbol).ghost
    }

    /// Checks that every variable of `p` belongs to this roster.
    pub fn check(&self, p: &Polynomial) -> Result<()> {
        for (m, _) in p.terms() {
            for &(v, e) in m.factors() {
                let s = self
                    .symbols
                    .get(v.symbol as usize)
                    .ok_or_else(|| Error::RosterMismatch(format!("symbol id {} not in roster", v.symbol)))?;
                if s.parity != v.parity() {
                    return Err(Error::RosterMismatch(format!(
                        "parity of `{}` disagrees with roster",
                        s.display_name()
                    )));
                }
                if e < 0 && !(s.invertible && v.order == 0) {
                    return Err(Error::RosterMismatch(format!(
                        "negative power of non-invertible `{}`",
                        s.display_name()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Product of two polynomials over this roster.
    pub fn multiply(&self, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
        self.check(a)?;
        self.check(b)?;
        Ok(a * b)
    }

    pub fn monomial_degree(&self, m: &Monomial) -> GradedDegree {
        let ghost = m.factors().iter().map(|(v, e)| self.ghost_of(*v) * e).sum();
        GradedDegree { ghost, parity: m.parity() }
    }

    /// Ghost number and parity when all terms agree; `Ok(None)` for zero.
    pub fn grading(&self, p: &Polynomial) -> Result<Option<GradedDegree>> {
        let mut degs = p.terms().map(|(m, _)| (m, self.monomial_degree(m)));
        let Some((_, first)) = degs.next() else { return Ok(None) };
        let bad: Vec<String> = p
            .terms()
            .filter(|(m, _)| self.monomial_degree(m) != first)
            .map(|(m, c)| self.render_term(m, c))
            .collect();
        if bad.is_empty() {
            Ok(Some(first))
        } else {
            let firsts = p.terms().next().map(|(m, c)| self.render_term(m, c)).unwrap();
            Err(Error::Inhomogeneous(format!("{} vs {}", firsts, bad.join(", "))))
        }
    }

    pub fn render_factor(&self, v: VarRef, e: i32) -> String {
        let s = self.symbol(v.symbol);
        if e < 0 {
            let base = format!("inv({})", s.name);
            return if e == -1 { base } else { format!("{base}^{}", -e) };
        }
        let base = if v.order == 0 {
            s.display_name()
        } else {
            format!("d({},{})", s.display_name(), v.order)
        };
        if e == 1 {
            base
        } else {
            format!("{base}^{e}")
        }
    }

    pub fn render_term(&self, m: &Monomial, c: &Coeff) -> String {
        let mut out = c.to_string();
        for &(v, e) in m.factors() {
            write!(out, " * {}", self.render_factor(v, e)).unwrap();
        }
        out
    }

    /// The canonical text serialization.
    pub fn render(&self, p: &Polynomial) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        p.terms().map(|(m, c)| self.render_term(m, c)).collect::<Vec<_>>().join(" + ")
    }

    /// A compact human-oriented rendering (`-` instead of `+ -1 *`).
    pub fn pretty(&self, p: &Polynomial) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in p.terms().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let factors: Vec<String> = m.factors().iter().map(|&(v, e)| self.render_factor(v, e)).collect();
            if factors.is_empty() {
                out.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    write!(out, "{a}*").unwrap();
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}
