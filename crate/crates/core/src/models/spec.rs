use std::fmt;
use std::sync::OnceLock;

use crate::calculus::{differential_from_action, EvolutionaryField};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::superpoly::{Parity, Polynomial, Roster, SymbolId};

/// Diagonal metric η_{μν}; each entry is ±1, so η^{μν} has the same entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MetricSignature {
    entries: Vec<i8>,
}

impl MetricSignature {
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        if entries.iter().any(|e| *e != 1 && *e != -1) {
            return Err(Error::InvalidArgument("metric entries must be +1 or -1".into()));
        }
        Ok(MetricSignature { entries })
    }

    pub fn euclidean(d: usize) -> Self {
        MetricSignature { entries: vec![1; d] }
    }

    /// Parses a sign string such as `+--`.
    pub fn parse(s: &str) -> Result<Self> {
        let entries = s
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                _ => Err(Error::InvalidArgument(format!("bad metric sign `{c}`"))),
            })
            .collect::<Result<_>>()?;
        Ok(MetricSignature { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// η_{μμ} for 1-based μ.
    pub fn eta(&self, mu: usize) -> i64 {
        self.entries[mu - 1] as i64
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }
}

impl fmt::Display for MetricSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            f.write_str(if *e > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

/// A BV model: roster, metric and an even ghost-zero action.
#[derive(Clone, Debug)]
pub struct ModelSpec {
    pub name: String,
    pub metric: MetricSignature,
    pub roster: Roster,
    pub action: Polynomial,
    /// `action_parts[k]` is the part of degree k in positive-ghost generators.
    pub action_parts: Vec<Polynomial>,
    differential: OnceLock<EvolutionaryField>,
}

impl PartialEq for ModelSpec {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.metric == other.metric && self.roster == other.roster && self.action == other.action
    }
}

impl ModelSpec {
    pub fn new(name: &str, metric: MetricSignature, roster: Roster, action: Polynomial) -> Result<Self> {
        roster.check(&action)?;
        if let Some(g) = roster.grading(&action)? {
            if g.ghost != 0 || g.parity != Parity::Even {
                return Err(Error::Semantic(format!(
                    "action must be even with ghost number 0, found ghost {} parity {}",
                    g.ghost, g.parity
                )));
            }
        }
        let mut action_parts: Vec<Polynomial> = Vec::new();
        for (m, c) in action.terms() {
            let k: i32 = m
                .factors()
                .iter()
                .filter(|(v, _)| roster.symbol(v.symbol).ghost > 0)
                .map(|(_, e)| *e)
                .sum();
            let k = k.max(0) as usize;
            if action_parts.len() <= k {
                action_parts.resize(k + 1, Polynomial::zero());
            }
            action_parts[k].add_term(m.clone(), c.clone());
        }
        if action_parts.is_empty() {
            action_parts.push(Polynomial::zero());
        }
        Ok(ModelSpec { name: name.to_string(), metric, roster, action, action_parts, differential: OnceLock::new() })
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    /// S_[k], zero when absent.
    pub fn part(&self, k: usize) -> Polynomial {
        self.action_parts.get(k).cloned().unwrap_or_default()
    }

    /// The same roster and metric with a different action.
    pub fn with_action(&self, action: Polynomial) -> Result<Self> {
        ModelSpec::new(&self.name, self.metric.clone(), self.roster.clone(), action)
    }

    /// The BV differential s, computed once.
    pub fn s(&self) -> &EvolutionaryField {
        self.differential
            .get_or_init(|| differential_from_action(&self.roster, &self.action, Exec::default()).expect("validated action"))
    }

    pub fn has_symbol(&self, name: &str) -> bool {
        self.roster.field(name).is_ok()
    }

    pub fn id(&self, name: &str) -> Result<SymbolId> {
        self.roster.field(name)
    }

    pub fn f(&self, name: &str) -> Polynomial {
        self.roster.f(name)
    }

    pub fn a(&self, name: &str) -> Polynomial {
        self.roster.a(name)
    }

    /// ∂^ℓ of a field.
    pub fn fd(&self, name: &str, l: u32) -> Polynomial {
        self.roster.gen(self.roster.field(name).expect("known field"), l)
    }

    /// ∂^ℓ of an antifield.
    pub fn ad(&self, name: &str, l: u32) -> Polynomial {
        self.roster.gen(self.roster.antifield(name).expect("known antifield"), l)
    }

    pub fn render(&self, p: &Polynomial) -> String {
        self.roster.render(p)
    }

    /// True for the supergravity-coupled models (roster contains e, ψ, c, γ).
    pub fn is_sugra(&self) -> bool {
        ["e", "psi", "c", "gamma"].iter().all(|n| self.has_symbol(n))
    }

    pub fn has_aux_xi(&self) -> bool {
        self.roster.field(super::XI).is_ok()
    }
}
