use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num::{Integer, One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

use crate::calculus::EvolutionaryField;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::linalg::{kernel, SparseVec};
use crate::models::ModelSpec;
use crate::superpoly::{Coeff, Monomial, Polynomial, Role, Roster, SymbolId, VarRef};

use super::window::Window;

/// Which complex a computation runs in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceVariant {
    /// 𝒜 with s.
    A,
    /// 𝒜_γ with s.
    ALocalized,
    /// 𝒜/ℐ, positive-ghost generators set to zero.
    AModI,
    /// 𝒜/∂𝒜.
    F,
    /// 𝒜_γ/∂𝒜_γ.
    FLocalized,
    /// 𝒜/(∂𝒜 + ℐ).
    FModI,
}

impl SpaceVariant {
    pub fn is_functional(self) -> bool {
        matches!(self, SpaceVariant::F | SpaceVariant::FLocalized | SpaceVariant::FModI)
    }

    pub fn is_localized(self) -> bool {
        matches!(self, SpaceVariant::ALocalized | SpaceVariant::FLocalized)
    }

    pub fn is_quotient(self) -> bool {
        matches!(self, SpaceVariant::AModI | SpaceVariant::FModI)
    }

    pub fn name(self) -> &'static str {
        match self {
            SpaceVariant::A => "A",
            SpaceVariant::ALocalized => "A_localized",
            SpaceVariant::AModI => "A_mod_I",
            SpaceVariant::F => "F",
            SpaceVariant::FLocalized => "F_localized",
            SpaceVariant::FModI => "F_mod_I",
        }
    }
}

impl fmt::Display for SpaceVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SpaceVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "A" => SpaceVariant::A,
            "A_localized" => SpaceVariant::ALocalized,
            "A_mod_I" => SpaceVariant::AModI,
            "F" => SpaceVariant::F,
            "F_localized" => SpaceVariant::FLocalized,
            "F_mod_I" => SpaceVariant::FModI,
            _ => return Err(Error::InvalidArgument(format!("unknown space `{s}`"))),
        })
    }
}

/// An integer weight on generators, with weight `lambda` per derivative,
/// for which s is homogeneous of degree `shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub weights: Vec<i64>,
    pub lambda: i64,
    pub shift: i64,
}

/// Grading key of a monomial: one integer per grading.
pub type BlockKey = SmallVec<[i64; 8]>;

/// A model together with the complex variant, the (possibly projected)
/// differential and the gradings that s respects.
pub struct Space<'m> {
    pub model: &'m ModelSpec,
    pub variant: SpaceVariant,
    pub exec: Exec,
    allowed: Vec<bool>,
    coordinate: Vec<bool>,
    s: EvolutionaryField,
    gradings: Vec<Grading>,
    bases: Mutex<HashMap<(i32, Window), Arc<Vec<Monomial>>>>,
}

impl fmt::Debug for Space<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Space").field("model", &self.model.name).field("variant", &self.variant).finish()
    }
}

fn is_coordinate(roster: &Roster, id: SymbolId) -> bool {
    let s = roster.symbol(id);
    s.role == Role::Field
        && s.ghost == 0
        && !s.parity.is_odd()
        && s.name.len() > 1
        && s.name.starts_with('x')
        && s.name[1..].chars().all(|c| c.is_ascii_digit())
}

impl<'m> Space<'m> {
    pub fn new(model: &'m ModelSpec, variant: SpaceVariant) -> Result<Self> {
        Space::with_exec(model, variant, Exec::default())
    }

    pub fn with_exec(model: &'m ModelSpec, variant: SpaceVariant, exec: Exec) -> Result<Self> {
        let roster = &model.roster;
        if variant.is_localized() && !roster.symbols().iter().any(|s| s.invertible) {
            return Err(Error::InvalidArgument(format!(
                "localization requested but model `{}` has no invertible generator",
                model.name
            )));
        }
        let allowed: Vec<bool> =
            roster.symbols().iter().map(|s| !(variant.is_quotient() && s.role == Role::Field && s.ghost > 0)).collect();
        let coordinate = (0..roster.len()).map(|i| is_coordinate(roster, i as SymbolId)).collect();
        let full = model.s();
        let s = if variant.is_quotient() {
            let chars = full
                .characteristics()
                .iter()
                .filter(|(id, _)| allowed[**id as usize])
                .map(|(id, p)| (*id, project(&allowed, p)))
                .collect();
            EvolutionaryField::new(chars, full.parity(), full.ghost_shift())
        } else {
            full.clone()
        };
        let gradings = compute_gradings(roster, &allowed, &s);
        Ok(Space { model, variant, exec, allowed, coordinate, s, gradings, bases: Mutex::new(HashMap::new()) })
    }

    pub fn roster(&self) -> &'m Roster {
        &self.model.roster
    }

    pub fn differential(&self) -> &EvolutionaryField {
        &self.s
    }

    pub fn gradings(&self) -> &[Grading] {
        &self.gradings
    }

    pub fn is_allowed(&self, id: SymbolId) -> bool {
        self.allowed[id as usize]
    }

    /// Sets generators of the ideal to zero (identity outside quotients).
    pub fn project(&self, p: &Polynomial) -> Polynomial {
        if self.variant.is_quotient() {
            project(&self.allowed, p)
        } else {
            p.clone()
        }
    }

    /// s, or its image in the quotient.
    pub fn apply_s(&self, p: &Polynomial) -> Polynomial {
        self.s.apply(&self.project(p))
    }

    pub fn key(&self, m: &Monomial) -> BlockKey {
        self.gradings
            .iter()
            .map(|g| {
                m.factors().iter().map(|(v, e)| (g.weights[v.symbol as usize] + g.lambda * v.order as i64) * *e as i64).sum()
            })
            .collect()
    }

    pub fn s_shift(&self) -> BlockKey {
        self.gradings.iter().map(|g| g.shift).collect()
    }

    pub fn d_shift(&self) -> BlockKey {
        self.gradings.iter().map(|g| g.lambda).collect()
    }

    /// The caps a monomial needs.
    pub fn extent(&self, m: &Monomial) -> Window {
        let mut w = Window::new(0, m.derivative_count(), 0, 0);
        for &(v, e) in m.factors() {
            if v.order == 0 && self.coordinate[v.symbol as usize] {
                w.max_x_degree += e as u32;
            } else if e < 0 {
                w.max_gamma_inverse_depth = w.max_gamma_inverse_depth.max((-e) as u32);
            } else {
                w.max_poly_degree += e as u32;
            }
        }
        w
    }

    pub fn extent_of(&self, p: &Polynomial) -> Window {
        p.terms().fold(Window::new(0, 0, 0, 0), |acc, (m, _)| acc.join(&self.extent(m)))
    }

    /// Checks that `p` lives in this space.
    pub fn check_member(&self, p: &Polynomial) -> Result<()> {
        self.roster().check(p)?;
        for (m, _) in p.terms() {
            for &(v, e) in m.factors() {
                if !self.allowed[v.symbol as usize] {
                    return Err(Error::InvalidArgument(format!(
                        "`{}` is zero in {}",
                        self.roster().render_factor(v, e),
                        self.variant
                    )));
                }
                if e < 0 && !self.variant.is_localized() {
                    return Err(Error::InvalidArgument(format!(
                        "inverse power `{}` outside a localized space",
                        self.roster().render_factor(v, e)
                    )));
                }
            }
        }
        Ok(())
    }

    /// All monomials of ghost number `k` inside `window`, in canonical
    /// order.
    pub fn basis(&self, k: i32, window: &Window) -> Arc<Vec<Monomial>> {
        let key = (k, *window);
        if let Some(b) = self.bases.lock().unwrap().get(&key) {
            return b.clone();
        }
        let b = Arc::new(self.enumerate(k, window));
        self.bases.lock().unwrap().insert(key, b.clone());
        b
    }

    fn enumerate(&self, k: i32, w: &Window) -> Vec<Monomial> {
        let roster = self.roster();
        let localized = self.variant.is_localized();
        let mut gens: Vec<Gen> = Vec::new();
        for s in roster.symbols() {
            if !self.allowed[s.id as usize] {
                continue;
            }
            for order in 0..=w.max_derivative_order {
                if order == 0 && self.coordinate[s.id as usize] {
                    continue;
                }
                gens.push(Gen {
                    var: roster.var(s.id, order),
                    ghost: s.ghost,
                    odd: s.parity.is_odd(),
                    min_exp: if order == 0 && s.invertible && localized { -(w.max_gamma_inverse_depth as i32) } else { 0 },
                });
            }
        }
        // bounds on the ghost reachable from gens[i..] with r factors left
        let n = gens.len();
        let mut lo = vec![0i64; n + 1];
        let mut hi = vec![0i64; n + 1];
        let mut extra_lo = vec![0i64; n + 1];
        let mut extra_hi = vec![0i64; n + 1];
        for i in (0..n).rev() {
            let g = gens[i].ghost as i64;
            lo[i] = lo[i + 1].min(g);
            hi[i] = hi[i + 1].max(g);
            let neg = gens[i].min_exp as i64 * g;
            extra_lo[i] = extra_lo[i + 1] + neg.min(0);
            extra_hi[i] = extra_hi[i + 1] + neg.max(0);
        }
        let mut out = Vec::new();
        let mut stack: Vec<(VarRef, i32)> = Vec::new();
        let ctx = EnumCtx { gens: &gens, lo: &lo, hi: &hi, extra_lo: &extra_lo, extra_hi: &extra_hi, target: k as i64 };
        enum_rec(&ctx, 0, w.max_poly_degree, w.max_derivative_order, 0, &mut stack, &mut out);
        // coordinate part
        let coords: Vec<VarRef> = roster
            .symbols()
            .iter()
            .filter(|s| self.allowed[s.id as usize] && self.coordinate[s.id as usize])
            .map(|s| roster.var(s.id, 0))
            .collect();
        let mut xmons = vec![Monomial::one()];
        if !coords.is_empty() {
            for deg in 1..=w.max_x_degree {
                for exps in compositions(deg, coords.len()) {
                    let f: SmallVec<[(VarRef, i32); 4]> =
                        exps.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, e)| (coords[i], *e as i32)).collect();
                    xmons.push(Monomial::from_sorted(f));
                }
            }
        }
        let mut all: Vec<Monomial> = Vec::with_capacity(out.len() * xmons.len());
        for m in &out {
            for x in &xmons {
                let (p, _) = x.mul(m).expect("coordinates are even");
                all.push(p);
            }
        }
        all.sort();
        all
    }

    /// Groups monomials by grading key.
    pub fn blocks<'a>(&self, monomials: &'a [Monomial]) -> BTreeMap<BlockKey, Vec<&'a Monomial>> {
        let mut out: BTreeMap<BlockKey, Vec<&Monomial>> = BTreeMap::new();
        for m in monomials {
            out.entry(self.key(m)).or_default().push(m);
        }
        out
    }
}

struct Gen {
    var: VarRef,
    ghost: i32,
    odd: bool,
    min_exp: i32,
}

struct EnumCtx<'a> {
    gens: &'a [Gen],
    lo: &'a [i64],
    hi: &'a [i64],
    extra_lo: &'a [i64],
    extra_hi: &'a [i64],
    target: i64,
}

fn enum_rec(
    ctx: &EnumCtx<'_>,
    i: usize,
    count_left: u32,
    deriv_left: u32,
    ghost: i64,
    stack: &mut Vec<(VarRef, i32)>,
    out: &mut Vec<Monomial>,
) {
    let need = ctx.target - ghost;
    let r = count_left as i64;
    if need < ctx.lo[i] * r + ctx.extra_lo[i] || need > ctx.hi[i] * r + ctx.extra_hi[i] {
        return;
    }
    if i == ctx.gens.len() {
        if need == 0 {
            out.push(Monomial::from_sorted(stack.iter().copied().collect::<SmallVec<_>>()));
        }
        return;
    }
    let g = &ctx.gens[i];
    let order = g.var.order;
    let max_exp = if g.odd { 1 } else { count_left as i32 };
    for e in g.min_exp..=max_exp {
        let used = e.max(0) as u32;
        if used > count_left || order * used > deriv_left {
            break;
        }
        if e != 0 {
            stack.push((g.var, e));
        }
        enum_rec(ctx, i + 1, count_left - used, deriv_left - order * used, ghost + g.ghost as i64 * e as i64, stack, out);
        if e != 0 {
            stack.pop();
        }
    }
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub(crate) fn project(allowed: &[bool], p: &Polynomial) -> Polynomial {
    p.filter_terms(|m| m.factors().iter().all(|(v, _)| allowed[v.symbol as usize]))
}

/// Integer gradings (w, λ, shift) such that every term t of every
/// characteristic sΦ has w(t) + λ·(derivatives of t) = w(Φ) + shift.
/// Generators outside the space get weight zero.
fn compute_gradings(roster: &Roster, allowed: &[bool], s: &EvolutionaryField) -> Vec<Grading> {
    let n = roster.len();
    let unknowns = n + 2;
    let mut columns: Vec<SparseVec> = vec![Vec::new(); unknowns];
    let mut row = 0usize;
    let mut push_row = |entries: Vec<(usize, i64)>, columns: &mut Vec<SparseVec>| {
        for (j, c) in entries {
            if c != 0 {
                columns[j].push((row, Coeff::from_integer(c.into())));
            }
        }
        row += 1;
    };
    for sym in roster.symbols() {
        let id = sym.id as usize;
        if !allowed[id] {
            push_row(vec![(id, 1)], &mut columns);
            continue;
        }
        for (m, _) in s.characteristic(sym.id).terms() {
            let mut e: BTreeMap<usize, i64> = BTreeMap::new();
            for &(v, x) in m.factors() {
                *e.entry(v.symbol as usize).or_default() += x as i64;
            }
            *e.entry(id).or_default() -= 1;
            let mut entries: Vec<(usize, i64)> = e.into_iter().collect();
            entries.push((n, m.derivative_count() as i64));
            entries.push((n + 1, -1));
            push_row(entries, &mut columns);
        }
    }
    kernel(&columns)
        .into_iter()
        .map(|v| {
            let mut dense = vec![Coeff::zero(); unknowns];
            for (j, c) in v {
                dense[j] = c;
            }
            let l = dense.iter().fold(num::BigInt::one(), |acc, c| acc.lcm(c.denom()));
            let ints: Vec<i64> = dense.iter().map(|c| (c * Coeff::from_integer(l.clone())).to_integer().to_i64().expect("small weight")).collect();
            let g = ints.iter().fold(0i64, |acc, x| acc.gcd(x));
            let sign = if ints.iter().find(|x| **x != 0).is_some_and(|x| x.is_negative()) { -1 } else { 1 };
            let ints: Vec<i64> = ints.iter().map(|x| sign * x / g.max(1)).collect();
            Grading { weights: ints[..n].to_vec(), lambda: ints[n], shift: ints[n + 1] }
        })
        .collect()
}
