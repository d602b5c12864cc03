use std::collections::BTreeMap;

use num::{One, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Indexer};
use crate::superpoly::{Monomial, Polynomial, Roster, SymbolId, VarRef};

/// δa/δΦ = Σ_ℓ (−∂)^ℓ ∂a/∂(∂^ℓΦ) with left partial derivatives.
pub fn variational_derivative(roster: &Roster, a: &Polynomial, sym: SymbolId) -> Result<Polynomial> {
    if sym as usize >= roster.len() {
        return Err(Error::UnknownSymbol(format!("symbol id {sym}")));
    }
    let Some(top) = a.max_order_of(sym) else { return Ok(Polynomial::zero()) };
    let mut out = Polynomial::zero();
    for l in 0..=top {
        let d = a.partial_derivative(roster.var(sym, l)).total_derivative_n(l);
        if l % 2 == 0 {
            out += &d;
        } else {
            out -= &d;
        }
    }
    Ok(out)
}

/// Euler criterion: `a` is a total derivative iff every variational
/// derivative vanishes and the constant term is zero. Localized input is
/// decided by [`solve_total_derivative`] instead.
pub fn is_total_derivative(roster: &Roster, a: &Polynomial) -> Result<bool> {
    roster.check(a)?;
    if a.has_negative_exponents() {
        return Ok(solve_total_derivative(roster, a).remainder.is_zero());
    }
    if !a.constant_term().is_zero() {
        return Ok(false);
    }
    for s in roster.symbols() {
        if !variational_derivative(roster, a, s.id)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of solving ∂g = a.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivativeSolve {
    /// A particular solution of ∂g = a − remainder.
    pub witness: Polynomial,
    /// Part of `a` outside ∂𝒜; zero iff `a` is a total derivative.
    pub remainder: Polynomial,
}

/// Monomials with the given per-symbol exponent sums and total derivative
/// count. Negative content is only realized through order-zero powers of
/// invertible symbols.
pub fn monomials_with_content(roster: &Roster, content: &[(SymbolId, i32)], total_order: u32) -> Vec<Monomial> {
    // per symbol: list of (factor list, orders used)
    let per_symbol: Vec<Vec<(Vec<(VarRef, i32)>, u32)>> = content
        .iter()
        .map(|&(sym, n)| symbol_parts(roster, sym, n, total_order))
        .collect();
    let mut out = Vec::new();
    let mut stack: Vec<(VarRef, i32)> = Vec::new();
    fn rec(
        parts: &[Vec<(Vec<(VarRef, i32)>, u32)>],
        i: usize,
        left: u32,
        stack: &mut Vec<(VarRef, i32)>,
        out: &mut Vec<Monomial>,
    ) {
        if i == parts.len() {
            if left == 0 {
                out.push(Monomial::from_sorted(stack.iter().copied().collect::<SmallVec<_>>()));
            }
            return;
        }
        for (factors, used) in &parts[i] {
            if *used > left {
                continue;
            }
            let n = stack.len();
            stack.extend(factors.iter().copied());
            rec(parts, i + 1, left - used, stack, out);
            stack.truncate(n);
        }
    }
    rec(&per_symbol, 0, total_order, &mut stack, &mut out);
    out
}

fn symbol_parts(roster: &Roster, sym: SymbolId, n: i32, max_order: u32) -> Vec<(Vec<(VarRef, i32)>, u32)> {
    let s = roster.symbol(sym);
    let odd = s.parity.is_odd();
    let mut out = Vec::new();
    // exponents of ∂^1Φ .. ∂^max_order Φ; order zero takes what is left
    let mut exps: Vec<(u32, i32)> = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn rec(
        ord: u32,
        max_order: u32,
        used: u32,
        higher: i32,
        exps: &mut Vec<(u32, i32)>,
        ctx: (&Roster, SymbolId, i32, bool, bool),
        out: &mut Vec<(Vec<(VarRef, i32)>, u32)>,
    ) {
        let (roster, sym, n, odd, invertible) = ctx;
        if ord > max_order {
            let e0 = n - higher;
            let ok = e0 == 0 || (e0 > 0 && (!odd || e0 == 1)) || (e0 < 0 && invertible);
            if ok {
                let mut f = Vec::new();
                if e0 != 0 {
                    f.push((roster.var(sym, 0), e0));
                }
                f.extend(exps.iter().map(|&(o, e)| (roster.var(sym, o), e)));
                out.push((f, used));
            }
            return;
        }
        let mut e = 0i32;
        loop {
            if used + ord * e as u32 > max_order || (odd && e > 1) || (!invertible && higher + e > n) {
                break;
            }
            if e > 0 {
                exps.push((ord, e));
            }
            rec(ord + 1, max_order, used + ord * e as u32, higher + e, exps, ctx, out);
            if e > 0 {
                exps.pop();
            }
            e += 1;
        }
    }
    rec(1, max_order, 0, 0, &mut exps, (roster, sym, n, odd, s.invertible), &mut out);
    out
}

/// Exact solve of ∂g = a, blocked by symbol content and derivative count
/// (∂ preserves the former and raises the latter by one). Works on the
/// localized algebra as well.
pub fn solve_total_derivative(roster: &Roster, a: &Polynomial) -> DerivativeSolve {
    let mut blocks: BTreeMap<(Vec<(SymbolId, i32)>, u32), Polynomial> = BTreeMap::new();
    for (m, c) in a.terms() {
        blocks
            .entry((m.content(), m.derivative_count()))
            .or_default()
            .add_term(m.clone(), c.clone());
    }
    let mut witness = Polynomial::zero();
    let mut remainder = Polynomial::zero();
    for ((content, order), part) in blocks {
        if order == 0 {
            remainder += &part;
            continue;
        }
        let candidates = monomials_with_content(roster, &content, order - 1);
        let mut idx = Indexer::new();
        let mut ech = Echelon::tracked();
        for m in &candidates {
            let img = Polynomial::term(m.clone(), num::BigRational::one()).total_derivative();
            ech.insert(idx.encode(&img));
        }
        let target = idx.encode(&part);
        let (rest, combo) = ech.decompose(&target);
        remainder += &idx.decode(&rest);
        for (i, c) in combo {
            witness.add_term(candidates[i].clone(), c);
        }
    }
    DerivativeSolve { witness, remainder }
}

/// Antibracket of two densities:
/// Σ_i (−1)^{(pa f+1) pa Φ_i} (δf/δΦ_i δg/δΦ_i⁺ + (−1)^{pa f} δf/δΦ_i⁺ δg/δΦ_i).
pub fn antibracket_density(roster: &Roster, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    let pf = parity_of(roster, f)?;
    parity_of(roster, g)?;
    let mut out = Polynomial::zero();
    for (phi, anti) in roster.canonical_pairs() {
        let pphi = roster.symbol(phi).parity.bit();
        let df = variational_derivative(roster, f, phi)?;
        let dfa = variational_derivative(roster, f, anti)?;
        if df.is_zero() && dfa.is_zero() {
            continue;
        }
        let dg = variational_derivative(roster, g, phi)?;
        let dga = variational_derivative(roster, g, anti)?;
        let mut inner = &df * &dga;
        let second = &dfa * &dg;
        if pf == 1 {
            inner -= &second;
        } else {
            inner += &second;
        }
        if (pf + 1) * pphi % 2 == 1 {
            out -= &inner;
        } else {
            out += &inner;
        }
    }
    Ok(out)
}

fn parity_of(roster: &Roster, f: &Polynomial) -> Result<u32> {
    let mut bits = f.terms().map(|(m, _)| m.parity().bit());
    let first = bits.next().unwrap_or(0);
    if bits.any(|b| b != first) {
        let _ = roster;
        return Err(Error::Inhomogeneous("mixed parity".into()));
    }
    Ok(first)
}

/// ∫f dt: a density considered modulo total derivatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalClass {
    pub representative: Polynomial,
}

impl FunctionalClass {
    pub fn new(representative: Polynomial) -> Self {
        FunctionalClass { representative }
    }

    pub fn is_zero(&self, roster: &Roster) -> bool {
        solve_total_derivative(roster, &self.representative).remainder.is_zero()
    }

    pub fn same_class(&self, other: &FunctionalClass, roster: &Roster) -> bool {
        FunctionalClass::new(&self.representative - &other.representative).is_zero(roster)
    }
}

pub fn functional_antibracket(roster: &Roster, f: &FunctionalClass, g: &FunctionalClass) -> Result<FunctionalClass> {
    Ok(FunctionalClass::new(antibracket_density(roster, &f.representative, &g.representative)?))
}
