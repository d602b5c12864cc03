use std::collections::{BTreeMap, HashMap};
use std::fmt::Write;

use num::One;

use crate::calculus::monomials_with_content;
use crate::error::{Error, Result};
use crate::linalg::{kernel, Echelon, Indexer, SparseVec};
use crate::superpoly::{Coeff, Monomial, Polynomial, SymbolId};

use super::space::{BlockKey, Space};
use super::window::Window;

/// Inner-window coordinates sit above this offset so that echelon rows led
/// by an inner index contain inner coordinates only.
const INNER: usize = 1 << 40;

pub(crate) fn sub(a: &BlockKey, b: &BlockKey) -> BlockKey {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn add(a: &BlockKey, b: &BlockKey) -> BlockKey {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Coordinates: inner monomials by position (offset), others on demand.
pub(crate) struct Coords<'a> {
    inner: HashMap<&'a Monomial, usize>,
    outer: Indexer<Monomial>,
}

impl<'a> Coords<'a> {
    pub(crate) fn new(inner: &[&'a Monomial]) -> Self {
        Coords { inner: inner.iter().enumerate().map(|(i, m)| (*m, INNER + i)).collect(), outer: Indexer::new() }
    }

    pub(crate) fn encode(&mut self, p: &Polynomial) -> SparseVec {
        let mut v: SparseVec = p
            .terms()
            .map(|(m, c)| (self.inner.get(m).copied().unwrap_or_else(|| self.outer.index(m)), c.clone()))
            .collect();
        v.sort_by_key(|(i, _)| *i);
        v
    }
}

pub(crate) fn combine_monomials(coeffs: &SparseVec, basis: &[&Monomial]) -> Polynomial {
    Polynomial::from_terms(coeffs.iter().map(|(i, c)| (basis[*i].clone(), c.clone())))
}

pub(crate) fn mono(m: &Monomial) -> Polynomial {
    Polynomial::term(m.clone(), Coeff::one())
}

/// ∂-preimage candidates: every monomial with the same symbol content and
/// one derivative fewer than some monomial of `targets`.
pub(crate) fn derivative_candidates(space: &Space<'_>, targets: &[&Polynomial]) -> Vec<Monomial> {
    let mut keys: BTreeMap<(Vec<(SymbolId, i32)>, u32), ()> = BTreeMap::new();
    for p in targets {
        for (m, _) in p.terms() {
            let c = m.derivative_count();
            if c > 0 {
                keys.insert((m.content(), c - 1), ());
            }
        }
    }
    let mut out = Vec::new();
    for (content, order) in keys.keys() {
        out.extend(monomials_with_content(space.roster(), content, *order));
    }
    out
}

/// Cocycles of one block, as combinations of the block's monomials.
fn block_cocycles(space: &Space<'_>, block: &[&Monomial]) -> Vec<SparseVec> {
    let images: Vec<Polynomial> = space.exec.map(block, |m| space.apply_s(&mono(m)));
    let mut idx: Indexer<Monomial> = Indexer::new();
    let mut columns: Vec<SparseVec> = images.iter().map(|p| idx.encode(p)).collect();
    if space.variant.is_functional() {
        let refs: Vec<&Polynomial> = images.iter().collect();
        let cands = derivative_candidates(space, &refs);
        let dimgs: Vec<Polynomial> = space.exec.map(&cands, |m| space.project(&mono(m).total_derivative()));
        columns.extend(dimgs.iter().map(|p| idx.encode(p)));
    }
    let n = block.len();
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for rel in kernel(&columns) {
        let v: SparseVec = rel.into_iter().filter(|(i, _)| *i < n).collect();
        if !v.is_empty() && ech.insert(v.clone()).is_none() {
            out.push(v);
        }
    }
    out
}

/// Found coboundaries of one block: a basis of (s(outer) [+ ∂(outer)]) ∩ span(block).
fn block_coboundaries(space: &Space<'_>, key: &BlockKey, block: &[&Monomial], k: i32, outer: &Window) -> Vec<SparseVec> {
    let mut pre: Vec<Polynomial> = Vec::new();
    let want = sub(key, &space.s_shift());
    let obasis = space.basis(k - 1, outer);
    let srcs: Vec<&Monomial> = obasis.iter().filter(|m| space.key(m) == want).collect();
    pre.extend(space.exec.map(&srcs, |m| space.apply_s(&mono(m))));
    if space.variant.is_functional() {
        let want = sub(key, &space.d_shift());
        let dbasis = space.basis(k, outer);
        let srcs: Vec<&Monomial> = dbasis.iter().filter(|m| space.key(m) == want).collect();
        pre.extend(space.exec.map(&srcs, |m| space.project(&mono(m).total_derivative())));
    }
    let mut coords = Coords::new(block);
    let mut ech = Echelon::new();
    for p in &pre {
        ech.insert(coords.encode(p));
    }
    echelon_inner_rows(&ech)
}

/// Rows led by an inner coordinate span the intersection with the window.
pub(crate) fn echelon_inner_rows(ech: &Echelon) -> Vec<SparseVec> {
    ech.rows_led_from(INNER).into_iter().map(|r| r.into_iter().map(|(i, c)| (i - INNER, c)).collect()).collect()
}

/// Windowed cohomology data at one margin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarginResult {
    pub margin: u32,
    pub dim_coboundaries_found: usize,
    pub dim_h_upper: usize,
}

/// Exact ranks of s on a window, with found coboundaries from an enlarged
/// window. `dim_h_upper` is an upper bound for the dimension of the
/// cohomology classes represented in the window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub model: String,
    pub space: String,
    pub ghost: i32,
    pub window: Window,
    pub margin: u32,
    pub basis_size: usize,
    pub dim_cocycles: usize,
    pub dim_coboundaries_found: usize,
    pub dim_h_upper: usize,
    pub next_margin: MarginResult,
    pub stabilized: bool,
    pub representatives: Vec<Polynomial>,
    pub coboundaries: Vec<Polynomial>,
}

impl CohomologyReport {
    /// Rank of `candidates` modulo the found coboundaries. Fails if a
    /// candidate is not a cocycle of the space or lies outside the window.
    pub fn class_rank(&self, space: &Space<'_>, candidates: &[Polynomial]) -> Result<usize> {
        let mut idx: Indexer<Monomial> = Indexer::new();
        let mut ech = Echelon::new();
        for c in &self.coboundaries {
            ech.insert(idx.encode(c));
        }
        let base = ech.rank();
        for c in candidates {
            space.check_member(c)?;
            if !self.window.contains(&space.extent_of(c)) {
                return Err(Error::InvalidArgument(format!(
                    "candidate `{}` lies outside window {}",
                    space.roster().render(c),
                    self.window
                )));
            }
            if !is_cocycle(space, c)? {
                return Err(Error::InvalidArgument(format!("candidate `{}` is not closed", space.roster().render(c))));
            }
            ech.insert(idx.encode(c));
        }
        Ok(ech.rank() - base)
    }

    /// True iff the windowed cohomology is spanned by `candidates`, which are
    /// independent modulo coboundaries.
    pub fn spanned_by(&self, space: &Space<'_>, candidates: &[Polynomial]) -> Result<bool> {
        Ok(self.class_rank(space, candidates)? == self.dim_h_upper && candidates.len() == self.dim_h_upper)
    }

    pub fn render(&self, roster: &crate::superpoly::Roster) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "model: {}", self.model);
        let _ = writeln!(s, "space: {}", self.space);
        let _ = writeln!(s, "ghost: {}", self.ghost);
        let _ = writeln!(s, "window: {}", self.window);
        let _ = writeln!(s, "basis: {}", self.basis_size);
        let _ = writeln!(s, "dim_cocycles: {}", self.dim_cocycles);
        let _ = writeln!(s, "margin {}: dim_coboundaries_found {} dim_H_upper {}", self.margin, self.dim_coboundaries_found, self.dim_h_upper);
        let _ = writeln!(
            s,
            "margin {}: dim_coboundaries_found {} dim_H_upper {}",
            self.next_margin.margin, self.next_margin.dim_coboundaries_found, self.next_margin.dim_h_upper
        );
        let _ = writeln!(s, "stabilized: {}", self.stabilized);
        for (i, r) in self.representatives.iter().enumerate() {
            let _ = writeln!(s, "representative {}: {}", i + 1, roster.render(r));
        }
        s
    }
}

/// s(a) = 0, or s(a) ∈ ∂𝒜 in functional spaces.
pub fn is_cocycle(space: &Space<'_>, a: &Polynomial) -> Result<bool> {
    let sa = space.apply_s(a);
    if space.variant.is_functional() {
        Ok(solve_total_derivative_in(space, &sa).is_some())
    } else {
        Ok(sa.is_zero())
    }
}

/// Witness h with ∂h = a (in the space), if any.
pub fn solve_total_derivative_in(space: &Space<'_>, a: &Polynomial) -> Option<Polynomial> {
    if space.variant.is_quotient() {
        let cands = derivative_candidates(space, &[a]);
        let mut idx: Indexer<Monomial> = Indexer::new();
        let mut ech = Echelon::tracked();
        for m in &cands {
            ech.insert(idx.encode(&space.project(&mono(m).total_derivative())));
        }
        let target = idx.encode(a);
        let x = ech.solve(&target)?;
        Some(Polynomial::from_terms(x.into_iter().map(|(i, c)| (cands[i].clone(), c))))
    } else {
        let sol = crate::calculus::solve_total_derivative(space.roster(), a);
        sol.remainder.is_zero().then_some(sol.witness)
    }
}

/// Windowed cohomology in ghost degree `k`: exact cocycles of the window,
/// coboundaries found from the window enlarged by `margin` and by
/// `margin + 1`; stabilized when the two agree.
pub fn cohomology_window(space: &Space<'_>, k: i32, window: &Window, margin: u32) -> Result<CohomologyReport> {
    let basis = space.basis(k, window);
    let blocks = space.blocks(&basis);
    let mut dim_z = 0;
    let mut dims_b = [0usize; 2];
    let mut reps = Vec::new();
    let mut cobs = Vec::new();
    for (key, block) in &blocks {
        let z = block_cocycles(space, block);
        if z.is_empty() {
            continue;
        }
        dim_z += z.len();
        for (slot, m) in [margin, margin + 1].into_iter().enumerate() {
            let b = block_coboundaries(space, key, block, k, &window.enlarged(m));
            dims_b[slot] += b.len();
            if slot == 0 {
                let mut ech = Echelon::new();
                for v in &b {
                    ech.insert(v.clone());
                    cobs.push(combine_monomials(v, block));
                }
                for v in &z {
                    if ech.insert(v.clone()).is_none() {
                        reps.push(combine_monomials(v, block));
                    }
                }
            }
        }
    }
    let h0 = dim_z - dims_b[0];
    let h1 = dim_z - dims_b[1];
    Ok(CohomologyReport {
        model: space.model.name.clone(),
        space: space.variant.to_string(),
        ghost: k,
        window: *window,
        margin,
        basis_size: basis.len(),
        dim_cocycles: dim_z,
        dim_coboundaries_found: dims_b[0],
        dim_h_upper: h0,
        next_margin: MarginResult { margin: margin + 1, dim_coboundaries_found: dims_b[1], dim_h_upper: h1 },
        stabilized: h0 == h1,
        representatives: reps,
        coboundaries: cobs,
    })
}
