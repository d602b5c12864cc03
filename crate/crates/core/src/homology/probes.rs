use std::collections::BTreeMap;
use std::fmt::Write;

use num::Zero;

use crate::calculus::{antibracket_density, CheckReport};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Indexer, SparseVec};
use crate::models::ModelSpec;
use crate::superpoly::{Coeff, Monomial, Polynomial};

use super::complex::{cohomology_window, derivative_candidates, is_cocycle, mono, sub, CohomologyReport};
use super::space::{BlockKey, Space, SpaceVariant};
use super::window::Window;

fn ghost_of(space: &Space<'_>, a: &Polynomial) -> Result<i32> {
    match space.roster().grading(a)? {
        Some(g) => Ok(g.ghost),
        None => Err(Error::InvalidArgument("zero input has no ghost number".into())),
    }
}

fn split_blocks(space: &Space<'_>, a: &Polynomial) -> BTreeMap<BlockKey, Polynomial> {
    let mut out: BTreeMap<BlockKey, Polynomial> = BTreeMap::new();
    for (m, c) in a.terms() {
        out.entry(space.key(m)).or_default().add_term(m.clone(), c.clone());
    }
    out
}

/// Solves `target = s(g) [+ ∂h] [+ λ·extra]` block by block with g in the
/// `outer` window. Returns (g, h, λ) or None.
fn solve_exact(
    space: &Space<'_>,
    target: &Polynomial,
    extra: Option<&Polynomial>,
    k: i32,
    outer: &Window,
    with_derivatives: bool,
) -> Option<(Polynomial, Polynomial, Coeff)> {
    let mut g = Polynomial::zero();
    let mut h = Polynomial::zero();
    let mut lambda: Option<Coeff> = None;
    let mut keys: BTreeMap<BlockKey, ()> = split_blocks(space, target).into_keys().map(|k| (k, ())).collect();
    if let Some(e) = extra {
        keys.extend(split_blocks(space, e).into_keys().map(|k| (k, ())));
    }
    let tblocks = split_blocks(space, target);
    let eblocks = extra.map(|e| split_blocks(space, e)).unwrap_or_default();
    let obasis = space.basis(k - 1, outer);
    for key in keys.keys() {
        let want = sub(key, &space.s_shift());
        let srcs: Vec<&Monomial> = obasis.iter().filter(|m| space.key(m) == want).collect();
        let simgs: Vec<Polynomial> = space.exec.map(&srcs, |m| space.apply_s(&mono(m)));
        let t = tblocks.get(key).cloned().unwrap_or_default();
        let e = eblocks.get(key).cloned().unwrap_or_default();
        let mut dsrcs: Vec<Monomial> = Vec::new();
        if with_derivatives {
            let mut refs: Vec<&Polynomial> = simgs.iter().collect();
            refs.push(&t);
            refs.push(&e);
            dsrcs = derivative_candidates(space, &refs);
        }
        let dimgs: Vec<Polynomial> = space.exec.map(&dsrcs, |m| space.project(&mono(m).total_derivative()));
        let mut idx: Indexer<Monomial> = Indexer::new();
        let mut ech = Echelon::tracked();
        let offset = usize::from(extra.is_some());
        if extra.is_some() {
            ech.insert(idx.encode(&e));
        }
        for p in simgs.iter().chain(&dimgs) {
            ech.insert(idx.encode(p));
        }
        let x: SparseVec = ech.solve(&idx.encode(&t))?;
        for (i, c) in x {
            if i < offset {
                match &lambda {
                    Some(l) if *l != c => return None,
                    _ => lambda = Some(c),
                }
            } else if i - offset < srcs.len() {
                g.add_term(srcs[i - offset].clone(), c);
            } else {
                h.add_term(dsrcs[i - offset - srcs.len()].clone(), c);
            }
        }
    }
    Some((g, h, lambda.unwrap_or_else(Coeff::zero)))
}

/// Outcome of a windowed coboundary search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoboundarySearch {
    /// g with s(g) = a, from the smaller outer window when found there.
    pub witness: Option<Polynomial>,
    pub outer_window: Window,
    /// Not found with margins m and m+1.
    pub stable_not_found: bool,
}

impl CoboundarySearch {
    pub fn render(&self, space: &Space<'_>) -> String {
        match &self.witness {
            Some(g) => format!("coboundary: yes\nwitness: {}\n", space.roster().render(g)),
            None => format!(
                "coboundary: not found in window {}\nstable across two margins: {}\n",
                self.outer_window, self.stable_not_found
            ),
        }
    }
}

/// Searches g with s(g) = a in the window of `a` enlarged by `margin`
/// (and by `margin + 1` to test stability).
pub fn is_coboundary(space: &Space<'_>, a: &Polynomial, margin: u32) -> Result<CoboundarySearch> {
    if space.variant.is_functional() {
        return Err(Error::InvalidArgument("is_coboundary works in A-type spaces; use functional_class_test".into()));
    }
    space.check_member(a)?;
    let sa = space.apply_s(a);
    if !sa.is_zero() {
        return Err(Error::Precondition(format!("input is not closed: s(a) = {}", space.roster().render(&sa))));
    }
    let outer = space.extent_of(a).enlarged(margin);
    if a.is_zero() {
        return Ok(CoboundarySearch { witness: Some(Polynomial::zero()), outer_window: outer, stable_not_found: false });
    }
    let k = ghost_of(space, a)?;
    if let Some((g, _, _)) = solve_exact(space, a, None, k, &outer, false) {
        return Ok(CoboundarySearch { witness: Some(g), outer_window: outer, stable_not_found: false });
    }
    let next = space.extent_of(a).enlarged(margin + 1);
    let found_next = solve_exact(space, a, None, k, &next, false);
    Ok(CoboundarySearch {
        witness: found_next.as_ref().map(|(g, _, _)| g.clone()),
        outer_window: outer,
        stable_not_found: found_next.is_none(),
    })
}

/// Closedness and exactness of ∫a dt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalClassTest {
    pub closed: bool,
    /// (g, h) with a = s(g) + ∂h.
    pub exact: Option<(Polynomial, Polynomial)>,
    pub outer_window: Window,
    pub stable_not_found: bool,
}

impl FunctionalClassTest {
    pub fn render(&self, space: &Space<'_>) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "closed: {}", self.closed);
        match &self.exact {
            Some((g, h)) => {
                let _ = writeln!(s, "exact: yes");
                let _ = writeln!(s, "s-witness: {}", space.roster().render(g));
                let _ = writeln!(s, "d-witness: {}", space.roster().render(h));
            }
            None => {
                let _ = writeln!(s, "exact: not found in window {}", self.outer_window);
                let _ = writeln!(s, "stable across two margins: {}", self.stable_not_found);
            }
        }
        s
    }
}

fn functional_space<'m>(space: &Space<'m>, a: &Polynomial) -> Result<Space<'m>> {
    let variant = match space.variant {
        v if v.is_functional() => v,
        SpaceVariant::AModI => SpaceVariant::FModI,
        _ if a.has_negative_exponents() => SpaceVariant::FLocalized,
        SpaceVariant::ALocalized => SpaceVariant::FLocalized,
        _ => SpaceVariant::F,
    };
    Space::with_exec(space.model, variant, space.exec)
}

/// ∫a dt: closed iff s(a) ∈ ∂𝒜; exact iff a ∈ s(outer) + ∂𝒜 (the ∂ part is
/// solved without truncation).
pub fn functional_class_test(space: &Space<'_>, a: &Polynomial, margin: u32) -> Result<FunctionalClassTest> {
    let fs = functional_space(space, a)?;
    fs.check_member(a)?;
    let closed = is_cocycle(&fs, a)?;
    let outer = fs.extent_of(a).enlarged(margin);
    if a.is_zero() {
        return Ok(FunctionalClassTest {
            closed,
            exact: Some((Polynomial::zero(), Polynomial::zero())),
            outer_window: outer,
            stable_not_found: false,
        });
    }
    let k = ghost_of(&fs, a)?;
    let first = solve_exact(&fs, a, None, k, &outer, true);
    let (exact, stable) = match first {
        Some((g, h, _)) => (Some((g, h)), false),
        None => {
            let next = solve_exact(&fs, a, None, k, &fs.extent_of(a).enlarged(margin + 1), true);
            let stable = next.is_none();
            (next.map(|(g, h, _)| (g, h)), stable)
        }
    };
    Ok(FunctionalClassTest { closed, exact, outer_window: outer, stable_not_found: stable })
}

/// Checks {lhs.0, lhs.1} − rhs ∈ s(outer) + ∂𝒜 for functionally closed
/// inputs.
pub fn bracket_identity_check(
    space: &Space<'_>,
    lhs: (&Polynomial, &Polynomial),
    rhs: &Polynomial,
    margin: u32,
) -> Result<CheckReport> {
    let combined = &(lhs.0 + lhs.1) + rhs;
    let fs = functional_space(space, &combined)?;
    for (label, p) in [("left", lhs.0), ("right", lhs.1)] {
        if !is_cocycle(&fs, p)? {
            return Err(Error::Precondition(format!(
                "{label} argument is not closed: {}",
                fs.roster().render(p)
            )));
        }
    }
    let bracket = antibracket_density(fs.roster(), lhs.0, lhs.1)?;
    let diff = &bracket - rhs;
    let name = "bracket identity";
    if diff.is_zero() {
        return Ok(CheckReport::new(name, diff, None, vec!["identity holds as densities".into()]));
    }
    let k = ghost_of(&fs, &diff)?;
    let outer = fs.extent_of(&diff).enlarged(margin);
    match solve_exact(&fs, &diff, None, k, &outer, true) {
        Some((g, h, _)) => Ok(CheckReport::new(
            name,
            Polynomial::zero(),
            Some(g),
            vec![format!("difference is s(witness) + d({})", fs.roster().render(&h))],
        )),
        None => Ok(CheckReport::new(
            name,
            diff,
            None,
            vec![format!("difference not exact in window {outer}; bracket = {}", fs.roster().render(&bracket))],
        )),
    }
}

/// λ with {lhs.0, lhs.1} ≡ λ·rhs modulo s(outer) + ∂𝒜, if one exists.
pub fn bracket_scalar(
    space: &Space<'_>,
    lhs: (&Polynomial, &Polynomial),
    rhs: &Polynomial,
    margin: u32,
) -> Result<Option<Coeff>> {
    let combined = &(lhs.0 + lhs.1) + rhs;
    let fs = functional_space(space, &combined)?;
    let bracket = antibracket_density(fs.roster(), lhs.0, lhs.1)?;
    if bracket.is_zero() && rhs.is_zero() {
        return Ok(Some(Coeff::zero()));
    }
    let probe = if bracket.is_zero() { rhs } else { &bracket };
    let k = ghost_of(&fs, probe)?;
    let outer = fs.extent_of(&bracket).join(&fs.extent_of(rhs)).enlarged(margin);
    Ok(solve_exact(&fs, &bracket, Some(rhs), k, &outer, true).map(|(_, _, l)| l))
}

/// One degree of the Felder–Kazhdan probe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FkEntry {
    pub k: i32,
    pub quotient: CohomologyReport,
    pub functional: CohomologyReport,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FkReport {
    pub model: String,
    pub entries: Vec<FkEntry>,
}

impl FkReport {
    /// Degrees −k where the windowed H^{−k}(𝒜/(∂𝒜+ℐ)) is nonzero.
    pub fn quotient_nonvanishing(&self) -> Vec<i32> {
        self.entries.iter().filter(|e| e.quotient.dim_h_upper > 0).map(|e| e.k).collect()
    }

    pub fn functional_nonvanishing(&self) -> Vec<i32> {
        self.entries.iter().filter(|e| e.functional.dim_h_upper > 0).map(|e| e.k).collect()
    }

    pub fn axiom_holds(&self) -> bool {
        self.quotient_nonvanishing().is_empty()
    }

    pub fn render(&self, model: &ModelSpec) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "model: {}", self.model);
        for e in &self.entries {
            for (label, r) in [("A/(dA+I)", &e.quotient), ("F", &e.functional)] {
                let _ = writeln!(
                    s,
                    "H^-{}({label}): dim_H_upper {} (margin {}: {}) stabilized {}",
                    e.k, r.dim_h_upper, r.next_margin.margin, r.next_margin.dim_h_upper, r.stabilized
                );
                for rep in &r.representatives {
                    let _ = writeln!(s, "  witness: {}", model.render(rep));
                }
            }
        }
        let _ = writeln!(s, "axiom holds in tested degrees: {}", self.axiom_holds());
        s
    }
}

/// Windowed H^{−k}(𝒜/(∂𝒜+ℐ)) and H^{−k}(𝒻) for each k.
pub fn fk_probe(model: &ModelSpec, ks: &[i32], window: &Window, margin: u32) -> Result<FkReport> {
    let q = Space::new(model, SpaceVariant::FModI)?;
    let f = Space::new(model, SpaceVariant::F)?;
    let mut entries = Vec::new();
    for &k in ks {
        if k <= 0 {
            return Err(Error::InvalidArgument(format!("fk_probe degrees must be positive, got {k}")));
        }
        entries.push(FkEntry {
            k,
            quotient: cohomology_window(&q, -k, window, margin)?,
            functional: cohomology_window(&f, -k, window, margin)?,
        });
    }
    Ok(FkReport { model: model.name.clone(), entries })
}
