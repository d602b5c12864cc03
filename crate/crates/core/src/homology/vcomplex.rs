//! The cone of ∂: 𝒱^k = 𝒜^k ⊕ 𝒜^{k+1}ε with
//! d(f + gε) = (sf + (−1)^{pa g}∂g) + (sg)ε. Since ker ∂ = ℚ, its cohomology
//! is that of 𝒜/∂𝒜 plus the class of 1·ε in degree −1, unless 1·ε is exact,
//! in which case the connecting map removes one class from degree −2.

use std::collections::HashMap;
use std::fmt::Write;

use crate::calculus::CheckReport;
use crate::error::{Error, Result};
use crate::linalg::{kernel, Echelon, Indexer, SparseVec};
use crate::models::ModelSpec;
use crate::superpoly::{Monomial, Polynomial};

use super::complex::{add, cohomology_window, mono, sub, MarginResult};
use super::space::{BlockKey, Space, SpaceVariant};
use super::window::Window;

const INNER: usize = 1 << 40;

/// An element f + gε of 𝒱.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VElement {
    pub f: Polynomial,
    pub g: Polynomial,
}

impl VElement {
    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.g.is_zero()
    }
}

/// The 𝒱 differential.
pub fn v_differential(space: &Space<'_>, x: &VElement) -> VElement {
    let mut f = space.apply_s(&x.f);
    for (m, c) in x.g.terms() {
        let dg = mono(m).total_derivative().scale(c);
        if m.parity().is_odd() {
            f -= &dg;
        } else {
            f += &dg;
        }
    }
    VElement { f, g: space.apply_s(&x.g) }
}

/// Block key of gε given the key of g.
fn eps_key(space: &Space<'_>, g: &BlockKey) -> BlockKey {
    add(g, &sub(&space.d_shift(), &space.s_shift()))
}

struct VCoords<'a> {
    inner: [HashMap<&'a Monomial, usize>; 2],
    outer: [Indexer<Monomial>; 2],
}

impl<'a> VCoords<'a> {
    fn new(fs: &[&'a Monomial], gs: &[&'a Monomial]) -> Self {
        let f = fs.iter().enumerate().map(|(i, m)| (*m, INNER + i)).collect();
        let g = gs.iter().enumerate().map(|(i, m)| (*m, INNER + fs.len() + i)).collect();
        VCoords { inner: [f, g], outer: [Indexer::new(), Indexer::new()] }
    }

    fn encode(&mut self, x: &VElement) -> SparseVec {
        let mut v = SparseVec::new();
        for (slot, p) in [&x.f, &x.g].into_iter().enumerate() {
            for (m, c) in p.terms() {
                let i = match self.inner[slot].get(m) {
                    Some(i) => *i,
                    None => 2 * self.outer[slot].index(m) + slot,
                };
                v.push((i, c.clone()));
            }
        }
        v.sort_by_key(|(i, _)| *i);
        v
    }
}

type VBlocks<'a> = std::collections::BTreeMap<BlockKey, (Vec<&'a Monomial>, Vec<&'a Monomial>)>;

fn v_blocks<'a>(space: &Space<'_>, fs: &'a [Monomial], gs: &'a [Monomial]) -> VBlocks<'a> {
    let mut out: VBlocks<'a> = VBlocks::new();
    for m in fs {
        out.entry(space.key(m)).or_default().0.push(m);
    }
    for m in gs {
        out.entry(eps_key(space, &space.key(m))).or_default().1.push(m);
    }
    out
}

fn generators(fs: &[&Monomial], gs: &[&Monomial]) -> Vec<VElement> {
    fs.iter()
        .map(|m| VElement { f: mono(m), g: Polynomial::zero() })
        .chain(gs.iter().map(|m| VElement { f: Polynomial::zero(), g: mono(m) }))
        .collect()
}

/// Windowed ranks of H^k(𝒱).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VComplexRanks {
    pub ghost: i32,
    pub window: Window,
    pub basis_size: usize,
    pub dim_cocycles: usize,
    pub margins: [MarginResult; 2],
}

impl VComplexRanks {
    pub fn dim_h_upper(&self) -> usize {
        self.margins[0].dim_h_upper
    }

    pub fn stabilized(&self) -> bool {
        self.margins[0].dim_h_upper == self.margins[1].dim_h_upper
    }
}

/// Windowed cohomology of 𝒱 in degree `k`, found coboundaries taken from
/// the window enlarged by `margin` and `margin + 1`.
pub fn v_cohomology_window(space: &Space<'_>, k: i32, window: &Window, margin: u32) -> Result<VComplexRanks> {
    if space.variant.is_functional() || space.variant.is_quotient() {
        return Err(Error::InvalidArgument(format!("the cone of ∂ is built over 𝒜, not {}", space.variant)));
    }
    let fs = space.basis(k, window);
    let gs = space.basis(k + 1, window);
    let blocks = v_blocks(space, &fs, &gs);
    let mut dim_z = 0;
    let mut dims_b = [0usize; 2];
    for (key, (bf, bg)) in &blocks {
        let gens = generators(bf, bg);
        let images: Vec<VElement> = space.exec.map(&gens, |x| v_differential(space, x));
        let mut coords = VCoords::new(&[], &[]);
        let cols: Vec<SparseVec> = images.iter().map(|x| coords.encode(x)).collect();
        let z = kernel(&cols).len();
        if z == 0 {
            continue;
        }
        dim_z += z;
        for (slot, m) in [margin, margin + 1].into_iter().enumerate() {
            let outer = window.enlarged(m);
            let want = sub(key, &space.s_shift());
            let of = space.basis(k - 1, &outer);
            let og = space.basis(k, &outer);
            let sf: Vec<&Monomial> = of.iter().filter(|m| space.key(m) == want).collect();
            let sg: Vec<&Monomial> = og.iter().filter(|m| eps_key(space, &space.key(m)) == want).collect();
            let pre = generators(&sf, &sg);
            let imgs: Vec<VElement> = space.exec.map(&pre, |x| v_differential(space, x));
            let mut coords = VCoords::new(bf, bg);
            let mut ech = Echelon::new();
            for x in &imgs {
                ech.insert(coords.encode(x));
            }
            dims_b[slot] += ech.rows_led_from(INNER).len();
        }
    }
    Ok(VComplexRanks {
        ghost: k,
        window: *window,
        basis_size: fs.len() + gs.len(),
        dim_cocycles: dim_z,
        margins: [
            MarginResult { margin, dim_coboundaries_found: dims_b[0], dim_h_upper: dim_z - dims_b[0] },
            MarginResult { margin: margin + 1, dim_coboundaries_found: dims_b[1], dim_h_upper: dim_z - dims_b[1] },
        ],
    })
}

/// Whether 1·ε = d(f + gε) for some f, g in `outer`.
pub fn unit_eps_exact(space: &Space<'_>, outer: &Window) -> bool {
    let unit = VElement { f: Polynomial::zero(), g: Polynomial::one() };
    let want = eps_key(space, &space.key(&Monomial::one()));
    let want = sub(&want, &space.s_shift());
    let of = space.basis(-2, outer);
    let og = space.basis(-1, outer);
    let sf: Vec<&Monomial> = of.iter().filter(|m| space.key(m) == want).collect();
    let sg: Vec<&Monomial> = og.iter().filter(|m| eps_key(space, &space.key(m)) == want).collect();
    let imgs: Vec<VElement> = space.exec.map(&generators(&sf, &sg), |x| v_differential(space, x));
    let mut coords = VCoords::new(&[], &[]);
    let mut ech = Echelon::new();
    for x in &imgs {
        ech.insert(coords.encode(x));
    }
    ech.contains(&coords.encode(&unit))
}

/// d² = 0 on the windowed basis of 𝒱^k, and windowed H^k(𝒱) against the
/// functional cohomology of the same window (plus one in degree −1).
pub fn v_complex_check(model: &ModelSpec, k: i32, window: &Window, margin: u32) -> Result<CheckReport> {
    let variant = if window.max_gamma_inverse_depth > 0 { SpaceVariant::ALocalized } else { SpaceVariant::A };
    let space = Space::new(model, variant)?;
    let functional = Space::new(model, if variant.is_localized() { SpaceVariant::FLocalized } else { SpaceVariant::F })?;
    let fs = space.basis(k, window);
    let gs = space.basis(k + 1, window);
    let fr: Vec<&Monomial> = fs.iter().collect();
    let gr: Vec<&Monomial> = gs.iter().collect();
    let gens = generators(&fr, &gr);
    let squares: Vec<VElement> = space.exec.map(&gens, |x| v_differential(&space, &v_differential(&space, x)));
    let mut items = Vec::new();
    for (x, sq) in gens.iter().zip(&squares) {
        if !sq.is_zero() {
            let label = if x.f.is_zero() {
                format!("d²({}ε)", model.render(&x.g))
            } else {
                format!("d²({})", model.render(&x.f))
            };
            items.push((label, &sq.f + &sq.g));
        }
    }
    let v = v_cohomology_window(&space, k, window, margin)?;
    let f = cohomology_window(&functional, k, window, margin)?;
    let mut report = CheckReport::from_items("v_complex", &model.roster, items);
    let exact = matches!(k, -1 | -2) && unit_eps_exact(&space, &window.enlarged(margin));
    let mut detail = String::new();
    let _ = write!(
        detail,
        "ghost {k} window {window}: H(V) upper {} (stabilized {}), H(F) upper {} (stabilized {}), 1·ε exact {exact}",
        v.dim_h_upper(),
        v.stabilized(),
        f.dim_h_upper,
        f.stabilized
    );
    report.detail.push(detail);
    let expected = match (k, exact) {
        (-1, false) => f.dim_h_upper + 1,
        (-2, true) => f.dim_h_upper.saturating_sub(1),
        _ => f.dim_h_upper,
    };
    if v.dim_h_upper() != expected {
        report.passed = false;
        report.detail.push("rank mismatch between the cone of ∂ and 𝒜/∂𝒜".into());
    }
    Ok(report)
}
