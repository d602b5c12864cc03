//! The zero-mode ring ℛ = 𝒪[Θ, P, Γ]/(P_μΘ^μ, η^{μν}P_μP_ν, Γ²) with its
//! differential u ↦ Q(u)Γ, normal forms, windowed cohomology and the
//! zero-mode bracket.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num::One;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::models::MetricSignature;
use crate::superpoly::{int, Coeff, Monomial, Parity, Polynomial, Roster, SymbolId, VarRef};

/// Elements of ℛ share the polynomial representation; ring operations
/// return normal forms.
pub type ZeroModePoly = Polynomial;

struct Block {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    ideal: Echelon,
}

/// The ring ℛ for a given diagonal metric.
pub struct ZeroModeRing {
    metric: MetricSignature,
    roster: Roster,
    blocks: Mutex<HashMap<(usize, usize), Arc<Block>>>,
}

impl std::fmt::Debug for ZeroModeRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ZeroModeRing").field("metric", &self.metric).finish()
    }
}

pub fn x_name(mu: usize) -> String {
    format!("X{mu}")
}

pub fn theta_name(mu: usize) -> String {
    format!("Theta{mu}")
}

pub fn p_name(mu: usize) -> String {
    format!("P{mu}")
}

pub const GAMMA: &str = "Gamma";

/// Which family a generator of ℛ belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroModeGen {
    X(usize),
    Theta(usize),
    P(usize),
    Gamma,
}

impl ZeroModeRing {
    pub fn new(metric: &MetricSignature) -> Self {
        let d = metric.dim();
        let mut roster = Roster::new();
        for mu in 1..=d {
            roster.add_field(&x_name(mu), 0, Parity::Even, false, false).expect("fresh");
        }
        for mu in 1..=d {
            roster.add_field(&theta_name(mu), 0, Parity::Odd, false, false).expect("fresh");
        }
        for mu in 1..=d {
            roster.add_field(&p_name(mu), 0, Parity::Even, false, false).expect("fresh");
        }
        roster.add_field(GAMMA, 1, Parity::Odd, false, false).expect("fresh");
        ZeroModeRing { metric: metric.clone(), roster, blocks: Mutex::new(HashMap::new()) }
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    pub fn metric(&self) -> &MetricSignature {
        &self.metric
    }

    pub fn roster(&self) -> &Roster {
        &self.roster
    }

    fn id_of(&self, g: ZeroModeGen) -> SymbolId {
        let d = self.dim() as SymbolId;
        match g {
            ZeroModeGen::X(mu) => mu as SymbolId - 1,
            ZeroModeGen::Theta(mu) => d + mu as SymbolId - 1,
            ZeroModeGen::P(mu) => 2 * d + mu as SymbolId - 1,
            ZeroModeGen::Gamma => 3 * d,
        }
    }

    pub fn classify(&self, id: SymbolId) -> ZeroModeGen {
        let d = self.dim();
        let i = id as usize;
        match i / d.max(1) {
            _ if i == 3 * d => ZeroModeGen::Gamma,
            0 => ZeroModeGen::X(i + 1),
            1 => ZeroModeGen::Theta(i - d + 1),
            _ => ZeroModeGen::P(i - 2 * d + 1),
        }
    }

    pub fn var(&self, g: ZeroModeGen) -> VarRef {
        self.roster.var(self.id_of(g), 0)
    }

    pub fn gen(&self, g: ZeroModeGen) -> Polynomial {
        Polynomial::var(self.var(g))
    }

    pub fn x(&self, mu: usize) -> Polynomial {
        self.gen(ZeroModeGen::X(mu))
    }

    pub fn theta(&self, mu: usize) -> Polynomial {
        self.gen(ZeroModeGen::Theta(mu))
    }

    pub fn p(&self, mu: usize) -> Polynomial {
        self.gen(ZeroModeGen::P(mu))
    }

    pub fn gamma(&self) -> Polynomial {
        self.gen(ZeroModeGen::Gamma)
    }

    /// Ω = Θ¹…Θ^d.
    pub fn omega(&self) -> Polynomial {
        (1..=self.dim()).fold(Polynomial::one(), |acc, mu| &acc * &self.theta(mu))
    }

    /// P_μΘ^μ (written with P on the left).
    pub fn p_theta(&self) -> Polynomial {
        (1..=self.dim()).map(|mu| &self.p(mu) * &self.theta(mu)).sum()
    }

    /// η^{μν}P_μP_ν.
    pub fn p_squared(&self) -> Polynomial {
        (1..=self.dim()).map(|mu| (&self.p(mu) * &self.p(mu)).scale(&int(self.metric.eta(mu)))).sum()
    }

    /// ι(v)u = η^{μν} v_μ ∂u/∂Θ^ν.
    pub fn iota(&self, v: &[Polynomial], u: &Polynomial) -> Polynomial {
        v.iter()
            .enumerate()
            .map(|(i, vm)| (vm * &u.partial_derivative(self.var(ZeroModeGen::Theta(i + 1)))).scale(&int(self.metric.eta(i + 1))))
            .sum()
    }

    pub fn p_vector(&self) -> Vec<Polynomial> {
        (1..=self.dim()).map(|mu| self.p(mu)).collect()
    }

    /// Rank of a monomial for the term order: P_d > … > P_1 > Θ^d > … > Θ^1,
    /// compared lexicographically on exponents. Larger keys are higher.
    fn order_key(&self, m: &Monomial) -> Vec<i32> {
        let d = self.dim();
        let mut key = Vec::with_capacity(2 * d);
        for mu in (1..=d).rev() {
            key.push(m.exponent(self.var(ZeroModeGen::P(mu))));
        }
        for mu in (1..=d).rev() {
            key.push(m.exponent(self.var(ZeroModeGen::Theta(mu))));
        }
        key
    }

    /// All Θ/P monomials with `i` Θ factors and P-degree `j`.
    pub fn theta_p_monomials(&self, i: usize, j: usize) -> Vec<Monomial> {
        let d = self.dim();
        let mut out = Vec::new();
        let thetas: Vec<VarRef> = (1..=d).map(|mu| self.var(ZeroModeGen::Theta(mu))).collect();
        let ps: Vec<VarRef> = (1..=d).map(|mu| self.var(ZeroModeGen::P(mu))).collect();
        for subset in subsets(d, i) {
            for exps in compositions(j, d) {
                let mut f: SmallVec<[(VarRef, i32); 4]> = SmallVec::new();
                for k in &subset {
                    f.push((thetas[*k], 1));
                }
                for (k, e) in exps.iter().enumerate() {
                    if *e > 0 {
                        f.push((ps[k], *e as i32));
                    }
                }
                out.push(Monomial::from_sorted(f));
            }
        }
        out
    }

    fn block(&self, i: usize, j: usize) -> Arc<Block> {
        if let Some(b) = self.blocks.lock().unwrap().get(&(i, j)) {
            return b.clone();
        }
        let mut monomials = self.theta_p_monomials(i, j);
        monomials.sort_by_key(|m| std::cmp::Reverse(self.order_key(m)));
        let index: HashMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
        let encode = |p: &Polynomial| -> SparseVec {
            let mut v: SparseVec = p.terms().map(|(m, c)| (index[m], c.clone())).collect();
            v.sort_by_key(|(k, _)| *k);
            v
        };
        let mut ideal = Echelon::new();
        if i >= 1 && j >= 1 {
            let f1 = self.p_theta();
            for m in self.theta_p_monomials(i - 1, j - 1) {
                ideal.insert(encode(&(&Polynomial::term(m, Coeff::one()) * &f1)));
            }
        }
        if j >= 2 {
            let f2 = self.p_squared();
            for m in self.theta_p_monomials(i, j - 2) {
                ideal.insert(encode(&(&Polynomial::term(m, Coeff::one()) * &f2)));
            }
        }
        let b = Arc::new(Block { monomials, index, ideal });
        self.blocks.lock().unwrap().insert((i, j), b.clone());
        b
    }

    /// Standard monomials (a basis of the quotient) in Θ/P bidegree (i, j).
    pub fn standard_monomials(&self, i: usize, j: usize) -> Vec<Monomial> {
        let b = self.block(i, j);
        b.monomials
            .iter()
            .enumerate()
            .filter(|(k, _)| b.ideal.residual(&vec![(*k, Coeff::one())]) == vec![(*k, Coeff::one())])
            .map(|(_, m)| m.clone())
            .collect()
    }

    /// Dimension of the ideal (P·Θ, η P P) in bidegree (i, j).
    pub fn ideal_rank(&self, i: usize, j: usize) -> usize {
        self.block(i, j).ideal.rank()
    }

    /// Splits a monomial into (X part, Θ/P part, Γ exponent).
    fn split(&self, m: &Monomial) -> (Monomial, Monomial, i32) {
        let mut x: SmallVec<[(VarRef, i32); 4]> = SmallVec::new();
        let mut tp: SmallVec<[(VarRef, i32); 4]> = SmallVec::new();
        let mut g = 0;
        for &(v, e) in m.factors() {
            match self.classify(v.symbol) {
                ZeroModeGen::X(_) => x.push((v, e)),
                ZeroModeGen::Gamma => g = e,
                _ => tp.push((v, e)),
            }
        }
        (Monomial::from_sorted(x), Monomial::from_sorted(tp), g)
    }

    /// Normal form modulo (P_μΘ^μ, η^{μν}P_μP_ν, Γ²): the unique
    /// representative supported on standard monomials.
    pub fn reduce(&self, u: &Polynomial) -> ZeroModePoly {
        let mut out = Polynomial::zero();
        let gamma = self.gamma();
        for (m, c) in u.terms() {
            let (x, tp, g) = self.split(m);
            let mut i = 0usize;
            let mut j = 0usize;
            for &(v, e) in tp.factors() {
                match self.classify(v.symbol) {
                    ZeroModeGen::Theta(_) => i += 1,
                    _ => j += e as usize,
                }
            }
            let b = self.block(i, j);
            let rest = b.ideal.residual(&vec![(b.index[&tp], Coeff::one())]);
            let nf: Polynomial = Polynomial::from_terms(rest.into_iter().map(|(k, v)| (b.monomials[k].clone(), v)));
            let mut piece = &Polynomial::term(x, c.clone()) * &nf;
            if g == 1 {
                piece = &piece * &gamma;
            }
            out += &piece;
        }
        out
    }

    /// Q = η^{μν}P_μ ∂/∂Θ^ν + Θ^μ ∂/∂X^μ on representatives (no reduction).
    pub fn q_free(&self, u: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for mu in 1..=self.dim() {
            let dth = u.partial_derivative(self.var(ZeroModeGen::Theta(mu)));
            out += &(&self.p(mu) * &dth).scale(&int(self.metric.eta(mu)));
            let dx = u.partial_derivative(self.var(ZeroModeGen::X(mu)));
            out += &(&self.theta(mu) * &dx);
        }
        out
    }

    /// Q(u) in normal form.
    pub fn q_apply(&self, u: &Polynomial) -> ZeroModePoly {
        self.reduce(&self.q_free(u))
    }

    /// The differential of ℛ: u ↦ Q(u)Γ, in normal form.
    pub fn differential(&self, u: &Polynomial) -> ZeroModePoly {
        self.reduce(&(&self.q_free(u) * &self.gamma()))
    }

    /// Product in ℛ.
    pub fn multiply(&self, a: &Polynomial, b: &Polynomial) -> ZeroModePoly {
        self.reduce(&(a * b))
    }

    /// The displayed bracket on representatives:
    /// (−1)^{pa u}(∂u/∂X^μ ∂v/∂P_μ − ∂u/∂P_μ ∂v/∂X^μ) − η^{μν} ∂u/∂Θ^μ ∂v/∂Θ^ν.
    pub fn bracket_free(&self, u: &Polynomial, v: &Polynomial) -> Result<Polynomial> {
        let pu = u
            .parity()
            .ok_or_else(|| Error::Inhomogeneous(self.roster.render(u)))
            .or_else(|e| if u.is_zero() { Ok(Parity::Even) } else { Err(e) })?;
        if v.parity().is_none() && !v.is_zero() {
            return Err(Error::Inhomogeneous(self.roster.render(v)));
        }
        let mut out = Polynomial::zero();
        for mu in 1..=self.dim() {
            let (x, t, p) = (
                self.var(ZeroModeGen::X(mu)),
                self.var(ZeroModeGen::Theta(mu)),
                self.var(ZeroModeGen::P(mu)),
            );
            let mut xp = &u.partial_derivative(x) * &v.partial_derivative(p);
            xp -= &(&u.partial_derivative(p) * &v.partial_derivative(x));
            if pu.is_odd() {
                xp = -xp;
            }
            out += &xp;
            out -= &(&u.partial_derivative(t) * &v.partial_derivative(t)).scale(&int(self.metric.eta(mu)));
        }
        Ok(out)
    }

    /// The bracket followed by reduction.
    pub fn zero_bracket(&self, u: &Polynomial, v: &Polynomial) -> Result<ZeroModePoly> {
        Ok(self.reduce(&self.bracket_free(u, v)?))
    }

    fn p_degree(&self, m: &Monomial) -> i32 {
        m.factors()
            .iter()
            .filter(|(v, _)| matches!(self.classify(v.symbol), ZeroModeGen::P(_)))
            .map(|(_, e)| *e)
            .sum()
    }

    /// (ℰ + 1)⁻¹ with ℰ = P_μ∂/∂P_μ: divides each term by (P-degree + 1).
    pub fn euler_shift_inverse(&self, w: &Polynomial) -> Polynomial {
        Polynomial::from_terms(w.terms().map(|(m, c)| (m.clone(), c / int(self.p_degree(m) as i64 + 1))))
    }

    /// u restricted to Θ = 0.
    pub fn at_theta_zero(&self, u: &Polynomial) -> Polynomial {
        u.filter_terms(|m| m.factors().iter().all(|(v, _)| !matches!(self.classify(v.symbol), ZeroModeGen::Theta(_))))
    }

    /// u restricted to Θ = 0, P = 0.
    pub fn at_theta_p_zero(&self, u: &Polynomial) -> Polynomial {
        u.filter_terms(|m| {
            m.factors()
                .iter()
                .all(|(v, _)| matches!(self.classify(v.symbol), ZeroModeGen::X(_) | ZeroModeGen::Gamma))
        })
    }

    /// U^{μν} = (ℰ+1)⁻¹ ∂²u/∂P_μ∂P_ν (x, 0, P), so that
    /// ∂u/∂P_μ(x,0,P) = ∂u/∂P_μ(x,0,0) + P_ν U^{μν}.
    pub fn u_tensor(&self, u: &Polynomial) -> Vec<Vec<Polynomial>> {
        let u0 = self.at_theta_zero(u);
        (1..=self.dim())
            .map(|mu| {
                (1..=self.dim())
                    .map(|nu| {
                        let dd = u0
                            .partial_derivative(self.var(ZeroModeGen::P(nu)))
                            .partial_derivative(self.var(ZeroModeGen::P(mu)));
                        self.euler_shift_inverse(&dd)
                    })
                    .collect()
            })
            .collect()
    }

    /// Standard monomials of ℛ⁰ (Γ-free) of total degree `n`.
    pub fn degree_basis(&self, n: usize) -> Vec<Monomial> {
        let d = self.dim();
        let mut out = Vec::new();
        let xs: Vec<VarRef> = (1..=d).map(|mu| self.var(ZeroModeGen::X(mu))).collect();
        for i in 0..=n.min(d) {
            for j in 0..=(n - i) {
                let std = self.standard_monomials(i, j);
                for a in compositions(n - i - j, d) {
                    let xf: SmallVec<[(VarRef, i32); 4]> =
                        a.iter().enumerate().filter(|(_, e)| **e > 0).map(|(k, e)| (xs[k], *e as i32)).collect();
                    let xm = Monomial::from_sorted(xf);
                    for m in &std {
                        let (prod, neg) = xm.mul(m).expect("disjoint generators");
                        debug_assert!(!neg);
                        out.push(prod);
                    }
                }
            }
        }
        out
    }

    /// Exact H⁰ and H¹ of ℛ degree by degree up to `cap`. Q preserves total
    /// degree, so each degree is a finite complex ℛ⁰_n → ℛ⁰_nΓ.
    pub fn cohomology(&self, cap: usize) -> RCohomologyReport {
        let mut degrees = Vec::new();
        for n in 0..=cap {
            let basis = self.degree_basis(n);
            let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(k, m)| (m, k)).collect();
            let mut ech = Echelon::new();
            for m in &basis {
                let img = self.q_apply(&Polynomial::term(m.clone(), Coeff::one()));
                let mut v: SparseVec = img.terms().map(|(mm, c)| (index[mm], c.clone())).collect();
                v.sort_by_key(|(k, _)| *k);
                ech.insert(v);
            }
            let rank = ech.rank();
            degrees.push(RDegree { degree: n, dim: basis.len(), rank, h0: basis.len() - rank, h1: basis.len() - rank });
        }
        RCohomologyReport { dim: self.dim(), cap, degrees }
    }

    /// Kernel of Q on ℛ⁰ in total degree `n`, as normal forms.
    pub fn cocycles(&self, n: usize) -> Vec<Polynomial> {
        let basis = self.degree_basis(n);
        let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(k, m)| (m, k)).collect();
        let cols: Vec<SparseVec> = basis
            .iter()
            .map(|m| {
                let img = self.q_apply(&Polynomial::term(m.clone(), Coeff::one()));
                let mut v: SparseVec = img.terms().map(|(mm, c)| (index[mm], c.clone())).collect();
                v.sort_by_key(|(k, _)| *k);
                v
            })
            .collect();
        crate::linalg::kernel(&cols)
            .into_iter()
            .map(|x| Polynomial::from_terms(x.into_iter().map(|(k, c)| (basis[k].clone(), c))))
            .collect()
    }

    /// True iff `u` is zero in ℛ.
    pub fn is_zero(&self, u: &Polynomial) -> bool {
        self.reduce(u).is_zero()
    }
}

/// Per-degree ranks of Q on ℛ⁰.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RDegree {
    pub degree: usize,
    pub dim: usize,
    pub rank: usize,
    pub h0: usize,
    pub h1: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RCohomologyReport {
    pub dim: usize,
    pub cap: usize,
    pub degrees: Vec<RDegree>,
}

impl RCohomologyReport {
    pub fn h0(&self) -> usize {
        self.degrees.iter().map(|d| d.h0).sum()
    }

    pub fn h1(&self) -> usize {
        self.degrees.iter().map(|d| d.h1).sum()
    }

    pub fn render(&self) -> String {
        let mut s = format!("zero-mode ring, d = {}, total degree <= {}\n", self.dim, self.cap);
        for d in &self.degrees {
            s.push_str(&format!(
                "  degree {}: dim {} rank(Q) {} H0 {} H1 {}\n",
                d.degree, d.dim, d.rank, d.h0, d.h1
            ));
        }
        s.push_str(&format!("  total: H0 {} H1 {}\n", self.h0(), self.h1()));
        s
    }
}

/// Size-`k` subsets of `0..n`, ascending.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Exponent vectors of length `parts` summing to `total`.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
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
