//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use num::{One, Zero};

use bv_core::superpoly::{Coeff, Monomial, Polynomial, VarRef};
use bv_core::zeromode::{ZeroModeGen, ZeroModeRing};

type Vector = BTreeMap<Monomial, Coeff>;

fn to_vector(p: &Polynomial) -> Vector {
    p.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

/// Row echelon form over ℚ with the largest monomial of each row as pivot.
#[derive(Default)]
pub struct Echelon {
    rows: BTreeMap<Monomial, Vector>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, p: &Polynomial) -> Vector {
        let mut v = to_vector(p);
        for (pivot, row) in self.rows.iter().rev() {
            let Some(c) = v.get(pivot).cloned() else { continue };
            for (m, r) in row {
                let e = v.entry(m.clone()).or_insert_with(Coeff::zero);
                *e -= &c * r;
                if e.is_zero() {
                    v.remove(m);
                }
            }
        }
        v
    }

    pub fn insert(&mut self, p: &Polynomial) -> bool {
        let v = self.reduce(p);
        let Some((pivot, lead)) = v.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) else {
            return false;
        };
        let row: Vector = v.into_iter().map(|(m, c)| (m, c / &lead)).collect();
        self.rows.insert(pivot, row);
        true
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.reduce(p).is_empty()
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn exponent_vectors(n: usize, total: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in exponent_vectors(n - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn power_product(vars: &[VarRef], exps: &[usize]) -> Polynomial {
    let f: Vec<(VarRef, i32)> = vars.iter().zip(exps).filter(|(_, e)| **e > 0).map(|(v, e)| (*v, *e as i32)).collect();
    Polynomial::product_of(Coeff::one(), &f)
}

/// Multidegree of a monomial of ℛ: (X exponents, Γ exponent, Θ count, P degree).
pub type Block = (Vec<i32>, i32, usize, usize);

/// Brute-force quotient of ℛ by (P_μΘ^μ, η^{μν}P_μP_ν): the ideal is spanned
/// blockwise by all monomial multiples of the two generators.
pub struct QuotientOracle<'r> {
    pub ring: &'r ZeroModeRing,
    blocks: HashMap<Block, (Echelon, usize)>,
}

impl<'r> QuotientOracle<'r> {
    pub fn new(ring: &'r ZeroModeRing) -> Self {
        QuotientOracle { ring, blocks: HashMap::new() }
    }

    fn vars(&self, g: fn(usize) -> ZeroModeGen) -> Vec<VarRef> {
        (1..=self.ring.dim()).map(|mu| self.ring.var(g(mu))).collect()
    }

    pub fn block_of(&self, m: &Monomial) -> Block {
        let xs = self.vars(ZeroModeGen::X);
        let ts = self.vars(ZeroModeGen::Theta);
        let ps = self.vars(ZeroModeGen::P);
        (
            xs.iter().map(|v| m.exponent(*v)).collect(),
            m.exponent(self.ring.var(ZeroModeGen::Gamma)),
            ts.iter().filter(|v| m.exponent(**v) > 0).count(),
            ps.iter().map(|v| m.exponent(*v) as usize).sum(),
        )
    }

    /// Every monomial of ℛ in the block.
    pub fn block_monomials(&self, b: &Block) -> Vec<Polynomial> {
        let (xe, g, i, j) = b;
        let xs = self.vars(ZeroModeGen::X);
        let ts = self.vars(ZeroModeGen::Theta);
        let ps = self.vars(ZeroModeGen::P);
        let mut prefix = power_product(&xs, &xe.iter().map(|e| *e as usize).collect::<Vec<_>>());
        if *g == 1 {
            prefix = &prefix * &self.ring.gamma();
        }
        let mut out = Vec::new();
        for sub in subsets(ts.len(), *i) {
            let th = sub.iter().fold(Polynomial::one(), |acc, k| &acc * &Polynomial::var(ts[*k]));
            for e in exponent_vectors(ps.len(), *j) {
                out.push(&(&prefix * &th) * &power_product(&ps, &e));
            }
        }
        out
    }

    fn ideal(&mut self, b: &Block) -> &(Echelon, usize) {
        if !self.blocks.contains_key(b) {
            let mut ech = Echelon::default();
            let (xe, g, i, j) = b.clone();
            let gens = [(self.ring.p_theta(), 1usize, 1usize), (self.ring.p_squared(), 0, 2)];
            for (f, di, dj) in gens {
                if i >= di && j >= dj {
                    for m in self.block_monomials(&(xe.clone(), g, i - di, j - dj)) {
                        ech.insert(&(&m * &f));
                    }
                }
            }
            let size = self.block_monomials(b).len();
            self.blocks.insert(b.clone(), (ech, size));
        }
        &self.blocks[b]
    }

    pub fn in_ideal(&mut self, p: &Polynomial) -> bool {
        let mut by_block: HashMap<Block, Polynomial> = HashMap::new();
        for (m, c) in p.terms() {
            by_block.entry(self.block_of(m)).or_insert_with(Polynomial::zero).add_term(m.clone(), c.clone());
        }
        by_block.iter().all(|(b, q)| self.ideal(b).0.contains(q))
    }

    /// dim of the block in ℛ, i.e. monomial count minus ideal rank.
    pub fn quotient_dim(&mut self, b: &Block) -> usize {
        let (ech, size) = self.ideal(b);
        size - ech.rank()
    }

    /// Ideal spanning set of a block.
    pub fn ideal_spanners(&self, b: &Block) -> Vec<Polynomial> {
        let (xe, g, i, j) = b.clone();
        let mut out = Vec::new();
        for (f, di, dj) in [(self.ring.p_theta(), 1usize, 1usize), (self.ring.p_squared(), 0, 2)] {
            if i >= di && j >= dj {
                out.extend(self.block_monomials(&(xe.clone(), g, i - di, j - dj)).iter().map(|m| m * &f));
            }
        }
        out
    }

    /// Checks `reduce` on every monomial of the block: u − reduce(u) lies in
    /// the ideal, the ideal reduces to zero, and the image has the quotient
    /// dimension. Returns the number of monomials checked.
    pub fn check_block(&mut self, b: &Block) -> Result<usize, String> {
        let monos = self.block_monomials(b);
        let mut image = Echelon::default();
        for u in &monos {
            let r = self.ring.reduce(u);
            if self.ring.reduce(&r) != r {
                return Err(format!("reduce is not idempotent on {}", self.ring.roster().render(u)));
            }
            if !self.in_ideal(&(u - &r)) {
                return Err(format!("u - reduce(u) outside the ideal for {}", self.ring.roster().render(u)));
            }
            image.insert(&r);
        }
        for g in self.ideal_spanners(b) {
            if !self.ring.reduce(&g).is_zero() {
                return Err(format!("ideal element {} does not reduce to 0", self.ring.roster().render(&g)));
            }
        }
        let want = self.quotient_dim(b);
        if image.rank() != want {
            return Err(format!("image rank {} but quotient dimension {want} in block {b:?}", image.rank()));
        }
        Ok(monos.len())
    }

    /// All blocks of total degree at most `n`.
    pub fn blocks_up_to(&self, n: usize) -> Vec<Block> {
        let d = self.ring.dim();
        let mut out = Vec::new();
        for g in 0..=1usize.min(n) {
            for i in 0..=d.min(n - g) {
                for j in 0..=(n - g - i) {
                    for xd in 0..=(n - g - i - j) {
                        for xe in exponent_vectors(d, xd) {
                            out.push((xe.iter().map(|e| *e as i32).collect(), g as i32, i, j));
                        }
                    }
                }
            }
        }
        out
    }
}
