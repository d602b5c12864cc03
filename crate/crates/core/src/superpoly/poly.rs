use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num::{BigInt, BigRational, One, Signed, Zero};

use super::monomial::{Monomial, Parity, SymbolId, VarRef};

/// Exact coefficient field.
pub type Coeff = BigRational;

pub fn rat(n: i64, d: i64) -> Coeff {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

/// A finite linear combination of canonical monomials with nonzero rational
/// coefficients. The representation is canonical, so derived equality is
/// value equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Coeff>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Self {
        Polynomial::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: Coeff) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    pub fn var(v: VarRef) -> Self {
        Polynomial::term(Monomial::power(v, 1).expect("degree one"), Coeff::one())
    }

    /// `coeff * f1 * f2 * ...` with the factors multiplied in the given order,
    /// so any reordering sign ends up in the coefficient.
    pub fn product_of(coeff: Coeff, factors: &[(VarRef, i32)]) -> Self {
        let mut acc = Polynomial::constant(coeff);
        for &(v, e) in factors {
            match Monomial::power(v, e) {
                Some(m) => acc = &acc * &Polynomial::term(m, Coeff::one()),
                None => return Polynomial::zero(),
            }
        }
        acc
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Coeff)>>(it: I) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Coeff)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Coeff {
        self.coefficient(&Monomial::one())
    }

    /// Idempotent; values are always stored canonically.
    pub fn canonical_form(&self) -> Polynomial {
        self.clone()
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Parity shared by all terms, `None` if mixed or zero.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(Monomial::parity);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(Monomial::has_negative_exponent)
    }

    /// Every variable occurring in some term.
    pub fn variables(&self) -> Vec<VarRef> {
        let mut vs: Vec<VarRef> =
            self.terms.keys().flat_map(|m| m.factors().iter().map(|(v, _)| *v)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn max_order_of(&self, sym: SymbolId) -> Option<u32> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter())
            .filter(|(v, _)| v.symbol == sym)
            .map(|(v, _)| v.order)
            .max()
    }

    /// Graded left partial derivative.
    pub fn partial_derivative(&self, v: VarRef) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            if let Some((e, neg, rest)) = m.partial(v) {
                let mut k = c * int(e as i64);
                if neg {
                    k = -k;
                }
                out.add_term(rest, k);
            }
        }
        out
    }

    /// The total derivative ∂, an even derivation with ∂(∂^ℓΦ) = ∂^(ℓ+1)Φ.
    pub fn total_derivative(&self) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            for idx in 0..m.factors().len() {
                let (pre, (v, e), post) = m.split(idx);
                let mut middle = Polynomial::product_of(int(e as i64), &[(v, e - 1)]);
                if middle.is_zero() {
                    continue;
                }
                middle = &middle * &Polynomial::var(v.derivative());
                let piece = &(&Polynomial::term(pre, c.clone()) * &middle)
                    * &Polynomial::term(post, Coeff::one());
                out += &piece;
            }
        }
        out
    }

    /// ∂ applied `n` times.
    pub fn total_derivative_n(&self, n: u32) -> Polynomial {
        let mut p = self.clone();
        for _ in 0..n {
            p = p.total_derivative();
        }
        p
    }

    /// Substitutes each variable through `f`, multiplying images in canonical
    /// factor order. Variables with negative exponents must map to invertible
    /// images; `f` returns `None` to signal "keep as is".
    pub fn substitute<F>(&self, mut f: F) -> Polynomial
    where
        F: FnMut(VarRef) -> Option<Polynomial>,
    {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut acc = Polynomial::constant(c.clone());
            for &(v, e) in m.factors() {
                let img = match f(v) {
                    Some(p) if e > 0 => p.pow(e as u32),
                    Some(_) => panic!("cannot substitute into a negative power"),
                    None => Polynomial::product_of(Coeff::one(), &[(v, e)]),
                };
                acc = &acc * &img;
                if acc.is_zero() {
                    break;
                }
            }
            out += &acc;
        }
        out
    }

    /// Keeps only terms satisfying `keep`.
    pub fn filter_terms<F: FnMut(&Monomial) -> bool>(&self, mut keep: F) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// True if `self = λ·other` for some λ; returns λ (zero if `self` is zero).
    pub fn proportionality(&self, other: &Polynomial) -> Option<Coeff> {
        if self.is_zero() {
            return Some(Coeff::zero());
        }
        let (m, c) = other.terms.iter().next()?;
        let lambda = self.coefficient(m) / c;
        (other.scale(&lambda) == *self).then_some(lambda)
    }

    pub fn max_abs_coefficient(&self) -> Coeff {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(Coeff::zero)
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                if let Some((m, neg)) = ma.mul(mb) {
                    let c = ca * cb;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl<'a> AddAssign<&'a Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &'a Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<'a> SubAssign<&'a Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &'a Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Coeff::one())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        let mut acc = Polynomial::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}
