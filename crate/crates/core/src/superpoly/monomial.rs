use std::fmt;

use smallvec::SmallVec;

/// Index of a generator in a [`Roster`](super::Roster).
pub type SymbolId = u32;

/// The Z/2 grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: u32) -> Self {
        if bit % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn flip(self) -> Self {
        Parity::from_bit(self.bit() + 1)
    }

    pub fn add(self, other: Parity) -> Parity {
        Parity::from_bit(self.bit() + other.bit())
    }

    /// (-1)^(self * other) as a boolean "is negative".
    pub fn sign_with(self, other: Parity) -> bool {
        self.is_odd() && other.is_odd()
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// `∂^order` applied to a generator. Ordered by `(symbol, order)`; the parity
/// bit is carried along so products can be signed without a roster.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarRef {
    pub symbol: SymbolId,
    pub order: u32,
    odd: bool,
}

impl VarRef {
    pub fn new(symbol: SymbolId, order: u32, parity: Parity) -> Self {
        VarRef { symbol, order, odd: parity.is_odd() }
    }

    pub fn parity(self) -> Parity {
        if self.odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(self) -> bool {
        self.odd
    }

    pub fn derivative(self) -> Self {
        VarRef { order: self.order + 1, ..self }
    }
}

/// A canonical supercommutative monomial: factors sorted by [`VarRef`], no
/// zero exponents, odd factors with exponent one.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[(VarRef, i32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    /// `v^exp`. Returns `None` when the power vanishes (odd `v`, `exp > 1`).
    pub fn power(v: VarRef, exp: i32) -> Option<Self> {
        if exp == 0 {
            return Some(Monomial::one());
        }
        if v.is_odd() && exp != 1 {
            return None;
        }
        let mut m = SmallVec::new();
        m.push((v, exp));
        Some(Monomial(m))
    }

    /// Builds from factors that are already sorted and valid.
    pub(crate) fn from_sorted(factors: SmallVec<[(VarRef, i32); 4]>) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        Monomial(factors)
    }

    pub fn factors(&self) -> &[(VarRef, i32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of absolute exponents.
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    /// Sum of `order * exponent` over positive-exponent factors.
    pub fn derivative_count(&self) -> u32 {
        self.0
            .iter()
            .filter(|(_, e)| *e > 0)
            .map(|(v, e)| v.order * (*e as u32))
            .sum()
    }

    pub fn parity(&self) -> Parity {
        Parity::from_bit(self.0.iter().filter(|(v, _)| v.is_odd()).count() as u32)
    }

    pub fn exponent(&self, v: VarRef) -> i32 {
        self.0.binary_search_by(|(w, _)| w.cmp(&v)).map(|i| self.0[i].1).unwrap_or(0)
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.0.iter().any(|(_, e)| *e < 0)
    }

    /// Product with sign. `None` means the product vanishes; the boolean is
    /// true when the reordering sign is negative.
    pub fn mul(&self, other: &Monomial) -> Option<(Monomial, bool)> {
        let a = &self.0;
        let b = &other.0;
        let mut out: SmallVec<[(VarRef, i32); 4]> = SmallVec::with_capacity(a.len() + b.len());
        let mut odd_left_in_a = a.iter().filter(|(v, _)| v.is_odd()).count();
        let mut negative = false;
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                if a[i].0.is_odd() {
                    odd_left_in_a -= 1;
                }
                out.push(a[i]);
                i += 1;
            } else if i >= a.len() || b[j].0 < a[i].0 {
                if b[j].0.is_odd() && odd_left_in_a % 2 == 1 {
                    negative = !negative;
                }
                out.push(b[j]);
                j += 1;
            } else {
                let v = a[i].0;
                if v.is_odd() {
                    return None;
                }
                let e = a[i].1 + b[j].1;
                if e != 0 {
                    out.push((v, e));
                }
                i += 1;
                j += 1;
            }
        }
        Some((Monomial(out), negative))
    }

    /// Splits into (factors before `idx`, factor `idx`, factors after `idx`).
    pub(crate) fn split(&self, idx: usize) -> (Monomial, (VarRef, i32), Monomial) {
        let pre = Monomial(self.0[..idx].iter().copied().collect());
        let post = Monomial(self.0[idx + 1..].iter().copied().collect());
        (pre, self.0[idx], post)
    }

    /// Left partial derivative with respect to `v`: (coefficient, sign negative, result).
    pub fn partial(&self, v: VarRef) -> Option<(i32, bool, Monomial)> {
        let idx = self.0.binary_search_by(|(w, _)| w.cmp(&v)).ok()?;
        let e = self.0[idx].1;
        let negative = v.is_odd()
            && self.0[..idx].iter().filter(|(w, _)| w.is_odd()).count() % 2 == 1;
        let mut rest = self.0.clone();
        if e == 1 {
            rest.remove(idx);
        } else {
            rest[idx].1 = e - 1;
        }
        Some((e, negative, Monomial(rest)))
    }

    /// Sum of exponents per symbol (over all derivative orders).
    pub fn content(&self) -> Vec<(SymbolId, i32)> {
        let mut out: Vec<(SymbolId, i32)> = Vec::new();
        for (v, e) in &self.0 {
            match out.last_mut() {
                Some((s, n)) if *s == v.symbol => *n += e,
                _ => out.push((v.symbol, *e)),
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn odd(s: u32) -> VarRef {
        VarRef::new(s, 0, Parity::Odd)
    }

    #[test]
    fn odd_square_vanishes() {
        let t = Monomial::power(odd(1), 1).unwrap();
        assert!(t.mul(&t).is_none());
        assert!(Monomial::power(odd(1), 2).is_none());
    }

    #[test]
    fn swapping_odd_factors_is_negative() {
        let a = Monomial::power(odd(1), 1).unwrap();
        let b = Monomial::power(odd(2), 1).unwrap();
        let (ab, s1) = a.mul(&b).unwrap();
        let (ba, s2) = b.mul(&a).unwrap();
        assert_eq!(ab, ba);
        assert!(!s1);
        assert!(s2);
    }

    #[test]
    fn inverse_cancels() {
        let g = VarRef::new(3, 0, Parity::Even);
        let a = Monomial::power(g, 1).unwrap();
        let b = Monomial::power(g, -1).unwrap();
        let (m, s) = a.mul(&b).unwrap();
        assert!(m.is_one());
        assert!(!s);
    }
}
