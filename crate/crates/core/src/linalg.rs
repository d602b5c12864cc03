//! Exact sparse elimination over Q.
//!
//! Vectors are sorted `(index, value)` lists without zeros. [`Echelon`] keeps
//! rows with distinct leading indices, optionally remembering how each row was
//! combined from the inserted vectors so kernels and solutions come out of
//! the same elimination.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use num::{One, Zero};

use crate::superpoly::{Coeff, Monomial, Polynomial};

pub type SparseVec = Vec<(usize, Coeff)>;

/// `a - k * b`.
pub fn axpy(a: &SparseVec, k: &Coeff, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, -(k * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - k * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(a: &SparseVec, k: &Coeff) -> SparseVec {
    a.iter().map(|(i, v)| (*i, v * k)).collect()
}

#[derive(Clone, Debug)]
struct Row {
    values: SparseVec,
    combo: SparseVec,
}

/// Incremental row echelon basis.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, Row>,
    tracked: bool,
    inserted: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    /// Remembers combinations so [`Echelon::insert`] reports relations and
    /// [`Echelon::solve`] returns coefficients.
    pub fn tracked() -> Self {
        Echelon { tracked: true, ..Default::default() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    fn reduce(&self, mut v: SparseVec, mut combo: SparseVec, stop_at_free_lead: bool) -> (SparseVec, SparseVec) {
        let mut residual = Vec::new();
        while let Some((lead, c)) = v.first().cloned() {
            match self.rows.get(&lead) {
                Some(row) => {
                    v = axpy(&v, &c, &row.values);
                    if self.tracked {
                        combo = axpy(&combo, &c, &row.combo);
                    }
                }
                None => {
                    if stop_at_free_lead {
                        return (v, combo);
                    }
                    residual.push(v.remove(0));
                }
            }
        }
        (residual, combo)
    }

    /// Adds a vector. Returns `Some(relation)` if it was dependent: the
    /// relation expresses zero as a combination of inserted vectors and has
    /// coefficient one on the new vector (empty when untracked).
    pub fn insert(&mut self, v: SparseVec) -> Option<SparseVec> {
        let id = self.inserted;
        self.inserted += 1;
        let combo = if self.tracked { vec![(id, Coeff::one())] } else { Vec::new() };
        let (rest, combo) = self.reduce(v, combo, true);
        match rest.first() {
            None => Some(combo),
            Some((lead, c)) => {
                let inv = c.recip();
                let row = Row { values: scale(&rest, &inv), combo: if self.tracked { scale(&combo, &inv) } else { combo } };
                self.rows.insert(*lead, row);
                None
            }
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone(), Vec::new(), true).0.is_empty()
    }

    /// Coefficients `x` with `Σ x_i inserted_i = v`, if `v` is in the span.
    pub fn solve(&self, v: &SparseVec) -> Option<SparseVec> {
        let (rest, combo) = self.reduce(v.clone(), Vec::new(), true);
        rest.is_empty().then(|| scale(&combo, &-Coeff::one()))
    }

    /// Splits `v` as `residual + Σ x_i inserted_i` with the residual fully
    /// reduced against the pivots. `x` is empty when untracked.
    pub fn decompose(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let (rest, combo) = self.reduce(v.clone(), Vec::new(), false);
        (rest, scale(&combo, &-Coeff::one()))
    }

    /// Stored rows whose leading index is at least `min`.
    pub fn rows_led_from(&self, min: usize) -> Vec<SparseVec> {
        self.rows.range(min..).map(|(_, r)| r.values.clone()).collect()
    }

    /// Component of `v` outside the pivot columns after full reduction.
    pub fn residual(&self, v: &SparseVec) -> SparseVec {
        self.reduce(v.clone(), Vec::new(), false).0
    }
}

/// Rank of a family of vectors.
pub fn rank<I: IntoIterator<Item = SparseVec>>(vectors: I) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Basis of `{x : Σ x_i columns_i = 0}`.
pub fn kernel(columns: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::tracked();
    columns.iter().filter_map(|c| e.insert(c.clone())).collect()
}

/// Dense-index assignment for arbitrary keys.
#[derive(Clone, Debug)]
pub struct Indexer<K> {
    map: HashMap<K, usize>,
    keys: Vec<K>,
}

impl<K: Clone + Eq + Hash> Default for Indexer<K> {
    fn default() -> Self {
        Indexer { map: HashMap::new(), keys: Vec::new() }
    }
}

impl<K: Clone + Eq + Hash> Indexer<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn index(&mut self, k: &K) -> usize {
        if let Some(i) = self.map.get(k) {
            return *i;
        }
        let i = self.keys.len();
        self.map.insert(k.clone(), i);
        self.keys.push(k.clone());
        i
    }

    pub fn get(&self, k: &K) -> Option<usize> {
        self.map.get(k).copied()
    }

    pub fn key(&self, i: usize) -> &K {
        &self.keys[i]
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }
}

impl Indexer<Monomial> {
    pub fn encode(&mut self, p: &Polynomial) -> SparseVec {
        let mut v: SparseVec = p.terms().map(|(m, c)| (self.index(m), c.clone())).collect();
        v.sort_by_key(|(i, _)| *i);
        v
    }

    pub fn decode(&self, v: &SparseVec) -> Polynomial {
        Polynomial::from_terms(v.iter().map(|(i, c)| (self.keys[*i].clone(), c.clone())))
    }
}

/// Linear combination of polynomials with sparse coefficients.
pub fn combine(polys: &[Polynomial], coeffs: &SparseVec) -> Polynomial {
    let mut out = Polynomial::zero();
    for (i, c) in coeffs {
        out += &polys[*i].scale(c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superpoly::int;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> SparseVec {
        xs.iter().enumerate().filter(|(_, x)| **x != 0).map(|(i, x)| (i, int(*x))).collect()
    }

    fn dot_columns(cols: &[SparseVec], x: &SparseVec) -> SparseVec {
        let mut acc = Vec::new();
        for (i, c) in x {
            acc = axpy(&acc, &-c.clone(), &cols[*i]);
        }
        acc
    }

    #[test]
    fn small_rank_and_kernel() {
        let cols = vec![v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 1, 1]), v(&[1, 3, 4])];
        assert_eq!(rank(cols.clone()), 2);
        let k = kernel(&cols);
        assert_eq!(k.len(), 2);
        for x in &k {
            assert!(dot_columns(&cols, x).is_empty());
        }
    }

    #[test]
    fn solve_returns_coefficients() {
        let cols = vec![v(&[1, 0, 1]), v(&[0, 1, 1])];
        let mut e = Echelon::tracked();
        for c in &cols {
            e.insert(c.clone());
        }
        let x = e.solve(&v(&[2, 3, 5])).unwrap();
        assert_eq!(dot_columns(&cols, &x), v(&[2, 3, 5]));
        assert!(e.solve(&v(&[0, 0, 1])).is_none());
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in prop::collection::vec(prop::collection::vec(-2i64..3, 5), 1..7)) {
            let cols: Vec<SparseVec> = entries.iter().map(|c| v(c)).collect();
            let r = rank(cols.clone());
            let k = kernel(&cols);
            prop_assert_eq!(r + k.len(), cols.len());
            for x in &k {
                prop_assert!(dot_columns(&cols, x).is_empty());
            }
        }
    }
}
