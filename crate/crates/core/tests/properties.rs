mod common;

use proptest::prelude::*;

use bv_core::calculus::{antibracket_density, functional_antibracket, is_total_derivative, variational_derivative, FunctionalClass};
use bv_core::models::{builtin_model, ModelSpec};
use bv_core::superpoly::{int, rat, Coeff, Polynomial};
use bv_core::zeromode::ZeroModeRing;
use bv_core::models::MetricSignature;

use common::QuotientOracle;

const CASES: u32 = 256;

fn sugra1() -> ModelSpec {
    builtin_model("builtin:sugra:d=1").unwrap()
}

/// (symbol, derivative order, exponent)
type Factor = (u32, u32, i32);

fn arb_terms(max_order: u32) -> impl Strategy<Value = Vec<(i64, i64, Vec<Factor>)>> {
    let n = sugra1().roster.len() as u32;
    let factor = (0..n, 0..=max_order, 1i32..3);
    prop::collection::vec((-4i64..5, 1i64..4, prop::collection::vec(factor, 0..4)), 1..4)
}

fn build(m: &ModelSpec, terms: &[(i64, i64, Vec<Factor>)], gamma_inverse: bool) -> Polynomial {
    let gamma = m.id("gamma").unwrap();
    let mut p = Polynomial::zero();
    for (num, den, fs) in terms {
        let mut vars: Vec<_> = fs.iter().map(|&(s, l, e)| (m.roster.var(s, l), e)).collect();
        if gamma_inverse && *num % 2 == 0 {
            vars.push((m.roster.var(gamma, 0), -1));
        }
        p += &Polynomial::product_of(rat(*num, *den), &vars);
    }
    p
}

/// Keeps the terms whose parity matches the first term.
fn homogeneous(p: Polynomial) -> Polynomial {
    let Some(bit) = p.terms().next().map(|(m, _)| m.parity().bit()) else { return p };
    p.filter_terms(|m| m.parity().bit() == bit)
}

fn arb_poly(localized: bool) -> impl Strategy<Value = Polynomial> {
    arb_terms(2).prop_map(move |t| build(&sugra1(), &t, localized))
}

fn arb_homogeneous(max_order: u32) -> impl Strategy<Value = Polynomial> {
    arb_terms(max_order).prop_map(|t| homogeneous(build(&sugra1(), &t, false)))
}

fn bit(p: &Polynomial) -> u32 {
    p.parity().map_or(0, |q| q.bit())
}

fn sign(e: u32) -> Coeff {
    if e % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn product_is_associative(a in arb_poly(true), b in arb_poly(true), c in arb_poly(true)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn product_is_supercommutative(a in arb_homogeneous(2), b in arb_homogeneous(2)) {
        prop_assert_eq!(&a * &b, (&b * &a).scale(&sign(bit(&a) * bit(&b))));
    }

    #[test]
    fn total_derivative_is_a_derivation(a in arb_poly(true), b in arb_poly(true)) {
        let lhs = (&a * &b).total_derivative();
        let rhs = &(&a.total_derivative() * &b) + &(&a * &b.total_derivative());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn s_is_an_odd_derivation(a in arb_homogeneous(2), b in arb_homogeneous(2)) {
        let m = sugra1();
        let s = m.s();
        let lhs = s.apply(&(&a * &b));
        let rhs = &(&s.apply(&a) * &b) + &(&a * &s.apply(&b)).scale(&sign(bit(&a)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn s_commutes_with_total_derivative(a in arb_poly(true)) {
        let m = sugra1();
        prop_assert_eq!(m.s().apply(&a.total_derivative()), m.s().apply(&a).total_derivative());
    }

    #[test]
    fn s_squares_to_zero(a in arb_poly(true)) {
        let m = sugra1();
        prop_assert!(m.s().apply(&m.s().apply(&a)).is_zero());
    }

    #[test]
    fn euler_operator_kills_total_derivatives(a in arb_poly(false)) {
        let m = sugra1();
        let da = a.total_derivative();
        for sym in m.roster.symbols() {
            prop_assert!(variational_derivative(&m.roster, &da, sym.id).unwrap().is_zero(), "{}", sym.display_name());
        }
        prop_assert!(is_total_derivative(&m.roster, &da).unwrap());
    }

    #[test]
    fn antibracket_is_graded_skew(f in arb_homogeneous(1), g in arb_homogeneous(1)) {
        let m = sugra1();
        let r = &m.roster;
        let fg = antibracket_density(r, &f, &g).unwrap();
        let gf = antibracket_density(r, &g, &f).unwrap();
        let e = (bit(&f) + 1) * (bit(&g) + 1);
        let twisted = FunctionalClass::new(gf.scale(&-sign(e)));
        prop_assert!(FunctionalClass::new(fg).same_class(&twisted, r));
    }

    #[test]
    fn antibracket_jacobi(f in arb_homogeneous(1), g in arb_homogeneous(1), h in arb_homogeneous(1)) {
        let m = sugra1();
        let r = &m.roster;
        let cls = |p: &Polynomial| FunctionalClass::new(p.clone());
        let br = |a: &FunctionalClass, b: &FunctionalClass| functional_antibracket(r, a, b).unwrap();
        let (f, g, h) = (cls(&f), cls(&g), cls(&h));
        let pf = bit(&f.representative);
        let pg = bit(&g.representative);
        let lhs = br(&f, &br(&g, &h));
        let first = br(&br(&f, &g), &h);
        let second = br(&g, &br(&f, &h));
        let rhs = &first.representative + &second.representative.scale(&sign((pf + 1) * (pg + 1)));
        prop_assert!(lhs.same_class(&cls(&rhs), r));
    }
}

fn ring_for(d: usize) -> ZeroModeRing {
    let sig = ["+", "+-", "+-+"][d - 1];
    ZeroModeRing::new(&MetricSignature::parse(sig).unwrap())
}

/// Random elements of ℛ of total degree at most 6.
fn arb_ring_element() -> impl Strategy<Value = (usize, Vec<(i64, Vec<(usize, u32)>)>)> {
    (1usize..=3).prop_flat_map(|d| {
        let n = 3 * d + 1;
        let term = (-3i64..4, prop::collection::vec((0..n, 1u32..3), 0..4));
        (Just(d), prop::collection::vec(term, 1..4))
    })
}

fn ring_poly(r: &ZeroModeRing, terms: &[(i64, Vec<(usize, u32)>)]) -> Polynomial {
    let mut p = Polynomial::zero();
    for (c, fs) in terms {
        let mut t = Polynomial::constant(int(*c));
        let mut deg = 0;
        for &(g, e) in fs {
            if deg + e > 6 {
                break;
            }
            deg += e;
            let v = Polynomial::var(r.var(r.classify(g as u32)));
            t = &t * &v.pow(e);
        }
        p += &t;
    }
    p
}

/// Short elements using generators present for every d ≥ 1.
fn arb_small() -> impl Strategy<Value = Vec<(i64, Vec<(usize, u32)>)>> {
    prop::collection::vec((-3i64..4, prop::collection::vec((0usize..4, 1u32..3), 0..3)), 1..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn reduce_matches_quotient_oracle((d, terms) in arb_ring_element()) {
        let r = ring_for(d);
        let u = ring_poly(&r, &terms);
        let nf = r.reduce(&u);
        let mut oracle = QuotientOracle::new(&r);
        prop_assert!(oracle.in_ideal(&(&u - &nf)));
        prop_assert_eq!(r.reduce(&nf), nf);
    }

    #[test]
    fn reduce_is_multiplicative((d, a) in arb_ring_element(), b in arb_small()) {
        let r = ring_for(d);
        let a = ring_poly(&r, &a);
        let b = ring_poly(&r, &b);
        prop_assert_eq!(r.multiply(&r.reduce(&a), &r.reduce(&b)), r.reduce(&(&a * &b)));
    }

    #[test]
    fn zero_bracket_is_a_graded_derivation((d, a) in arb_ring_element(), b in arb_small(), c in arb_small()) {
        let r = ring_for(d);
        let u = homogeneous(ring_poly(&r, &a));
        let v = homogeneous(ring_poly(&r, &b));
        let w = homogeneous(ring_poly(&r, &c));
        let lhs = r.bracket_free(&u, &(&v * &w)).unwrap();
        let first = &r.bracket_free(&u, &v).unwrap() * &w;
        let second = (&v * &r.bracket_free(&u, &w).unwrap()).scale(&sign(bit(&u) * bit(&v)));
        prop_assert_eq!(lhs, &first + &second);
    }
}

#[test]
fn zero_bracket_canonical_relations() {
    for d in 1..=3 {
        let r = ring_for(d);
        let eta = r.metric().clone();
        assert_eq!(r.zero_bracket(&r.x(1), &r.p(1)).unwrap(), Polynomial::one());
        assert_eq!(r.zero_bracket(&r.p(1), &r.x(1)).unwrap(), -Polynomial::one());
        for mu in 1..=d {
            for nu in 1..=d {
                let want = if mu == nu { Polynomial::constant(int(-eta.eta(mu))) } else { Polynomial::zero() };
                assert_eq!(r.zero_bracket(&r.theta(mu), &r.theta(nu)).unwrap(), want, "d={d} {mu}{nu}");
                if mu != nu {
                    assert!(r.zero_bracket(&r.x(mu), &r.p(nu)).unwrap().is_zero());
                }
            }
        }
    }
}
