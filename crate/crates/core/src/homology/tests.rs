use super::*;
use crate::models::{build_free_spinning, builtin_model, named_cocycle, transgress, CocycleKind, MetricSignature, ModelSpec};
use crate::superpoly::{int, rat, Monomial, Polynomial, Role};

fn sugra(d: usize) -> ModelSpec {
    builtin_model(&format!("builtin:sugra:d={d}")).unwrap()
}

fn alpha(m: &ModelSpec, k: i64) -> Polynomial {
    named_cocycle(m, CocycleKind::Alpha, k).unwrap()
}

fn beta(m: &ModelSpec, k: i64) -> Polynomial {
    named_cocycle(m, CocycleKind::Beta, k).unwrap()
}

#[test]
fn window_parse_and_display() {
    let w = Window::parse("6,2,0,2").unwrap();
    assert_eq!(w, Window::new(6, 2, 0, 2));
    assert_eq!(w.to_string(), "6,2,0,2");
    assert_eq!(w.enlarged(1), Window::new(7, 3, 1, 3));
    assert!(Window::parse("1,2,3").is_err());
    assert!(Window::parse("1,2,x,0").is_err());
}

#[test]
fn empty_window_basis() {
    let m = sugra(0);
    let sp = Space::new(&m, SpaceVariant::A).unwrap();
    let w = Window::new(0, 0, 0, 0);
    assert_eq!(sp.basis(0, &w).as_slice(), &[Monomial::one()]);
    for k in [-2, -1, 1, 2] {
        assert!(sp.basis(k, &w).is_empty(), "ghost {k}");
    }
}

#[test]
fn basis_matches_brute_force() {
    // all products of at most two generators with at most one derivative
    let m = sugra(0);
    let sp = Space::new(&m, SpaceVariant::A).unwrap();
    let gens: Vec<Polynomial> = m
        .roster
        .symbols()
        .iter()
        .flat_map(|s| (0..=1).map(move |l| (s.id, l)))
        .map(|(id, l)| m.roster.gen(id, l))
        .collect();
    let mut expected: Vec<Monomial> = Vec::new();
    let mut push = |p: Polynomial| {
        if let Some((mono, _)) = p.terms().next() {
            let ghost = m.roster.grading(&p).unwrap().unwrap().ghost;
            if ghost == -1 && mono.derivative_count() <= 1 && !expected.contains(mono) {
                expected.push(mono.clone());
            }
        }
    };
    for a in &gens {
        push(a.clone());
        for b in &gens {
            push(a * b);
        }
    }
    expected.sort();
    let basis = sp.basis(-1, &Window::new(2, 1, 0, 0));
    assert_eq!(basis.as_slice(), expected.as_slice());
    assert_eq!(basis.len(), 28);
}

#[test]
fn quotient_basis_has_no_positive_ghosts() {
    let m = sugra(1);
    let sp = Space::new(&m, SpaceVariant::AModI).unwrap();
    let basis = sp.basis(-1, &Window::new(3, 1, 1, 0));
    assert!(!basis.is_empty());
    for mono in basis.iter() {
        for (v, _) in mono.factors() {
            let s = m.roster.symbol(v.symbol);
            assert!(!(s.role == Role::Field && s.ghost > 0), "{}", m.roster.render_factor(*v, 1));
        }
    }
    assert!(sp.check_member(&m.f("c")).is_err());
}

#[test]
fn localization_needs_an_invertible_generator() {
    let free = build_free_spinning(1, &MetricSignature::euclidean(1)).unwrap();
    assert!(Space::new(&free, SpaceVariant::ALocalized).is_err());
    assert!(Space::new(&sugra(0), SpaceVariant::ALocalized).is_ok());
}

#[test]
fn gradings_make_s_homogeneous() {
    let m = sugra(1);
    let sp = Space::new(&m, SpaceVariant::A).unwrap();
    assert!(!sp.gradings().is_empty());
    for s in m.roster.symbols() {
        let x = m.roster.gen(s.id, 0);
        let want = crate::homology::complex::add(&sp.key(x.terms().next().unwrap().0), &sp.s_shift());
        for (mono, _) in sp.apply_s(&x).terms() {
            assert_eq!(sp.key(mono), want, "s {}", s.display_name());
        }
    }
}

#[test]
fn d0_ghost_minus_one() {
    let m = sugra(0);
    let sp = Space::new(&m, SpaceVariant::A).unwrap();
    let r = cohomology_window(&sp, -1, &Window::new(4, 1, 0, 0), 2).unwrap();
    assert_eq!(r.dim_h_upper, 2);
    assert!(r.stabilized);
    assert!(r.next_margin.dim_h_upper <= r.dim_h_upper);
    assert!(r.spanned_by(&sp, &[alpha(&m, 1), beta(&m, 1)]).unwrap());
    assert!(r.render(&m.roster).contains("stabilized: true"));
}

#[test]
fn coboundary_witness_recovered() {
    let m = sugra(0);
    let sp = Space::new(&m, SpaceVariant::A).unwrap();
    let a = sp.apply_s(&(&m.a("psi") * &m.a("e")));
    let r = is_coboundary(&sp, &a, 2).unwrap();
    let g = r.witness.expect("exact");
    assert_eq!(sp.apply_s(&g), a);
    assert!(is_coboundary(&sp, &m.f("e"), 1).is_err());
    let b = is_coboundary(&sp, &beta(&m, 2), 2).unwrap();
    assert!(b.witness.is_none() && b.stable_not_found);
}

#[test]
fn functional_classes() {
    let m = sugra(0);
    let sp = Space::new(&m, SpaceVariant::F).unwrap();
    let t = functional_class_test(&sp, &(&m.a("psi") * &m.f("gamma")).total_derivative(), 2).unwrap();
    assert!(t.closed && t.exact.is_some());
    for a in [transgress(&m, &alpha(&m, -1)).unwrap(), transgress(&m, &alpha(&m, 0)).unwrap()] {
        let t = functional_class_test(&sp, &a, 2).unwrap();
        assert!(t.closed, "{}", m.render(&a));
        assert!(t.exact.is_none() && t.stable_not_found, "{}", m.render(&a));
    }
}

#[test]
fn bracket_examples() {
    let m = sugra(0);
    let sp = Space::new(&m, SpaceVariant::F).unwrap();
    let at1 = transgress(&m, &alpha(&m, 1)).unwrap();
    assert!(bracket_identity_check(&sp, (&at1, &alpha(&m, 2)), &alpha(&m, 3), 2).unwrap().passed);
    assert!(bracket_identity_check(&sp, (&at1, &beta(&m, 1)), &beta(&m, 2).scale(&int(4)), 2).unwrap().passed);
    assert!(bracket_identity_check(&sp, (&beta(&m, 1), &beta(&m, 2)), &Polynomial::zero(), 2).unwrap().passed);
    assert!(!bracket_identity_check(&sp, (&at1, &alpha(&m, 2)), &alpha(&m, 3).scale(&int(2)), 2).unwrap().passed);
    assert_eq!(bracket_scalar(&sp, (&at1, &alpha(&m, 2)), &alpha(&m, 3), 2).unwrap(), Some(int(1)));
    assert!(bracket_identity_check(&sp, (&m.f("e"), &alpha(&m, 1)), &Polynomial::zero(), 1).is_err());
}

#[test]
fn derivative_acts_trivially() {
    let m = sugra(0);
    let sp = Space::new(&m, SpaceVariant::A).unwrap();
    let r = cohomology_window(&sp, -1, &Window::new(4, 1, 0, 0), 2).unwrap();
    for z in &r.representatives {
        let dz = z.total_derivative();
        let g = transgress(&m, z).unwrap();
        assert_eq!(sp.apply_s(&g), dz);
        assert!(is_coboundary(&sp, &dz, 2).unwrap().witness.is_some());
    }
}

#[test]
fn filtration_table() {
    for d in 0..3 {
        let m = sugra(d);
        for s in [rat(1, 3), rat(1, 2), int(1), int(-1)] {
            assert!(filtration_check(&m, &s).unwrap().passed, "d={d} σ={s}");
        }
        assert_eq!(min_generator_degree(&m, &rat(1, 3)).unwrap(), int(0));
        assert!(min_generator_degree(&m, &int(-1)).unwrap() < int(0));
    }
    assert!(filtration_check(&build_free_spinning(1, &MetricSignature::euclidean(1)).unwrap(), &int(1)).is_err());
}

#[test]
fn filtration_zero_part_is_koszul() {
    // terms of s that do not raise the filtration degree
    let m = sugra(1);
    let degs = generator_degrees(&m).unwrap();
    let sigma = rat(1, 2);
    let deg = |p: &Polynomial| -> crate::superpoly::Coeff {
        let (mono, _) = p.terms().next().unwrap();
        mono.factors().iter().map(|(v, e)| degs[v.symbol as usize].at(&sigma) * int(*e as i64)).sum()
    };
    let s0 = |id: crate::superpoly::SymbolId| -> Polynomial {
        let x = m.roster.gen(id, 0);
        let base = deg(&x);
        let chi = m.s().characteristic(id);
        chi.filter_terms(|mono| deg(&Polynomial::term(mono.clone(), int(1))) == base)
    };
    let r = &m.roster;
    let f = |n: &str| r.field(n).unwrap();
    let a = |n: &str| r.antifield(n).unwrap();
    assert_eq!(s0(a("c")), m.ad("e", 1));
    assert_eq!(s0(a("gamma")), m.ad("psi", 1));
    assert_eq!(s0(a("x1")), -m.fd("p1", 1));
    assert_eq!(s0(a("theta1")), m.fd("theta1", 1));
    assert_eq!(s0(a("p1")), m.fd("x1", 1));
    assert_eq!(s0(f("e")), -m.fd("c", 1));
    assert_eq!(s0(f("psi")), m.fd("gamma", 1));
    for n in ["x1", "theta1", "p1", "c", "gamma"] {
        assert!(s0(f(n)).is_zero(), "{n}");
    }
    for n in ["e", "psi"] {
        assert!(s0(a(n)).is_zero(), "anti({n})");
    }
}

#[test]
fn cone_of_the_derivative() {
    let m = sugra(0);
    for k in [-1, -2] {
        let r = v_complex_check(&m, k, &Window::new(3, 1, 0, 0), 2).unwrap();
        assert!(r.passed, "{}", r.render(&m.roster));
    }
    let sp = Space::new(&m, SpaceVariant::A).unwrap();
    let x = VElement { f: m.a("e"), g: &m.a("psi") * &m.f("gamma") };
    assert!(v_differential(&sp, &v_differential(&sp, &x)).is_zero());
    assert!(!unit_eps_exact(&sp, &Window::new(4, 2, 0, 0)));
    let loc = Space::new(&m, SpaceVariant::ALocalized).unwrap();
    assert!(unit_eps_exact(&loc, &Window::new(5, 3, 0, 3)));
}

#[test]
fn fk_probe_free_and_sugra() {
    let free = build_free_spinning(1, &MetricSignature::euclidean(1)).unwrap();
    let r = fk_probe(&free, &[2, 3], &Window::new(3, 1, 1, 0), 2).unwrap();
    assert!(r.axiom_holds());
    let m = sugra(0);
    let r = fk_probe(&m, &[2], &Window::new(4, 1, 0, 0), 2).unwrap();
    assert_eq!(r.functional_nonvanishing(), vec![2]);
    assert!(fk_probe(&m, &[0], &Window::new(1, 0, 0, 0), 1).is_err());
}
