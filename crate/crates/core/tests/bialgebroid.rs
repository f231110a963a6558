//! Lie bialgebroids as Hamiltonians, the operator action of χ, Taylor
//! tables and morphism checks.

mod common;

use std::collections::{BTreeMap, HashMap};

use common::lie::nilpotent_on_random;
use lbialg::algebroid::multivector::{koszul_algebroid, tangent_algebroid};
use lbialg::algebroid::AlgebroidSpec;
use lbialg::bialgebroid::action::{base_of, chi_action, taylor, ChiOperator};
use lbialg::bialgebroid::linfty::{big_bracket, check_linfty};
use lbialg::bialgebroid::morphism::{linfty_morphism_check, semistrict_check, MorphismTable};
use lbialg::bialgebroid::{legendre_lemma_check, BialgebroidSpec};
use lbialg::constructions::triangular;
use lbialg::graded::random::random_poly;
use lbialg::graded::{int, parse_poly, GPoly, PolyMap};
use lbialg::symplectic::{check_poisson_map, legendre};
use lbialg::Error;

#[test]
fn legendre_lemma_on_the_corpus() {
    for (name, spec, _) in common::algebroid_corpus() {
        let lemma = legendre_lemma_check(&spec).unwrap();
        assert!(
            lemma.holds(),
            "{name}: {} vs {}",
            lemma.pulled_back,
            lemma.quadratic_form
        );
    }
}

#[test]
fn legendre_is_a_symplectomorphism() {
    for (name, spec, _) in common::algebroid_corpus() {
        let sc = spec.symplectic();
        let l = legendre(sc).unwrap();
        let bad = check_poisson_map(&l.pullback, sc.bracket_context(), l.dual.bracket_context()).unwrap();
        assert!(bad.is_empty(), "{name}: {bad:?}");
    }
}

fn poisson_spec() -> BialgebroidSpec {
    let (p, pi) = common::poisson_x1();
    BialgebroidSpec::new(koszul_algebroid(&p, &pi).unwrap(), tangent_algebroid(&p).unwrap()).unwrap()
}

#[test]
fn poisson_bialgebroid_hamiltonian() {
    let b = poisson_spec();
    let (_, pi) = common::poisson_x1();
    let sc = b.symplectic();
    let expected = common::lie::poisson_expected(&b, &pi);
    let r = b.check();
    assert_eq!(r.chi, expected);
    assert_eq!(
        r.chi.to_string(),
        "-x1*xi1*x2* + x1*xi2*x1* + xi1*xi2*xi1* + x1**xi1* + x2**xi2*"
    );
    assert!(r.chi_chi.is_zero());
    assert!(r.compat.is_empty());
    assert!(r.passed());
    assert!(check_linfty(sc, &r.chi).passed());
}

#[test]
fn perturbed_cobrackets_fail_both_routes() {
    let (p, pi) = common::poisson_x1();
    let k = koszul_algebroid(&p, &pi).unwrap();
    let one = common::c(&p, 1);
    let zero = common::c(&p, 0);
    let id = vec![vec![one.clone(), zero.clone()], vec![zero.clone(), one.clone()]];
    let perturbed = [
        // a bracket on TM that is not an algebroid
        AlgebroidSpec::new(
            &p,
            common::fibers(&[0, 0]),
            id.clone(),
            vec![((0, 1), vec![one.clone(), zero.clone()])],
        ),
        // an algebroid on TM whose differential does not respect the Koszul bracket
        AlgebroidSpec::new(
            &p,
            common::fibers(&[0, 0]),
            vec![vec![one.clone(), zero.clone()], vec![zero.clone(), common::c(&p, 2)]],
            vec![],
        ),
    ];
    for vdual in perturbed {
        let b = BialgebroidSpec::new(k.clone(), vdual.unwrap()).unwrap();
        let r = b.check();
        assert!(!r.hamiltonian_route() && !r.axiom_route(), "{}", r.chi_chi);
        assert_eq!(check_linfty(b.symplectic(), &r.chi).passed(), r.passed());
    }
}

#[test]
fn bialgebroid_routes_agree_on_tangent_pairs() {
    // (TM, T*M with π) for the corpus bivectors, and the zero-π pair
    let plane = common::base(&["x1", "x2"]);
    for pi in [
        common::bivector(&plane, &[]),
        common::bivector(&plane, &[((0, 1), common::c(&plane, 1))]),
        common::bivector(&plane, &[((0, 1), &common::x(&plane, 0) * &common::x(&plane, 1))]),
    ] {
        let b = BialgebroidSpec::new(
            koszul_algebroid(&plane, &pi).unwrap(),
            tangent_algebroid(&plane).unwrap(),
        )
        .unwrap();
        let r = b.check();
        assert!(r.routes_agree() && r.passed());
        assert_eq!(check_linfty(b.symplectic(), &r.chi).passed(), r.passed());
    }
}

#[test]
fn chi_action_examples() {
    let line = common::base(&["x"]);
    let t = tangent_algebroid(&line).unwrap();
    let v1 = t.v1_chart();
    let x = GPoly::var(v1, 0);
    let sc = t.symplectic();
    assert_eq!(
        chi_action(sc, t.hamiltonian(), &(&x * &x), 4).unwrap().to_string(),
        "2*x*xi"
    );
    assert!(chi_action(sc, t.hamiltonian(), &GPoly::one(v1), 4).unwrap().is_zero());

    // a purely quadratic-in-momenta χ over a point acts through k = 2 only
    let two = common::two_dim();
    let sc = two.symplectic();
    let chi = parse_poly("xi1**xi2**xi1", sc.chart()).unwrap();
    let g = parse_poly("xi1*xi2", two.v1_chart()).unwrap();
    let out = chi_action(sc, &chi, &g, 4).unwrap();
    assert_eq!(out.to_string(), "-xi1*hbar");
    let xi1 = parse_poly("xi1", two.v1_chart()).unwrap();
    assert!(chi_action(sc, &chi, &xi1, 4).unwrap().is_zero());
}

#[test]
fn chi_action_raises_degree_by_one() {
    let b = poisson_spec();
    let op = ChiOperator::new(b.symplectic(), &b.assemble_chi(), 4).unwrap();
    let v1 = b.symplectic().base().clone();
    let all: Vec<usize> = (0..v1.len()).collect();
    for seed in 0..40 {
        let g = random_poly(&mut common::rng(seed), &v1, &all, 3, 3);
        for d in g.degrees() {
            let part = op.lift(&g.homogeneous_part(d)).unwrap();
            let out = op.apply(&part);
            assert!(out.is_zero() || out.is_homogeneous_of(d + 1));
        }
    }
}

#[test]
fn nilpotency_for_algebroid_hamiltonians() {
    for (name, spec, ok) in common::algebroid_corpus() {
        if ok {
            assert_eq!(
                nilpotent_on_random(spec.symplectic(), spec.hamiltonian(), 50),
                None,
                "{name}"
            );
        }
    }
    let plane = common::base(&["x1", "x2"]);
    let pi = common::bivector(&plane, &[((0, 1), common::c(&plane, 1))]);
    let b = BialgebroidSpec::new(
        koszul_algebroid(&plane, &pi).unwrap(),
        tangent_algebroid(&plane).unwrap(),
    )
    .unwrap();
    assert_eq!(nilpotent_on_random(b.symplectic(), &b.assemble_chi(), 50), None);
}

#[test]
fn star_action_squares_to_hbar_for_linear_poisson() {
    let b = poisson_spec();
    let chi = b.assemble_chi();
    let op = ChiOperator::new(b.symplectic(), &chi, 4).unwrap();
    let x2 = op.lift(&GPoly::var(b.symplectic().base(), 1)).unwrap();
    let once = op.apply(&x2);
    assert_eq!(once.to_string(), "-x1*xi1");
    assert_eq!(op.apply(&once).to_string(), "-hbar");
}

#[test]
fn taylor_tables() {
    let two = common::two_dim();
    let v1 = two.v1_chart();
    let base = base_of(v1).unwrap();
    let g = parse_poly("xi1*xi2", v1).unwrap();
    let t = taylor(&g, &base, 4).unwrap();
    assert_eq!(t.len(), 1);
    assert_eq!(t[&vec![0, 1]], GPoly::one(&base));

    let line = common::base(&["x"]);
    let tl = tangent_algebroid(&line).unwrap();
    let lb = base_of(tl.v1_chart()).unwrap();
    let f = parse_poly("x^3 - 2*x", tl.v1_chart()).unwrap();
    let t = taylor(&f, &lb, 4).unwrap();
    assert_eq!(t.keys().collect::<Vec<_>>(), vec![&Vec::<usize>::new()]);
    let h = parse_poly("x*xi + 3", tl.v1_chart()).unwrap();
    let sum = taylor(&(&f + &h), &lb, 4).unwrap();
    let (tf, th) = (taylor(&f, &lb, 4).unwrap(), taylor(&h, &lb, 4).unwrap());
    let mut merged: BTreeMap<Vec<usize>, GPoly> = tf;
    for (w, c) in th {
        let e = merged.entry(w).or_insert_with(|| GPoly::zero(&lb));
        *e = &*e + &c;
    }
    merged.retain(|_, v| !v.is_zero());
    assert_eq!(sum, merged);
}

struct Square {
    v: AlgebroidSpec,
    w: AlgebroidSpec,
    f: PolyMap,
}

/// (x, ξ) ↦ (x², 2xξ) from the tangent algebroid on x to the one on y.
fn square() -> Square {
    let v = tangent_algebroid(&common::base(&["x"])).unwrap();
    let w = tangent_algebroid(&common::base(&["y"])).unwrap();
    let mut m = HashMap::new();
    m.insert("y".to_string(), parse_poly("x^2", v.v1_chart()).unwrap());
    m.insert("xi_y".to_string(), parse_poly("2*x*xi", v.v1_chart()).unwrap());
    let f = PolyMap::new(w.v1_chart(), v.v1_chart(), &m).unwrap();
    Square { v, w, f }
}

#[test]
fn semistrict_square_map() {
    let s = square();
    let r = semistrict_check(
        s.v.symplectic(),
        s.w.symplectic(),
        &s.f,
        s.v.hamiltonian(),
        s.w.hamiltonian(),
    )
    .unwrap();
    assert!(r.passed());
    assert_eq!(r.f_star.to_string(), "2*x*xi*y*");
    assert_eq!(r.phi_star.to_string(), "2*x*xi*y*");

    // perturbed target: an extra term y·ξ_y·y* is not matched on the source
    let bad = &s.w.hamiltonian().clone() + &parse_poly("y*xi_y*y*", s.w.symplectic().chart()).unwrap();
    let r = semistrict_check(s.v.symplectic(), s.w.symplectic(), &s.f, s.v.hamiltonian(), &bad).unwrap();
    assert!(!r.passed());
    assert_eq!(r.residual().to_string(), "2*x^3*xi*y*");

    let table = MorphismTable::from_algebra_map(&s.f, 3).unwrap();
    let full = linfty_morphism_check(
        s.v.symplectic(),
        s.w.symplectic(),
        &table,
        s.v.hamiltonian(),
        s.w.hamiltonian(),
        3,
    )
    .unwrap();
    assert!(full.is_empty());
    let full = linfty_morphism_check(s.v.symplectic(), s.w.symplectic(), &table, s.v.hamiltonian(), &bad, 3).unwrap();
    assert!(!full.is_empty());
}

#[test]
fn identity_and_composition() {
    for (name, spec, _) in common::algebroid_corpus() {
        let id = PolyMap::identity(spec.v1_chart());
        let sc = spec.symplectic();
        assert!(
            semistrict_check(sc, sc, &id, spec.hamiltonian(), spec.hamiltonian())
                .unwrap()
                .passed(),
            "{name}"
        );
        let table = MorphismTable::from_algebra_map(&id, 2).unwrap();
        let r = linfty_morphism_check(sc, sc, &table, spec.hamiltonian(), spec.hamiltonian(), 2).unwrap();
        assert!(r.is_empty(), "{name}");
    }
    // x ↦ x² followed by y ↦ y³ on tangent algebroids
    let s = square();
    let z = tangent_algebroid(&common::base(&["z"])).unwrap();
    let mut m = HashMap::new();
    m.insert("z".to_string(), parse_poly("y^3", s.w.v1_chart()).unwrap());
    m.insert("xi_z".to_string(), parse_poly("3*y^2*xi_y", s.w.v1_chart()).unwrap());
    let g = PolyMap::new(z.v1_chart(), s.w.v1_chart(), &m).unwrap();
    let wz = semistrict_check(s.w.symplectic(), z.symplectic(), &g, s.w.hamiltonian(), z.hamiltonian()).unwrap();
    assert!(wz.passed());
    let composite = g.then(&s.f).unwrap();
    let vz = semistrict_check(
        s.v.symplectic(),
        z.symplectic(),
        &composite,
        s.v.hamiltonian(),
        z.hamiltonian(),
    )
    .unwrap();
    assert!(vz.passed());
}

#[test]
fn point_case_morphisms() {
    let two = common::two_dim();
    let tri = triangular(&two, &two.wedge_basis(&[0, 1])).unwrap();
    let sc = two.symplectic();
    let v1 = two.v1_chart();
    let id = PolyMap::identity(v1);
    let table = MorphismTable::from_algebra_map(&id, 3).unwrap();
    assert!(linfty_morphism_check(sc, sc, &table, &tri.chi, &tri.chi, 3)
        .unwrap()
        .is_empty());
    assert!(!linfty_morphism_check(sc, sc, &table, &tri.chi, two.hamiltonian(), 3)
        .unwrap()
        .is_empty());
    // ξ¹ ↦ 2ξ¹ preserves [e1, e2] = e1 but rescales the cobracket of r = e1∧e2
    let mut m = HashMap::new();
    m.insert("xi1".to_string(), parse_poly("2*xi1", v1).unwrap());
    let scale = PolyMap::new(v1, v1, &m).unwrap();
    let strict = MorphismTable::from_algebra_map(&scale, 3).unwrap();
    assert!(
        linfty_morphism_check(sc, sc, &strict, two.hamiltonian(), two.hamiltonian(), 3)
            .unwrap()
            .is_empty()
    );
    assert!(semistrict_check(sc, sc, &scale, two.hamiltonian(), two.hamiltonian())
        .unwrap()
        .passed());
    assert!(!linfty_morphism_check(sc, sc, &strict, &tri.chi, &tri.chi, 3)
        .unwrap()
        .is_empty());
    assert!(!semistrict_check(sc, sc, &scale, &tri.chi, &tri.chi).unwrap().passed());
}

#[test]
fn incomplete_tables_are_rejected() {
    let s = square();
    let mut table = MorphismTable::from_algebra_map(&s.f, 1).unwrap();
    table.words.remove(&vec![0]);
    let err = linfty_morphism_check(
        s.v.symplectic(),
        s.w.symplectic(),
        &table,
        s.v.hamiltonian(),
        s.w.hamiltonian(),
        1,
    );
    assert!(matches!(err, Err(Error::TruncationIncomplete(w)) if w == "xi_y"));
}

#[test]
fn big_bracket_over_a_point() {
    let two = common::two_dim();
    let sc = two.symplectic();
    for a in 0..2 {
        for b in 0..2 {
            let v = big_bracket(sc, &sc.p(a), &sc.q(b)).unwrap();
            assert_eq!(v, GPoly::constant(sc.chart(), int(i64::from(a == b))));
        }
    }
    let mu = parse_poly("xi1*xi2*xi1*", sc.chart()).unwrap();
    assert!(big_bracket(sc, &mu, &mu).unwrap().is_zero());
    let tri = triangular(&two, &two.wedge_basis(&[0, 1])).unwrap();
    assert!(big_bracket(sc, &tri.chi, &tri.chi).unwrap().is_zero());
    let line = tangent_algebroid(&common::base(&["x"])).unwrap();
    assert!(big_bracket(line.symplectic(), line.hamiltonian(), line.hamiltonian()).is_err());
}
