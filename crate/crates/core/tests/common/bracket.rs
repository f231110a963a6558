//! Canonical brackets from the Darboux relations by mechanical Leibniz
//! expansion, and the bracket and lift properties checked against them.

use lbialg::graded::random::{available_degrees, random_homogeneous, random_poly};
use lbialg::graded::{int, Chart, ChartRef, Coeff, GPoly, GVar, Monomial, VarKind};
use lbialg::symplectic::{vector_field_commutator, SymplecticChart};
use rand::seq::SliceRandom;
use rand::Rng;

/// Number of chart families in `family`.
pub const FAMILIES: usize = 4;

pub fn sgn(odd: bool) -> Coeff {
    int(if odd { -1 } else { 1 })
}

/// {u, v} on coordinates of T*[n], from the defining relation only.
pub fn darboux(sc: &SymplecticChart, u: usize, v: usize) -> GPoly {
    let c = sc.chart();
    let m = sc.dim();
    if u >= m && v == u - m {
        return GPoly::one(c);
    }
    if u < m && v == u + m {
        let (dq, dp) = (c.var(u).degree, c.var(v).degree);
        return GPoly::constant(c, -sgn((dq * dp).rem_euclid(2) == 1));
    }
    GPoly::zero(c)
}

pub fn mono(c: &ChartRef, m: &Monomial) -> GPoly {
    GPoly::monomial(c, m.clone(), int(1))
}

pub fn mdeg(c: &ChartRef, m: &Monomial) -> i32 {
    m.degree(c)
}

/// {F, G} on monomials via {vF', G} = v{F',G} + (−1)^{|F'|(|G|−n)}{v,G}F' and
/// {v, wG'} = {v,w}G' + (−1)^{(|v|−n)|w|} w{v,G'}.
pub fn oracle_mono(sc: &SymplecticChart, f: &Monomial, g: &Monomial) -> GPoly {
    let c = sc.chart();
    let n = sc.shift();
    let (Some((v, f_rest)), Some((w, g_rest))) = (super::split_first(f), super::split_first(g)) else {
        return GPoly::zero(c);
    };
    if !f_rest.is_one() {
        let vp = GPoly::var(c, v);
        let s = sgn((mdeg(c, &f_rest) * (mdeg(c, g) - n)).rem_euclid(2) == 1);
        let one = oracle_mono(sc, &f_rest, g);
        let single = Monomial::from_exponents({
            let mut e = vec![0; c.len()];
            e[v] = 1;
            e
        });
        let two = oracle_mono(sc, &single, g);
        return &(&vp * &one) + &(&two * &mono(c, &f_rest)).scale(&s);
    }
    if g_rest.is_one() {
        return darboux(sc, v, w);
    }
    let wp = GPoly::var(c, w);
    let single = Monomial::from_exponents({
        let mut e = vec![0; c.len()];
        e[w] = 1;
        e
    });
    let s = sgn(((c.var(v).degree - n) * c.var(w).degree).rem_euclid(2) == 1);
    let head = &oracle_mono(sc, f, &single) * &mono(c, &g_rest);
    let tail = &wp * &oracle_mono(sc, f, &g_rest);
    &head + &tail.scale(&s)
}

pub fn oracle(sc: &SymplecticChart, f: &GPoly, g: &GPoly) -> GPoly {
    let mut out = GPoly::zero(sc.chart());
    for (a, ca) in f.terms() {
        for (b, cb) in g.terms() {
            out = &out + &oracle_mono(sc, a, b).scale(&(ca * cb));
        }
    }
    out
}

pub fn family(k: usize) -> SymplecticChart {
    let v = |name: &str, d: i32, kind| GVar::new(name, d, kind);
    let (vars, n) = match k {
        0 => (vec![v("x", 0, VarKind::Base), v("y", 0, VarKind::Base)], 1),
        1 => (
            vec![
                v("x", 0, VarKind::Base),
                v("xi", 1, VarKind::Fiber),
                v("eta", 1, VarKind::Fiber),
            ],
            2,
        ),
        2 => (vec![v("xi", 1, VarKind::Fiber), v("zeta", 2, VarKind::Fiber)], 2),
        _ => (
            vec![
                v("x", 0, VarKind::Base),
                v("th", 1, VarKind::Fiber),
                v("zeta", 2, VarKind::Fiber),
            ],
            3,
        ),
    };
    SymplecticChart::shifted_cotangent(&Chart::new(vars).unwrap(), n).unwrap()
}

pub fn homogeneous<R: Rng>(rng: &mut R, c: &ChartRef) -> (GPoly, i32) {
    let all: Vec<usize> = (0..c.len()).collect();
    let degrees = available_degrees(c, &all, 3);
    loop {
        let d = *degrees.choose(rng).unwrap();
        let p = random_homogeneous(rng, c, &all, d, 3, 3);
        if !p.is_zero() {
            return (p, d);
        }
    }
}

pub fn axioms(k: usize, seed: u64) {
    let sc = family(k);
    let c = sc.chart();
    let n = sc.shift();
    let ctx = sc.bracket_context();
    let mut r = super::rng(seed);
    let (f, df) = homogeneous(&mut r, c);
    let (g, dg) = homogeneous(&mut r, c);
    let (h, _) = homogeneous(&mut r, c);
    let fg = ctx.bracket(&f, &g);
    assert_eq!(fg, oracle(&sc, &f, &g), "oracle");
    // antisymmetry
    let s = sgn(((df - n) * (dg - n)).rem_euclid(2) == 1);
    assert_eq!(fg, ctx.bracket(&g, &f).scale(&-s), "antisymmetry");
    // Leibniz
    let lhs = ctx.bracket(&f, &(&g * &h));
    let s = sgn(((df - n) * dg).rem_euclid(2) == 1);
    let rhs = &(&fg * &h) + &(&g * &ctx.bracket(&f, &h)).scale(&s);
    assert_eq!(lhs, rhs, "Leibniz");
    // Jacobi
    assert!(ctx.jacobiator(&f, &g, &h).is_zero(), "Jacobi");
    // degree −n
    assert!(fg.is_zero() || fg.is_homogeneous_of(df + dg - n), "degree");
}

pub fn random_field<R: Rng>(rng: &mut R, base: &ChartRef, d: i32) -> Vec<GPoly> {
    let all: Vec<usize> = (0..base.len()).collect();
    (0..base.len())
        .map(|i| random_homogeneous(rng, base, &all, base.var(i).degree + d, 2, 2))
        .collect()
}

pub fn apply_field(q: &[GPoly], f: &GPoly) -> GPoly {
    q.iter()
        .enumerate()
        .fold(GPoly::zero(f.chart()), |acc, (i, qi)| &acc + &(qi * &f.partial_left(i)))
}

pub fn lift_base() -> ChartRef {
    Chart::new(vec![
        GVar::base("x", 0),
        GVar::base("y", 0),
        GVar::fiber("th", 1),
        GVar::fiber("zeta", 2),
    ])
    .unwrap()
}
/// {μ_Q1, μ_Q2} = μ_[Q1,Q2] for random fields on T*[n] of `lift_base`, with
/// the commutator itself checked against its action on a random function.
pub fn lift_case(seed: u64, n: i32) {
    let base = lift_base();
    let sc = SymplecticChart::shifted_cotangent(&base, n).unwrap();
    let mut r = super::rng(seed);
    let (d1, d2) = (r.gen_range(-1..=2), r.gen_range(-1..=2));
    let q1 = random_field(&mut r, &base, d1);
    let q2 = random_field(&mut r, &base, d2);
    let comm = vector_field_commutator(&q1, &q2, d1, d2);
    let all: Vec<usize> = (0..base.len()).collect();
    let f = random_poly(&mut r, &base, &all, 3, 3);
    let s = sgn((d1 * d2).rem_euclid(2) == 1);
    let direct = &apply_field(&q1, &apply_field(&q2, &f)) - &apply_field(&q2, &apply_field(&q1, &f)).scale(&s);
    assert_eq!(apply_field(&comm, &f), direct, "commutator");
    let m1 = sc.hamiltonian_lift(&q1).unwrap();
    let m2 = sc.hamiltonian_lift(&q2).unwrap();
    assert_eq!(
        sc.canonical_bracket(&m1, &m2).unwrap(),
        sc.hamiltonian_lift(&comm).unwrap(),
        "lift"
    );
}
