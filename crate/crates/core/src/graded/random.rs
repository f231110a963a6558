//! Seeded random polynomials for property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use super::chart::ChartRef;
use super::poly::{int, rat, GPoly, Monomial};

/// All monomials of total exponent at most `max_len` using only the
/// coordinates in `allowed` (odd coordinates at most once).
pub fn monomials_up_to(chart: &ChartRef, allowed: &[usize], max_len: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u16; chart.len()];
    fn rec(chart: &ChartRef, allowed: &[usize], k: usize, left: u32, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if k == allowed.len() {
            out.push(Monomial::from_exponents(exps.clone()));
            return;
        }
        let idx = allowed[k];
        let cap = if chart.is_odd(idx) { left.min(1) } else { left };
        for e in 0..=cap {
            exps[idx] = e as u16;
            rec(chart, allowed, k + 1, left - e, exps, out);
        }
        exps[idx] = 0;
    }
    rec(chart, allowed, 0, max_len, &mut exps, &mut out);
    out
}

fn random_coeff<R: Rng>(rng: &mut R) -> num_rational::BigRational {
    let n = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
    if rng.gen_bool(0.25) {
        rat(n, rng.gen_range(2..=3))
    } else {
        int(n)
    }
}

/// A random homogeneous polynomial of degree `degree` with at most
/// `max_terms` terms, drawn from monomials of length ≤ `max_len` in the
/// coordinates `allowed`. May be zero when no monomial has that degree.
pub fn random_homogeneous<R: Rng>(
    rng: &mut R,
    chart: &ChartRef,
    allowed: &[usize],
    degree: i32,
    max_len: u32,
    max_terms: usize,
) -> GPoly {
    let pool: Vec<Monomial> = monomials_up_to(chart, allowed, max_len)
        .into_iter()
        .filter(|m| m.degree(chart) == degree)
        .collect();
    let mut out = GPoly::zero(chart);
    if pool.is_empty() {
        return out;
    }
    let n = rng.gen_range(1..=max_terms.max(1));
    for m in pool.choose_multiple(rng, n) {
        out.add_term(m.clone(), random_coeff(rng));
    }
    out
}

/// A random polynomial (any degree) from the same kind of pool.
pub fn random_poly<R: Rng>(rng: &mut R, chart: &ChartRef, allowed: &[usize], max_len: u32, max_terms: usize) -> GPoly {
    let pool = monomials_up_to(chart, allowed, max_len);
    let mut out = GPoly::zero(chart);
    let n = rng.gen_range(1..=max_terms.max(1));
    for m in pool.choose_multiple(rng, n) {
        out.add_term(m.clone(), random_coeff(rng));
    }
    out
}

/// Degrees realised by at least one monomial in the pool.
pub fn available_degrees(chart: &ChartRef, allowed: &[usize], max_len: u32) -> Vec<i32> {
    let mut d: Vec<i32> = monomials_up_to(chart, allowed, max_len)
        .iter()
        .map(|m| m.degree(chart))
        .collect();
    d.sort_unstable();
    d.dedup();
    d
}
