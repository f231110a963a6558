#![allow(dead_code)]

pub mod bracket;
pub mod lie;

use lbialg::algebroid::multivector::{koszul_algebroid, koszul_structure, tangent_algebroid};
use lbialg::algebroid::{AlgebroidSpec, Fiber};
use lbialg::graded::{int, Chart, ChartRef, GPoly, GVar, Monomial};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn base(names: &[&str]) -> ChartRef {
    Chart::new(names.iter().map(|n| GVar::base(*n, 0)).collect()).unwrap()
}

pub fn c(chart: &ChartRef, n: i64) -> GPoly {
    GPoly::constant(chart, int(n))
}

pub fn x(chart: &ChartRef, i: usize) -> GPoly {
    GPoly::var(chart, i)
}

pub fn fibers(degrees: &[i32]) -> Vec<Fiber> {
    degrees
        .iter()
        .enumerate()
        .map(|(a, &d)| Fiber::new(format!("e{}", a + 1), d))
        .collect()
}

/// Antisymmetric matrix from its upper triangle entries ((i, j), value).
pub fn bivector(chart: &ChartRef, upper: &[((usize, usize), GPoly)]) -> Vec<Vec<GPoly>> {
    let m = chart.len();
    let mut pi = vec![vec![GPoly::zero(chart); m]; m];
    for ((i, j), v) in upper {
        pi[*i][*j] = v.clone();
        pi[*j][*i] = -v;
    }
    pi
}

fn point_algebra(degrees: &[i32], brackets: Vec<((usize, usize), Vec<i64>)>) -> AlgebroidSpec {
    let pt = Chart::point();
    AlgebroidSpec::new(
        &pt,
        fibers(degrees),
        vec![Vec::new(); degrees.len()],
        brackets
            .into_iter()
            .map(|(ab, cs)| (ab, cs.into_iter().map(|k| c(&pt, k)).collect()))
            .collect(),
    )
    .unwrap()
}

pub fn two_dim() -> AlgebroidSpec {
    point_algebra(&[0, 0], vec![((0, 1), vec![1, 0])])
}

pub fn action_line(swapped: bool) -> AlgebroidSpec {
    let l = base(&["x"]);
    let (a, b) = (c(&l, 1), x(&l, 0));
    let anchor = if swapped {
        vec![vec![b], vec![a]]
    } else {
        vec![vec![a], vec![b]]
    };
    AlgebroidSpec::new(&l, fibers(&[0, 0]), anchor, vec![((0, 1), vec![c(&l, 1), c(&l, 0)])]).unwrap()
}

pub fn poisson_x1() -> (ChartRef, Vec<Vec<GPoly>>) {
    let p = base(&["x1", "x2"]);
    let pi = bivector(&p, &[((0, 1), x(&p, 0))]);
    (p, pi)
}

/// Named algebroids with the expected verdict.
pub fn algebroid_corpus() -> Vec<(&'static str, AlgebroidSpec, bool)> {
    let line = base(&["x"]);
    let plane = base(&["x1", "x2"]);
    let space = base(&["x1", "x2", "x3"]);
    let (p, pi_x1) = poisson_x1();
    let lie_poisson = bivector(
        &space,
        &[((0, 1), x(&space, 2)), ((1, 2), x(&space, 0)), ((2, 0), x(&space, 1))],
    );
    let not_poisson = bivector(&space, &[((0, 1), x(&space, 2)), ((0, 2), x(&space, 0))]);
    vec![
        ("two_dim", two_dim(), true),
        (
            "heisenberg",
            point_algebra(&[0, 0, 0], vec![((0, 1), vec![0, 0, 1])]),
            true,
        ),
        (
            "so3",
            point_algebra(
                &[0, 0, 0],
                vec![
                    ((0, 1), vec![0, 0, 1]),
                    ((1, 2), vec![1, 0, 0]),
                    ((0, 2), vec![0, -1, 0]),
                ],
            ),
            true,
        ),
        ("tangent_line", tangent_algebroid(&line).unwrap(), true),
        ("tangent_plane", tangent_algebroid(&plane).unwrap(), true),
        ("action_line", action_line(false), true),
        (
            "bundle_of_algebras",
            AlgebroidSpec::new(
                &line,
                fibers(&[0, 0]),
                vec![vec![c(&line, 0)], vec![c(&line, 0)]],
                vec![((0, 1), vec![x(&line, 0), c(&line, 0)])],
            )
            .unwrap(),
            true,
        ),
        ("koszul_x1", koszul_algebroid(&p, &pi_x1).unwrap(), true),
        ("lie_poisson_so3", koszul_algebroid(&space, &lie_poisson).unwrap(), true),
        (
            "polynomial_anchor",
            AlgebroidSpec::new(&line, fibers(&[0]), vec![vec![&x(&line, 0) * &x(&line, 0)]], vec![]).unwrap(),
            true,
        ),
        (
            "graded",
            point_algebra(
                &[0, 1, 2],
                vec![
                    ((0, 1), vec![0, 1, 0]),
                    ((0, 2), vec![0, 0, 2]),
                    ((1, 1), vec![0, 0, 1]),
                ],
            ),
            true,
        ),
        (
            "broken_jacobi",
            point_algebra(&[0, 0, 0], vec![((0, 1), vec![1, 0, 0]), ((0, 2), vec![0, 1, 0])]),
            false,
        ),
        ("swapped_action", action_line(true), false),
        (
            "graded_broken",
            point_algebra(
                &[0, 1, 2],
                vec![
                    ((0, 1), vec![0, 1, 0]),
                    ((0, 2), vec![0, 0, 3]),
                    ((1, 1), vec![0, 0, 1]),
                ],
            ),
            false,
        ),
        (
            "anchor_not_morphism",
            AlgebroidSpec::new(
                &line,
                fibers(&[0, 0]),
                vec![vec![c(&line, 1)], vec![c(&line, 0)]],
                vec![((0, 1), vec![c(&line, 1), c(&line, 0)])],
            )
            .unwrap(),
            false,
        ),
        (
            "koszul_not_poisson",
            koszul_structure(&space, &not_poisson).unwrap(),
            false,
        ),
        (
            "scaled_anchor_line",
            AlgebroidSpec::new(
                &line,
                fibers(&[0, 0]),
                vec![vec![c(&line, 1)], vec![&x(&line, 0) * &c(&line, 2)]],
                vec![((0, 1), vec![c(&line, 1), c(&line, 0)])],
            )
            .unwrap(),
            false,
        ),
    ]
}

/// Splits a monomial as (first coordinate, rest) with first·rest = monomial.
pub fn split_first(m: &Monomial) -> Option<(usize, Monomial)> {
    let i = m.exponents().iter().position(|&e| e > 0)?;
    let mut e = m.exponents().to_vec();
    e[i] -= 1;
    Some((i, Monomial::from_exponents(e)))
}
