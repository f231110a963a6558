use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::chart::{same_chart, Chart, ChartRef};
use crate::error::{Error, Result};

pub type Coeff = BigRational;

pub fn rat(n: i64, d: i64) -> Coeff {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

/// Exponent vector in chart order. Odd coordinates carry exponent 0 or 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Box<[u16]>);

impl Monomial {
    pub fn one(len: usize) -> Self {
        Monomial(vec![0; len].into_boxed_slice())
    }

    pub fn from_exponents(exps: Vec<u16>) -> Self {
        Monomial(exps.into_boxed_slice())
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn exp(&self, idx: usize) -> u16 {
        self.0[idx]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self, chart: &Chart) -> i32 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &e)| e as i32 * chart.var(i).degree)
            .sum()
    }

    pub fn weight(&self, chart: &Chart) -> u32 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &e)| e as u32 * chart.weight(i))
            .sum()
    }

    /// Total exponent over the given coordinate indices.
    pub fn count_in(&self, indices: &[usize]) -> u32 {
        indices.iter().map(|&i| self.0[i] as u32).sum()
    }

    fn odd_parity(&self, chart: &Chart, range: impl Iterator<Item = usize>) -> bool {
        range.filter(|&j| chart.is_odd(j) && self.0[j] % 2 == 1).count() % 2 == 1
    }
}

/// Graded-commutative product of two normal-ordered monomials.
/// Returns `None` when an odd coordinate would be squared, otherwise the
/// Koszul sign (true = negative) and the product.
pub fn mul_monomials(chart: &Chart, a: &Monomial, b: &Monomial) -> Option<(bool, Monomial)> {
    let n = chart.len();
    let mut out = vec![0u16; n];
    let mut neg = false;
    // odd factors of `a` sitting to the right of the current index
    let mut a_odd_after = 0usize;
    for j in (0..n).rev() {
        let (ea, eb) = (a.0[j], b.0[j]);
        if chart.is_odd(j) {
            if ea + eb > 1 {
                return None;
            }
            if eb == 1 && a_odd_after % 2 == 1 {
                neg = !neg;
            }
            if ea == 1 {
                a_odd_after += 1;
            }
        }
        out[j] = ea + eb;
    }
    Some((neg, Monomial(out.into_boxed_slice())))
}

/// Normal-orders a word of coordinate powers.
/// Returns the Koszul sign (+1/-1) and the sorted monomial, or
/// `OddSquare` when an odd coordinate repeats.
pub fn mono_normalize(chart: &Chart, word: &[(usize, u16)]) -> Result<(i8, Monomial)> {
    let mut sign = 1i8;
    let mut acc = Monomial::one(chart.len());
    for &(idx, e) in word {
        if e == 0 {
            continue;
        }
        if chart.is_odd(idx) && e > 1 {
            return Err(Error::OddSquare(chart.var(idx).name.clone()));
        }
        let mut m = vec![0u16; chart.len()];
        m[idx] = e;
        match mul_monomials(chart, &acc, &Monomial(m.into_boxed_slice())) {
            Some((neg, p)) => {
                if neg {
                    sign = -sign;
                }
                acc = p;
            }
            None => return Err(Error::OddSquare(chart.var(idx).name.clone())),
        }
    }
    Ok((sign, acc))
}

/// Exact graded-commutative polynomial on a chart.
#[derive(Clone)]
pub struct GPoly {
    chart: ChartRef,
    terms: BTreeMap<Monomial, Coeff>,
}

impl GPoly {
    pub fn zero(chart: &ChartRef) -> Self {
        GPoly {
            chart: chart.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(chart: &ChartRef, c: Coeff) -> Self {
        let mut p = Self::zero(chart);
        p.add_term(Monomial::one(chart.len()), c);
        p
    }

    pub fn one(chart: &ChartRef) -> Self {
        Self::constant(chart, Coeff::one())
    }

    pub fn var(chart: &ChartRef, idx: usize) -> Self {
        let mut e = vec![0u16; chart.len()];
        e[idx] = 1;
        let mut p = Self::zero(chart);
        p.add_term(Monomial::from_exponents(e), Coeff::one());
        p
    }

    pub fn var_named(chart: &ChartRef, name: &str) -> Result<Self> {
        Ok(Self::var(chart, chart.require(name)?))
    }

    pub fn monomial(chart: &ChartRef, m: Monomial, c: Coeff) -> Self {
        let mut p = Self::zero(chart);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(chart: &ChartRef, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let mut p = Self::zero(chart);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> Coeff {
        self.coeff(&Monomial::one(self.chart.len()))
    }

    fn admits(&self, m: &Monomial) -> bool {
        match self.chart.trunc() {
            Some(cap) => m.weight(&self.chart) <= cap,
            None => true,
        }
    }

    /// Adds `c * m`, keeping the no-zero-coefficient invariant.
    pub fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() || !self.admits(&m) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(&self.chart);
        }
        GPoly {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    fn check_chart(&self, other: &GPoly) {
        assert!(
            same_chart(&self.chart, &other.chart),
            "chart mismatch: {:?} vs {:?}",
            self.chart,
            other.chart
        );
    }

    pub fn try_mul(&self, other: &GPoly) -> Result<GPoly> {
        if !same_chart(&self.chart, &other.chart) {
            return Err(Error::ChartMismatch);
        }
        Ok(self * other)
    }

    pub fn pow(&self, e: u32) -> GPoly {
        let mut acc = GPoly::one(&self.chart);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Degree of a homogeneous polynomial; `None` for the zero polynomial or
    /// a mixed-degree one.
    pub fn degree(&self) -> Option<i32> {
        let mut degs = self.terms.keys().map(|m| m.degree(&self.chart));
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous_of(&self, d: i32) -> bool {
        self.terms.keys().all(|m| m.degree(&self.chart) == d)
    }

    /// Sorted set of degrees present.
    pub fn degrees(&self) -> Vec<i32> {
        let mut v: Vec<i32> = self.terms.keys().map(|m| m.degree(&self.chart)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Left derivative: the coordinate is moved to the front before it is removed.
    pub fn partial_left(&self, idx: usize) -> GPoly {
        self.partial(idx, true)
    }

    /// Right derivative: the coordinate is moved to the back before it is removed.
    pub fn partial_right(&self, idx: usize) -> GPoly {
        self.partial(idx, false)
    }

    fn partial(&self, idx: usize, left: bool) -> GPoly {
        let chart = &self.chart;
        let mut out = GPoly::zero(chart);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let neg = chart.is_odd(idx)
                && if left {
                    m.odd_parity(chart, 0..idx)
                } else {
                    m.odd_parity(chart, idx + 1..chart.len())
                };
            let mut exps = m.0.clone();
            exps[idx] -= 1;
            let mut v = c * int(e as i64);
            if neg {
                v = -v;
            }
            out.add_term(Monomial(exps), v);
        }
        out
    }

    /// Keeps only the terms satisfying `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Monomial) -> bool) -> GPoly {
        GPoly {
            chart: self.chart.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Component of homogeneous degree `d`.
    pub fn homogeneous_part(&self, d: i32) -> GPoly {
        let chart = self.chart.clone();
        self.filter_terms(|m| m.degree(&chart) == d)
    }

    /// Sets the listed coordinates to zero.
    pub fn restrict_zero(&self, indices: &[usize]) -> GPoly {
        self.filter_terms(|m| indices.iter().all(|&i| m.0[i] == 0))
    }

    /// Re-expresses the polynomial on `target`, matching coordinates by name.
    /// Fails if a coordinate that occurs is absent there or has a different degree.
    pub fn embed(&self, target: &ChartRef) -> Result<GPoly> {
        if same_chart(&self.chart, target) {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.chart.len());
        for v in self.chart.vars() {
            let j = target.index_of(&v.name);
            if let Some(j) = j {
                if target.var(j).degree != v.degree {
                    return Err(Error::DegreeMismatch {
                        var: v.name.clone(),
                        expected: v.degree,
                        found: target.var(j).degree.to_string(),
                    });
                }
            }
            map.push(j);
        }
        let mut out = GPoly::zero(target);
        for (m, c) in &self.terms {
            let mut word = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let j = map[i].ok_or_else(|| Error::UnknownVariable(self.chart.var(i).name.clone()))?;
                    word.push((j, e));
                }
            }
            let (s, mono) = mono_normalize(target, &word)?;
            out.add_term(mono, if s < 0 { -c.clone() } else { c.clone() });
        }
        Ok(out)
    }

    /// Moves to `target` by name, dropping every term that involves a
    /// coordinate `target` lacks (setting those coordinates to zero).
    pub fn project(&self, target: &ChartRef) -> GPoly {
        let keep: Vec<usize> = (0..self.chart.len())
            .filter(|&i| target.index_of(&self.chart.var(i).name).is_none())
            .collect();
        self.restrict_zero(&keep)
            .embed(target)
            .expect("remaining coordinates exist in the target")
    }

    /// Applies the chart's truncation (a no-op for polynomials built through
    /// the public API, but useful after moving to a truncated chart).
    pub fn truncated(&self, cap: u32) -> GPoly {
        let chart = self.chart.clone();
        self.filter_terms(|m| m.weight(&chart) <= cap)
    }
}

impl PartialEq for GPoly {
    fn eq(&self, other: &Self) -> bool {
        same_chart(&self.chart, &other.chart) && self.terms == other.terms
    }
}

impl Eq for GPoly {}

impl<'a> Add<&'a GPoly> for &'a GPoly {
    type Output = GPoly;
    fn add(self, rhs: &'a GPoly) -> GPoly {
        self.check_chart(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a GPoly> for &'a GPoly {
    type Output = GPoly;
    fn sub(self, rhs: &'a GPoly) -> GPoly {
        self.check_chart(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a GPoly> for &'a GPoly {
    type Output = GPoly;
    fn mul(self, rhs: &'a GPoly) -> GPoly {
        self.check_chart(rhs);
        let chart = &self.chart;
        let mut out = GPoly::zero(chart);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                if let Some((neg, m)) = mul_monomials(chart, ma, mb) {
                    let v = ca * cb;
                    out.add_term(m, if neg { -v } else { v });
                }
            }
        }
        out
    }
}

impl Neg for &GPoly {
    type Output = GPoly;
    fn neg(self) -> GPoly {
        self.scale(&-Coeff::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<GPoly> for GPoly {
            type Output = GPoly;
            fn $f(self, rhs: GPoly) -> GPoly {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a GPoly> for GPoly {
            type Output = GPoly;
            fn $f(self, rhs: &'a GPoly) -> GPoly {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for GPoly {
    type Output = GPoly;
    fn neg(self) -> GPoly {
        -&self
    }
}

pub fn format_coeff(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn format_monomial(chart: &Chart, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(chart.var(i).name.clone()),
            _ => parts.push(format!("{}^{}", chart.var(i).name, e)),
        }
    }
    parts.join("*")
}

/// Canonical rendering: terms in descending monomial order, explicit
/// rational coefficients. The output re-parses to the same polynomial.
impl fmt::Display for GPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = format_monomial(&self.chart, m);
            if mono.is_empty() {
                write!(f, "{}", format_coeff(&abs))?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", format_coeff(&abs))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::chart::GVar;

    fn chart() -> ChartRef {
        Chart::new(vec![GVar::base("x", 0), GVar::fiber("xi1", 1), GVar::fiber("xi2", 1)]).unwrap()
    }

    #[test]
    fn normalize_odd_pair_picks_up_sign() {
        let c = chart();
        let (s, m) = mono_normalize(&c, &[(2, 1), (1, 1)]).unwrap();
        assert_eq!(s, -1);
        assert_eq!(m.exponents(), &[0, 1, 1]);
    }

    #[test]
    fn normalize_even_commutes() {
        let c = chart();
        let (s, m) = mono_normalize(&c, &[(1, 1), (0, 1)]).unwrap();
        assert_eq!(s, 1);
        assert_eq!(m.exponents(), &[1, 1, 0]);
    }

    #[test]
    fn normalize_rejects_odd_square() {
        let c = chart();
        assert_eq!(
            mono_normalize(&c, &[(1, 1), (1, 1)]),
            Err(Error::OddSquare("xi1".into()))
        );
    }

    #[test]
    fn products() {
        let c = chart();
        let x = GPoly::var(&c, 0);
        let a = GPoly::var(&c, 1);
        let b = GPoly::var(&c, 2);
        assert!((&a * &a).is_zero());
        assert_eq!(&b * &a, -(&a * &b));
        let lhs = &(&x + &(&a * &b)) * &x;
        assert_eq!(lhs.to_string(), "x^2 + x*xi1*xi2");
    }

    #[test]
    fn left_derivatives() {
        let c = chart();
        let x = GPoly::var(&c, 0);
        let a = GPoly::var(&c, 1);
        let b = GPoly::var(&c, 2);
        let ab = &a * &b;
        assert_eq!(ab.partial_left(2), -&a);
        assert_eq!(ab.partial_left(1), b);
        let f = &(&x * &x) * &a;
        assert_eq!(f.partial_left(0), (&x * &a).scale(&int(2)));
        // right derivative strips from the back
        assert_eq!(ab.partial_right(2), a);
        assert_eq!(ab.partial_right(1), -&b);
    }

    #[test]
    fn display_uses_rationals() {
        let c = chart();
        let p = &GPoly::var(&c, 0).scale(&rat(-1, 2)) + &GPoly::constant(&c, int(3));
        assert_eq!(p.to_string(), "-1/2*x + 3");
        assert_eq!(GPoly::zero(&c).to_string(), "0");
    }

    #[test]
    fn truncation_drops_heavy_terms() {
        let c = chart().with_truncation(Some(1));
        let a = GPoly::var(&c, 1);
        let b = GPoly::var(&c, 2);
        assert!((&a * &b).is_zero());
        assert_eq!((&a + &b).len(), 2);
    }

    #[test]
    fn embed_matches_names() {
        let small = Chart::new(vec![GVar::fiber("xi2", 1), GVar::fiber("xi1", 1)]).unwrap();
        let p = &GPoly::var(&small, 0) * &GPoly::var(&small, 1); // xi2*xi1
        let q = p.embed(&chart()).unwrap();
        let c = chart();
        assert_eq!(q, -(&GPoly::var(&c, 1) * &GPoly::var(&c, 2)));
    }
}
