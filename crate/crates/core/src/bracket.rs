//! Graded Poisson brackets of arbitrary degree given by their values on
//! pairs of coordinates.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graded::{same_chart, ChartRef, GPoly};

fn sign(neg: bool) -> i64 {
    if neg {
        -1
    } else {
        1
    }
}

/// A biderivation of degree `-n` on the polynomials of `chart`, determined
/// by `{u, v}` on coordinates. `{F, G} = Σ (F ∂⃖_u) {u, v} (∂⃗_v G)`.
#[derive(Clone, Debug)]
pub struct BracketContext {
    chart: ChartRef,
    shift: i32,
    table: BTreeMap<(usize, usize), GPoly>,
}

impl BracketContext {
    /// Builds the bracket from the listed values; each pair `(u, v)` also
    /// fixes `(v, u)` by graded antisymmetry. Listing both orders with
    /// incompatible values is an error.
    pub fn new(chart: &ChartRef, shift: i32, pairs: Vec<(usize, usize, GPoly)>) -> Result<Self> {
        let mut table: BTreeMap<(usize, usize), GPoly> = BTreeMap::new();
        for (u, v, b) in pairs {
            if !same_chart(b.chart(), chart) {
                return Err(Error::ChartMismatch);
            }
            let (du, dv) = (chart.var(u).degree - shift, chart.var(v).degree - shift);
            let swapped = b.scale(&crate::graded::int(-sign((du * dv).rem_euclid(2) == 1)));
            for (key, val) in [((u, v), b), ((v, u), swapped)] {
                if let Some(old) = table.get(&key) {
                    if *old != val {
                        return Err(Error::Invalid(format!(
                            "bracket of ({}, {}) given inconsistently",
                            chart.var(key.0).name,
                            chart.var(key.1).name
                        )));
                    }
                }
                if !val.is_zero() {
                    table.insert(key, val);
                }
            }
        }
        Ok(BracketContext {
            chart: chart.clone(),
            shift,
            table,
        })
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    /// Value on a coordinate pair.
    pub fn on_generators(&self, u: usize, v: usize) -> GPoly {
        self.table
            .get(&(u, v))
            .cloned()
            .unwrap_or_else(|| GPoly::zero(&self.chart))
    }

    pub fn table(&self) -> impl Iterator<Item = (&(usize, usize), &GPoly)> {
        self.table.iter()
    }

    pub fn bracket(&self, f: &GPoly, g: &GPoly) -> GPoly {
        assert!(
            same_chart(f.chart(), &self.chart) && same_chart(g.chart(), &self.chart),
            "chart mismatch in bracket"
        );
        let mut left: BTreeMap<usize, GPoly> = BTreeMap::new();
        let mut right: BTreeMap<usize, GPoly> = BTreeMap::new();
        let mut out = GPoly::zero(&self.chart);
        for (&(u, v), b) in &self.table {
            let fu = left.entry(u).or_insert_with(|| f.partial_right(u));
            if fu.is_zero() {
                continue;
            }
            let gv = right.entry(v).or_insert_with(|| g.partial_left(v));
            if gv.is_zero() {
                continue;
            }
            out = &out + &(&(&*fu * b) * &*gv);
        }
        out
    }

    pub fn try_bracket(&self, f: &GPoly, g: &GPoly) -> Result<GPoly> {
        if !same_chart(f.chart(), &self.chart) || !same_chart(g.chart(), &self.chart) {
            return Err(Error::ChartMismatch);
        }
        Ok(self.bracket(f, g))
    }

    /// `{h, h}`; zero exactly when `h` is integrable.
    pub fn self_bracket(&self, h: &GPoly) -> GPoly {
        self.bracket(h, h)
    }

    /// `{f,{g,h}} - {{f,g},h} - (-1)^{(|f|-n)(|g|-n)} {g,{f,h}}` for
    /// homogeneous arguments.
    pub fn jacobiator(&self, f: &GPoly, g: &GPoly, h: &GPoly) -> GPoly {
        let n = self.shift;
        let df = f.degree().unwrap_or(0) - n;
        let dg = g.degree().unwrap_or(0) - n;
        let s = sign((df * dg).rem_euclid(2) == 1);
        let a = self.bracket(f, &self.bracket(g, h));
        let b = self.bracket(&self.bracket(f, g), h);
        let c = self.bracket(g, &self.bracket(f, h));
        &(&a - &b) - &c.scale(&crate::graded::int(s))
    }

    /// Residuals of the Jacobi identity on all coordinate triples.
    pub fn generator_jacobi(&self) -> Vec<((usize, usize, usize), GPoly)> {
        let n = self.chart.len();
        let gens: Vec<GPoly> = (0..n).map(|i| GPoly::var(&self.chart, i)).collect();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let r = self.jacobiator(&gens[i], &gens[j], &gens[k]);
                    if !r.is_zero() {
                        out.push(((i, j, k), r));
                    }
                }
            }
        }
        out
    }
}
