//! Semistrict and full L∞-morphisms between Hamiltonians on T*[2]V[1]
//! and T*[2]W[1].

use std::collections::{BTreeMap, HashMap};

use super::action::{base_of, taylor, ChiOperator};
use crate::error::{Error, Result};
use crate::graded::{same_chart, Chart, ChartRef, GPoly, PolyMap, VarKind};
use crate::symplectic::SymplecticChart;

/// f* must send fiber coordinates of W[1] to polynomials vanishing on the
/// zero section of V[1].
fn check_based(f: &PolyMap) -> Result<()> {
    let src = f.source();
    let fib_v = f.target().indices_of_kind(VarKind::Fiber);
    for (i, v) in src.vars().iter().enumerate() {
        if v.kind == VarKind::Fiber {
            let img = f.image(i);
            if img.terms().any(|(m, _)| m.count_in(&fib_v) == 0) {
                return Err(Error::Invalid(format!(
                    "image of fiber coordinate `{}` does not vanish on the zero section",
                    v.name
                )));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct SemistrictReport {
    /// Chart of V[1] coordinates and W momenta on which both sides live.
    pub chart: ChartRef,
    pub f_star: GPoly,
    pub phi_star: GPoly,
}

impl SemistrictReport {
    pub fn residual(&self) -> GPoly {
        &self.f_star - &self.phi_star
    }

    pub fn passed(&self) -> bool {
        self.f_star == self.phi_star
    }
}

/// Compares F*(χ_W) with Φ*(χ_V) for the map f whose pullback sends W[1]
/// coordinates to polynomials on V[1]. F* substitutes the W[1] coordinates
/// and keeps W momenta; Φ* sends p_{V,i} to Σ_j (∂_{q_V^i} f^j) p_{W,j}.
pub fn semistrict_check(
    vsc: &SymplecticChart,
    wsc: &SymplecticChart,
    f: &PolyMap,
    chi_v: &GPoly,
    chi_w: &GPoly,
) -> Result<SemistrictReport> {
    if !same_chart(f.source(), wsc.base()) || !same_chart(f.target(), vsc.base()) {
        return Err(Error::ChartMismatch);
    }
    check_based(f)?;
    let nv = vsc.dim();
    let nw = wsc.dim();
    let mut vars = vsc.base().vars().to_vec();
    vars.extend((0..nw).map(|j| wsc.chart().var(wsc.momentum_index(j)).clone()));
    let chart = Chart::new(vars)?;
    let pw = |j: usize| GPoly::var(&chart, nv + j);

    let mut f_images = Vec::with_capacity(wsc.chart().len());
    for j in 0..nw {
        f_images.push(f.image(j).embed(&chart)?);
    }
    for j in 0..nw {
        f_images.push(pw(j));
    }
    let f_map = PolyMap::from_images(wsc.chart(), &chart, f_images)?;

    let mut phi_images = Vec::with_capacity(vsc.chart().len());
    for i in 0..nv {
        phi_images.push(GPoly::var(&chart, i));
    }
    for i in 0..nv {
        let mut acc = GPoly::zero(&chart);
        for j in 0..nw {
            let d = f.image(j).partial_left(i);
            if !d.is_zero() {
                acc = &acc + &(&d.embed(&chart)? * &pw(j));
            }
        }
        phi_images.push(acc);
    }
    let phi_map = PolyMap::from_images(vsc.chart(), &chart, phi_images)?;
    Ok(SemistrictReport {
        f_star: f_map.apply(chi_w),
        phi_star: phi_map.apply(chi_v),
        chart,
    })
}

/// A full morphism given by pullbacks of symmetric words: `words[w]` is the
/// function on V[1] assigned to the word w in W[1] fiber positions (sorted,
/// repeated for powers); base coordinates of W are sent to `base_images`.
/// The empty word is always 1.
#[derive(Clone, Debug)]
pub struct MorphismTable {
    pub w_v1: ChartRef,
    pub v_v1: ChartRef,
    pub base_images: Vec<GPoly>,
    pub words: BTreeMap<Vec<usize>, GPoly>,
}

/// All sorted words of length ≤ cap in the fiber positions of `v1`, odd
/// positions used at most once.
pub fn words_up_to(v1: &ChartRef, cap: u32) -> Vec<Vec<usize>> {
    let fib = v1.indices_of_kind(VarKind::Fiber);
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..cap {
        let mut next = Vec::new();
        for w in &frontier {
            let start = w.last().copied().unwrap_or(0);
            for pos in start..fib.len() {
                if w.last() == Some(&pos) && v1.is_odd(fib[pos]) {
                    continue;
                }
                let mut n: Vec<usize> = w.clone();
                n.push(pos);
                next.push(n);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

impl MorphismTable {
    /// Table of an algebra map: each word goes to the product of the
    /// images of its letters.
    pub fn from_algebra_map(f: &PolyMap, cap: u32) -> Result<MorphismTable> {
        let w = f.source();
        let fib = w.indices_of_kind(VarKind::Fiber);
        let base_images = w
            .indices_of_kind(VarKind::Base)
            .iter()
            .map(|&i| f.image(i).clone())
            .collect();
        let mut words = BTreeMap::new();
        for word in words_up_to(w, cap) {
            let mut acc = GPoly::one(f.target());
            for &pos in &word {
                acc = &acc * f.image(fib[pos]);
            }
            words.insert(word, acc);
        }
        Ok(MorphismTable {
            w_v1: w.clone(),
            v_v1: f.target().clone(),
            base_images,
            words,
        })
    }

    /// Builds a table from named base assignments and word entries.
    pub fn new(
        w_v1: &ChartRef,
        v_v1: &ChartRef,
        base: &HashMap<String, GPoly>,
        words: BTreeMap<Vec<usize>, GPoly>,
    ) -> Result<MorphismTable> {
        let mut base_images = Vec::new();
        for &i in &w_v1.indices_of_kind(VarKind::Base) {
            let v = w_v1.var(i);
            let img = base
                .get(&v.name)
                .cloned()
                .ok_or_else(|| Error::Invalid(format!("no image for base coordinate `{}`", v.name)))?;
            if !img.is_homogeneous_of(v.degree) {
                return Err(Error::DegreeMismatch {
                    var: v.name.clone(),
                    expected: v.degree,
                    found: format!("{:?}", img.degrees()),
                });
            }
            base_images.push(img);
        }
        let fib = w_v1.indices_of_kind(VarKind::Fiber);
        for (word, img) in &words {
            if word.iter().any(|&p| p >= fib.len()) {
                return Err(Error::Invalid("word refers to a missing fiber".into()));
            }
            let deg: i32 = word.iter().map(|&p| w_v1.var(fib[p]).degree).sum();
            if !same_chart(img.chart(), v_v1) {
                return Err(Error::ChartMismatch);
            }
            if !img.is_homogeneous_of(deg) {
                return Err(Error::DegreeMismatch {
                    var: format!("word {word:?}"),
                    expected: deg,
                    found: format!("{:?}", img.degrees()),
                });
            }
        }
        Ok(MorphismTable {
            w_v1: w_v1.clone(),
            v_v1: v_v1.clone(),
            base_images,
            words,
        })
    }

    fn word_image(&self, word: &[usize]) -> Result<GPoly> {
        if word.is_empty() {
            return Ok(GPoly::one(&self.v_v1));
        }
        self.words.get(word).cloned().ok_or_else(|| {
            let fib = self.w_v1.indices_of_kind(VarKind::Fiber);
            let names: Vec<&str> = word.iter().map(|&p| self.w_v1.var(fib[p]).name.as_str()).collect();
            Error::TruncationIncomplete(names.join("*"))
        })
    }

    /// f*T(g) for g on W[1].
    pub fn pull(&self, g: &GPoly, cap: u32) -> Result<GPoly> {
        let base = base_of(&self.w_v1)?;
        let base_map = PolyMap::from_images(&base, &self.v_v1, self.base_images.clone())?;
        let mut out = GPoly::zero(&self.v_v1);
        for (word, coef) in taylor(g, &base, cap)? {
            out = &out + &(&base_map.apply(&coef) * &self.word_image(&word)?);
        }
        Ok(out)
    }
}

/// The residual of the operator equation on one test function.
#[derive(Clone, Debug, PartialEq)]
pub struct InputResidual {
    pub input: GPoly,
    pub residual: GPoly,
}

/// Test functions for the operator equation: base coordinates, fiber words
/// of length 1..=cap and base coordinate times word. χ_W has components of
/// every order up to its momentum count, so generators alone do not see the
/// higher ones.
pub fn test_inputs(w_v1: &ChartRef, cap: u32) -> Vec<GPoly> {
    let fib = w_v1.indices_of_kind(VarKind::Fiber);
    let base = w_v1.indices_of_kind(VarKind::Base);
    let word_poly = |w: &[usize]| {
        w.iter()
            .fold(GPoly::one(w_v1), |acc, &p| &acc * &GPoly::var(w_v1, fib[p]))
    };
    let words: Vec<GPoly> = words_up_to(w_v1, cap).iter().map(|w| word_poly(w)).collect();
    let mut out: Vec<GPoly> = base.iter().map(|&i| GPoly::var(w_v1, i)).collect();
    out.extend(words.iter().skip(1).cloned());
    for &i in &base {
        for w in words.iter().skip(1) {
            out.push(&GPoly::var(w_v1, i) * w);
        }
    }
    out
}

/// χ_V ∘ f*T = f*T ∘ χ_W on the test functions of W[1], with words and ħ
/// truncated at `cap`.
pub fn linfty_morphism_check(
    vsc: &SymplecticChart,
    wsc: &SymplecticChart,
    table: &MorphismTable,
    chi_v: &GPoly,
    chi_w: &GPoly,
    cap: u32,
) -> Result<Vec<InputResidual>> {
    if !same_chart(&table.w_v1, wsc.base()) || !same_chart(&table.v_v1, vsc.base()) {
        return Err(Error::ChartMismatch);
    }
    let op_v = ChiOperator::new(vsc, chi_v, cap)?;
    let op_w = ChiOperator::new(wsc, chi_w, cap)?;
    let hbar_w = op_w.chart().len() - 1;
    let hv = op_v.hbar();
    // words past the cap are not recorded on the right, so drop them on both sides
    let fib_v = op_v.chart().indices_of_kind(VarKind::Fiber);
    let cut = |p: &GPoly| p.filter_terms(|m| m.count_in(&fib_v) <= cap);
    let mut out = Vec::new();
    for g in test_inputs(wsc.base(), cap) {
        let lhs = op_v.apply(&op_v.lift(&table.pull(&g, cap)?)?);
        let image = op_w.apply(&op_w.lift(&g)?);
        let mut rhs = GPoly::zero(op_v.chart());
        for k in 0..=cap {
            let part = strip_hbar(&image, hbar_w, k, wsc.base());
            if part.is_zero() {
                continue;
            }
            let pulled = op_v.lift(&table.pull(&part, cap)?)?;
            rhs = &rhs + &(&hv.pow(k) * &pulled);
        }
        let residual = cut(&(&lhs - &rhs));
        if !residual.is_zero() {
            out.push(InputResidual { input: g, residual });
        }
    }
    Ok(out)
}

/// The coefficient of ħ^k in a polynomial on the ħ chart, on `v1`.
fn strip_hbar(p: &GPoly, hbar: usize, k: u32, v1: &ChartRef) -> GPoly {
    let mut out = GPoly::zero(v1);
    for (m, c) in p.terms() {
        if m.exp(hbar) as u32 != k {
            continue;
        }
        let mut e = m.exponents().to_vec();
        e.truncate(v1.len());
        out.add_term(crate::graded::Monomial::from_exponents(e), c.clone());
    }
    out
}
