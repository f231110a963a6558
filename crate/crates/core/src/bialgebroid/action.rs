//! The operator g ↦ χ(g) on functions on V[1] with a formal parameter ħ,
//! and Taylor coefficients along the fibers.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graded::{int, same_chart, Chart, ChartRef, Coeff, GPoly, GVar, Monomial, VarKind};
use crate::symplectic::SymplecticChart;

/// V[1] coordinates followed by ħ (degree 2). Only ħ carries weight, so a
/// truncation cap bounds the ħ-order.
pub fn hbar_chart(v1: &ChartRef, cap: u32) -> Result<ChartRef> {
    let c = v1.extended([GVar::hbar()])?;
    let mut w = vec![0; c.len()];
    *w.last_mut().expect("nonempty") = 1;
    Ok(c.with_weights(w)?.with_truncation(Some(cap)))
}

/// χ(g) = Σ_k ħ^{k-1}/k! Σ_{i_1..i_k} (χ ∂⃖_{p_{i_1}} ⋯ ∂⃖_{p_{i_k}})|_{p=0} (∂⃗_{q^{i_k}} ⋯ ∂⃗_{q^{i_1}} g).
#[derive(Clone, Debug)]
pub struct ChiOperator {
    chart: ChartRef,
    hbar: usize,
    /// (q indices in application order, coefficient function on `chart`)
    terms: Vec<(Vec<usize>, GPoly)>,
}

fn factorial(k: usize) -> Coeff {
    (1..=k as i64).fold(int(1), |acc, i| acc * int(i))
}

impl ChiOperator {
    pub fn new(sc: &SymplecticChart, chi: &GPoly, cap: u32) -> Result<ChiOperator> {
        if !same_chart(chi.chart(), sc.chart()) {
            return Err(Error::ChartMismatch);
        }
        let chart = hbar_chart(sc.base(), cap)?;
        let hbar = chart.len() - 1;
        let n = sc.dim();
        let mom = sc.momentum_indices();
        let kmax = chi.terms().map(|(m, _)| m.count_in(&mom)).max().unwrap_or(0) as usize;
        let mut terms = Vec::new();
        let mut frontier: Vec<(Vec<usize>, GPoly)> = vec![(Vec::new(), chi.clone())];
        for k in 1..=kmax {
            let mut next = Vec::new();
            for (word, d) in &frontier {
                for i in 0..n {
                    let dd = d.partial_right(sc.momentum_index(i));
                    if dd.is_zero() {
                        continue;
                    }
                    let mut w = word.clone();
                    w.push(i);
                    let at_zero = dd.restrict_zero(&mom).project(&chart);
                    if !at_zero.is_zero() {
                        let coef =
                            &GPoly::var(&chart, hbar).pow(k as u32 - 1) * &at_zero.scale(&(int(1) / factorial(k)));
                        if !coef.is_zero() {
                            terms.push((w.clone(), coef));
                        }
                    }
                    next.push((w, dd));
                }
            }
            frontier = next;
        }
        Ok(ChiOperator { chart, hbar, terms })
    }

    /// The chart of inputs and outputs: V[1] coordinates and ħ.
    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn hbar(&self) -> GPoly {
        GPoly::var(&self.chart, self.hbar)
    }

    /// Moves a function on V[1] onto the operator's chart.
    pub fn lift(&self, g: &GPoly) -> Result<GPoly> {
        g.embed(&self.chart)
    }

    pub fn apply(&self, g: &GPoly) -> GPoly {
        assert!(same_chart(g.chart(), &self.chart), "operand must live on the ħ chart");
        let mut out = GPoly::zero(&self.chart);
        let mut cache: BTreeMap<Vec<usize>, GPoly> = BTreeMap::new();
        for (word, coef) in &self.terms {
            let dg = match cache.get(word) {
                Some(v) => v.clone(),
                None => {
                    let mut cur = g.clone();
                    for &i in word {
                        cur = cur.partial_left(i);
                        if cur.is_zero() {
                            break;
                        }
                    }
                    cache.insert(word.clone(), cur.clone());
                    cur
                }
            };
            if !dg.is_zero() {
                out = &out + &(coef * &dg);
            }
        }
        out
    }
}

/// Convenience: χ(g) for g on V[1], truncated at ħ-order `cap`.
pub fn chi_action(sc: &SymplecticChart, chi: &GPoly, g: &GPoly, cap: u32) -> Result<GPoly> {
    let op = ChiOperator::new(sc, chi, cap)?;
    Ok(op.apply(&op.lift(g)?))
}

/// Taylor coefficients of a function on W[1] along the fiber coordinates:
/// the word (sorted fiber positions, repeated for powers) of each monomial
/// maps to its coefficient, a function on the base. Words longer than `cap`
/// are dropped.
pub type TaylorTable = BTreeMap<Vec<usize>, GPoly>;

pub fn taylor(g: &GPoly, base: &ChartRef, cap: u32) -> Result<TaylorTable> {
    let chart = g.chart();
    let fib = chart.indices_of_kind(VarKind::Fiber);
    let mut base_pos = Vec::with_capacity(chart.len());
    for v in chart.vars() {
        base_pos.push(match v.kind {
            VarKind::Base => Some(base.require(&v.name)?),
            VarKind::Fiber => None,
            _ => {
                return Err(Error::Invalid(format!(
                    "`{}` is not a base or fiber coordinate",
                    v.name
                )))
            }
        });
    }
    let mut out: TaylorTable = BTreeMap::new();
    for (m, c) in g.terms() {
        let mut word = Vec::new();
        for (pos, &i) in fib.iter().enumerate() {
            for _ in 0..m.exp(i) {
                word.push(pos);
            }
        }
        if word.len() as u32 > cap {
            continue;
        }
        let mut exps = vec![0u16; base.len()];
        for (i, bp) in base_pos.iter().enumerate() {
            if let Some(j) = bp {
                exps[*j] = m.exp(i);
            }
        }
        let entry = out.entry(word).or_insert_with(|| GPoly::zero(base));
        entry.add_term(Monomial::from_exponents(exps), c.clone());
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// A base chart built from the base coordinates of a V[1] chart.
pub fn base_of(v1: &ChartRef) -> Result<ChartRef> {
    Chart::new(v1.vars().iter().filter(|v| v.kind == VarKind::Base).cloned().collect())
}
