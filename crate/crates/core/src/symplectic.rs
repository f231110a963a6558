//! Shifted cotangent charts T*[n]X with their canonical brackets.

use std::collections::BTreeSet;

use crate::bracket::BracketContext;
use crate::error::{Error, Result};
use crate::graded::{int, same_chart, Chart, ChartRef, GPoly, GVar, PolyMap, VarKind};

/// Darboux chart on T*[n]X: the coordinates q^i of `base` followed by
/// momenta p_i of degree n - |q^i|.
#[derive(Clone, Debug)]
pub struct SymplecticChart {
    base: ChartRef,
    shift: i32,
    chart: ChartRef,
    bracket: BracketContext,
}

fn momentum_kind(kind: VarKind) -> Result<VarKind> {
    match kind {
        VarKind::Base => Ok(VarKind::MomentumBase),
        VarKind::Fiber => Ok(VarKind::MomentumFiber),
        _ => Err(Error::Invalid(format!("cannot take momenta of a {kind:?} coordinate"))),
    }
}

impl SymplecticChart {
    /// Momenta are named `name*`.
    pub fn shifted_cotangent(base: &ChartRef, n: i32) -> Result<Self> {
        let names = base.vars().iter().map(|v| format!("{}*", v.name)).collect();
        Self::with_momenta(base, n, names)
    }

    pub fn with_momenta(base: &ChartRef, n: i32, names: Vec<String>) -> Result<Self> {
        if names.len() != base.len() {
            return Err(Error::Invalid("one momentum name per coordinate required".into()));
        }
        let mut momenta = Vec::with_capacity(base.len());
        for (v, name) in base.vars().iter().zip(names) {
            momenta.push(GVar::new(name, n - v.degree, momentum_kind(v.kind)?));
        }
        let chart = base.extended(momenta)?;
        let m = base.len();
        let pairs = (0..m).map(|i| (m + i, i, GPoly::one(&chart))).collect();
        let bracket = BracketContext::new(&chart, n, pairs)?;
        Ok(SymplecticChart {
            base: base.clone(),
            shift: n,
            chart,
            bracket,
        })
    }

    pub fn base(&self) -> &ChartRef {
        &self.base
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn bracket_context(&self) -> &BracketContext {
        &self.bracket
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    /// Chart index of the momentum paired with base coordinate `i`.
    pub fn momentum_index(&self, i: usize) -> usize {
        self.base.len() + i
    }

    pub fn q(&self, i: usize) -> GPoly {
        GPoly::var(&self.chart, i)
    }

    pub fn p(&self, i: usize) -> GPoly {
        GPoly::var(&self.chart, self.momentum_index(i))
    }

    pub fn momentum_indices(&self) -> Vec<usize> {
        (self.base.len()..self.chart.len()).collect()
    }

    pub fn canonical_bracket(&self, f: &GPoly, g: &GPoly) -> Result<GPoly> {
        self.bracket.try_bracket(f, g)
    }

    /// Moves a polynomial on the base chart into this chart.
    pub fn lift_base(&self, f: &GPoly) -> Result<GPoly> {
        if !same_chart(f.chart(), &self.base) {
            return Err(Error::ChartMismatch);
        }
        f.embed(&self.chart)
    }

    /// μ_Q = Σ Q^i p_i for the vector field Q = Σ Q^i ∂/∂q^i on the base.
    pub fn hamiltonian_lift(&self, q: &[GPoly]) -> Result<GPoly> {
        if q.len() != self.base.len() {
            return Err(Error::Invalid("vector field has the wrong number of components".into()));
        }
        let mut out = GPoly::zero(&self.chart);
        for (i, qi) in q.iter().enumerate() {
            out = &out + &(&self.lift_base(qi)? * &self.p(i));
        }
        Ok(out)
    }

    pub fn classify(&self, body: &GPoly) -> Hamiltonian {
        Hamiltonian::new(body.clone(), &self.chart)
    }

    /// `{H, H}` and whether it vanishes.
    pub fn is_integrable(&self, h: &GPoly) -> (bool, GPoly) {
        let r = self.bracket.self_bracket(h);
        (r.is_zero(), r)
    }
}

/// A polynomial with its recomputed grading profile.
#[derive(Clone, Debug, PartialEq)]
pub struct Hamiltonian {
    pub body: GPoly,
    pub degrees: Vec<i32>,
    pub momentum_weights: BTreeSet<u32>,
    pub fiber_weights: BTreeSet<u32>,
}

impl Hamiltonian {
    pub fn new(body: GPoly, chart: &ChartRef) -> Self {
        let mom = chart.momentum_indices();
        let fib = chart.indices_of_kind(VarKind::Fiber);
        let momentum_weights = body.terms().map(|(m, _)| m.count_in(&mom)).collect();
        let fiber_weights = body.terms().map(|(m, _)| m.count_in(&fib)).collect();
        Hamiltonian {
            degrees: body.degrees(),
            body,
            momentum_weights,
            fiber_weights,
        }
    }

    pub fn degree(&self) -> Option<i32> {
        match self.degrees.as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }
}

/// Vector field commutator [Q1, Q2] on a chart, componentwise
/// [Q1,Q2]^j = Σ_i Q1^i ∂_i Q2^j - (-1)^{|Q1||Q2|} Q2^i ∂_i Q1^j.
pub fn vector_field_commutator(q1: &[GPoly], q2: &[GPoly], d1: i32, d2: i32) -> Vec<GPoly> {
    let s = int(if (d1 * d2).rem_euclid(2) == 1 { -1 } else { 1 });
    (0..q1.len())
        .map(|j| {
            let mut acc = GPoly::zero(q1[j].chart());
            for i in 0..q1.len() {
                acc = &acc + &(&q1[i] * &q2[j].partial_left(i));
                acc = &acc - &(&q2[i] * &q1[j].partial_left(i)).scale(&s);
            }
            acc
        })
        .collect()
}

/// The Legendre transform T*[n]V[1] ≅ T*[n]V*[1].
#[derive(Clone, Debug)]
pub struct Legendre {
    /// Darboux chart on T*[n]V*[1]: base coordinates, then one fiber
    /// coordinate per fiber of V[1] (named like that fiber's momentum),
    /// then momenta (named like the original coordinates / momenta).
    pub dual: SymplecticChart,
    /// Pullback L*: functions on the dual chart → functions on the original.
    pub pullback: PolyMap,
}

/// Builds the coordinate exchange (x, ξ, x*, ξ*) ↦ (x, ξ*, x*, ξ). For a
/// fiber coordinate of degree k the image of the dual momentum carries the
/// sign -(-1)^{k(n+1)}, which is +1 for odd ξ on T*[2]; this keeps the
/// pullback a bracket isomorphism in the graded case.
pub fn legendre(sc: &SymplecticChart) -> Result<Legendre> {
    let base = sc.base();
    let n = sc.shift();
    if base
        .vars()
        .iter()
        .any(|v| !matches!(v.kind, VarKind::Base | VarKind::Fiber))
        || base.indices_of_kind(VarKind::Fiber).is_empty()
    {
        return Err(Error::NotSplit);
    }
    let mut dual_vars = Vec::with_capacity(base.len());
    let mut dual_momenta = Vec::with_capacity(base.len());
    for (i, v) in base.vars().iter().enumerate() {
        let p = sc.chart().var(sc.momentum_index(i));
        match v.kind {
            VarKind::Base => {
                dual_vars.push(v.clone());
                dual_momenta.push(p.name.clone());
            }
            _ => {
                dual_vars.push(GVar::new(p.name.clone(), p.degree, VarKind::Fiber));
                dual_momenta.push(v.name.clone());
            }
        }
    }
    let dual_base = Chart::new(dual_vars)?;
    let dual = SymplecticChart::with_momenta(&dual_base, n, dual_momenta)?;
    let mut images = Vec::with_capacity(dual.chart().len());
    for i in 0..base.len() {
        images.push(match base.var(i).kind {
            VarKind::Base => sc.q(i),
            _ => sc.p(i),
        });
    }
    for i in 0..base.len() {
        let v = base.var(i);
        images.push(match v.kind {
            VarKind::Base => sc.p(i),
            _ => {
                let odd = (v.degree * (n + 1)).rem_euclid(2) == 1;
                sc.q(i).scale(&int(if odd { 1 } else { -1 }))
            }
        });
    }
    let pullback = PolyMap::from_images(dual.chart(), sc.chart(), images)?;
    Ok(Legendre { dual, pullback })
}

/// One failing generator pair of a Poisson-map check.
#[derive(Clone, Debug, PartialEq)]
pub struct PairResidual {
    pub left: String,
    pub right: String,
    pub residual: GPoly,
}

/// Checks f*{a,b}_tgt = {f*a, f*b}_src on coordinate pairs of the target,
/// where `f` pulls back functions on `tgt`'s chart to `src`'s chart.
pub fn check_poisson_map(f: &PolyMap, src: &BracketContext, tgt: &BracketContext) -> Result<Vec<PairResidual>> {
    if !same_chart(f.source(), tgt.chart()) || !same_chart(f.target(), src.chart()) {
        return Err(Error::ChartMismatch);
    }
    let chart = tgt.chart();
    let mut out = Vec::new();
    for a in 0..chart.len() {
        for b in 0..chart.len() {
            let lhs = f.apply(&tgt.on_generators(a, b));
            let rhs = src.bracket(f.image(a), f.image(b));
            let residual = &lhs - &rhs;
            if !residual.is_zero() {
                out.push(PairResidual {
                    left: chart.var(a).name.clone(),
                    right: chart.var(b).name.clone(),
                    residual,
                });
            }
        }
    }
    Ok(out)
}
