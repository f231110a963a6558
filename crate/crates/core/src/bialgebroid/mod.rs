//! Lie bialgebroids as Hamiltonians χ = μ + L*μ_* and their L∞ versions.

pub mod action;
pub mod linfty;
pub mod morphism;

use crate::algebroid::axioms::{AlgebroidReport, Finding};
use crate::algebroid::AlgebroidSpec;
use crate::error::{Error, Result};
use crate::graded::{int, GPoly, PolyMap};
use crate::symplectic::{legendre, Legendre, SymplecticChart};

/// A Lie algebroid on V and one on V* over the same base. The dual spec is
/// renamed so that its V*[1] coordinates carry the names of the momenta
/// ξ*_a and its momenta the names of ξ^a.
#[derive(Clone, Debug)]
pub struct BialgebroidSpec {
    v: AlgebroidSpec,
    vdual: AlgebroidSpec,
    legendre: Legendre,
}

impl BialgebroidSpec {
    pub fn new(v: AlgebroidSpec, vdual: AlgebroidSpec) -> Result<BialgebroidSpec> {
        if **v.base() != **vdual.base() {
            return Err(Error::Invalid("bialgebroid halves must share the base chart".into()));
        }
        if v.rank() != vdual.rank() {
            return Err(Error::Invalid("bialgebroid halves must have equal rank".into()));
        }
        for (a, (f, g)) in v.fibers().iter().zip(vdual.fibers()).enumerate() {
            if g.degree != -f.degree {
                return Err(Error::DegreeMismatch {
                    var: format!("dual fiber {}", a + 1),
                    expected: -f.degree,
                    found: g.degree.to_string(),
                });
            }
        }
        let names: Vec<(String, String)> = v
            .fibers()
            .iter()
            .map(|f| (f.momentum.clone(), f.coord.clone()))
            .collect();
        let vdual = vdual.renamed(&names)?;
        let legendre = legendre(v.symplectic())?;
        debug_assert_eq!(**legendre.dual.chart(), **vdual.symplectic().chart());
        Ok(BialgebroidSpec { v, vdual, legendre })
    }

    pub fn v(&self) -> &AlgebroidSpec {
        &self.v
    }

    pub fn vdual(&self) -> &AlgebroidSpec {
        &self.vdual
    }

    pub fn symplectic(&self) -> &SymplecticChart {
        self.v.symplectic()
    }

    /// L*: functions on T*[2]V*[1] → functions on T*[2]V[1].
    pub fn legendre_pullback(&self) -> &PolyMap {
        &self.legendre.pullback
    }

    fn pull(&self, f: &GPoly) -> GPoly {
        let on_dual = f
            .embed(self.legendre.dual.chart())
            .expect("dual spec chart coincides with the Legendre chart");
        self.legendre.pullback.apply(&on_dual)
    }

    /// χ = μ + L*(μ_*).
    pub fn assemble_chi(&self) -> GPoly {
        self.v.hamiltonian() + &self.pull(self.vdual.hamiltonian())
    }

    /// Maps a multivector of V (function on V*[1]) to a function on the V*[1]
    /// chart of the dual spec, matching coordinates by position.
    pub fn multivector_to_dual_forms(&self) -> PolyMap {
        let src = self.v.multivector_chart();
        let tgt = self.vdual.v1_chart();
        let images = (0..src.len()).map(|i| GPoly::var(tgt, i)).collect();
        PolyMap::from_images(src, tgt, images).expect("degrees agree position by position")
    }

    pub fn dual_forms_to_multivectors(&self) -> PolyMap {
        let src = self.vdual.v1_chart();
        let tgt = self.v.multivector_chart();
        let images = (0..src.len()).map(|i| GPoly::var(tgt, i)).collect();
        PolyMap::from_images(src, tgt, images).expect("degrees agree position by position")
    }

    /// d_* acting on multivectors of V: the differential of the dual algebroid.
    pub fn dual_differential(&self, p: &GPoly) -> GPoly {
        let there = self.multivector_to_dual_forms().apply(p);
        let d = self.vdual.ce_differential(&there);
        self.dual_forms_to_multivectors().apply(&d)
    }

    /// {χ,χ} next to the derivation identity
    /// d_*[a,b] = [d_*a,b] + (-1)^{|a|-1}[a,d_*b] on generator pairs, with both
    /// halves' axiom checks.
    pub fn check(&self) -> BialgebroidReport {
        let chi = self.assemble_chi();
        let chi_chi = self.symplectic().bracket_context().self_bracket(&chi);
        let v_report = self.v.check();
        let vdual_report = self.vdual.check();
        let c = self.v.multivector_chart();
        let mut compat = Vec::new();
        for a in 0..c.len() {
            for b in a..c.len() {
                let (ga, gb) = (GPoly::var(c, a), GPoly::var(c, b));
                let lhs = self.dual_differential(&self.v.schouten_bracket(&ga, &gb));
                let first = self.v.schouten_bracket(&self.dual_differential(&ga), &gb);
                let second = self.v.schouten_bracket(&ga, &self.dual_differential(&gb));
                let s = int(if (c.var(a).degree - 1).rem_euclid(2) == 1 {
                    -1
                } else {
                    1
                });
                let residual = &(&lhs - &first) - &second.scale(&s);
                if !residual.is_zero() {
                    compat.push(Finding {
                        identity: "compatibility",
                        at: format!("({}, {})", c.var(a).name, c.var(b).name),
                        residual,
                    });
                }
            }
        }
        BialgebroidReport {
            chi,
            chi_chi,
            v_report,
            vdual_report,
            compat,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BialgebroidReport {
    pub chi: GPoly,
    pub chi_chi: GPoly,
    pub v_report: AlgebroidReport,
    pub vdual_report: AlgebroidReport,
    pub compat: Vec<Finding>,
}

impl BialgebroidReport {
    pub fn hamiltonian_route(&self) -> bool {
        self.chi_chi.is_zero()
    }

    pub fn axiom_route(&self) -> bool {
        self.v_report.axiom_route() && self.vdual_report.axiom_route() && self.compat.is_empty()
    }

    pub fn routes_agree(&self) -> bool {
        self.hamiltonian_route() == self.axiom_route()
    }

    pub fn passed(&self) -> bool {
        self.hamiltonian_route() && self.axiom_route()
    }
}

/// The two sides of the Legendre lemma for an algebroid structure on V*.
#[derive(Clone, Debug)]
pub struct LegendreLemma {
    /// L*(μ_*) on T*[2]V[1].
    pub pulled_back: GPoly,
    /// ½ Σ_{u,v} (-1)^{(|u|+1)|v|} p_v p_u [u, v], the degree −1 bracket of
    /// the dual structure on V[1] read as a quadratic function of the momenta.
    /// The sign is the one for which {{q_u, Q}, q_v} = [u, v].
    pub quadratic_form: GPoly,
    pub chart: SymplecticChart,
}

impl LegendreLemma {
    pub fn holds(&self) -> bool {
        self.pulled_back == self.quadratic_form
    }
}

/// Builds T*[2]V[1] for the V whose dual is described by `vdual`, pulls back
/// μ_* and compares with the bivector of the induced bracket on V[1].
pub fn legendre_lemma_check(vdual: &AlgebroidSpec) -> Result<LegendreLemma> {
    let dual_sc = vdual.symplectic();
    let m = vdual.dim();
    // V[1] coordinates are named like the dual momenta and vice versa.
    let mut vars = vdual.base().vars().to_vec();
    let mut momenta: Vec<String> = vdual.base().vars().iter().map(|v| format!("{}*", v.name)).collect();
    for (a, f) in vdual.fibers().iter().enumerate() {
        let p = dual_sc.chart().var(dual_sc.momentum_index(m + a));
        vars.push(crate::graded::GVar::fiber(p.name.clone(), p.degree));
        momenta.push(f.coord.clone());
    }
    let v1 = crate::graded::Chart::new(vars)?;
    let sc = SymplecticChart::with_momenta(&v1, 2, momenta)?;
    let l = legendre(&sc)?;
    if **l.dual.chart() != **dual_sc.chart() {
        return Err(Error::Invalid("dual chart does not match the Legendre chart".into()));
    }
    let pulled_back = l.pullback.apply(&vdual.hamiltonian().embed(l.dual.chart())?);

    // the dual's degree −1 bracket lives on its multivector chart, which is V[1]
    let schouten = vdual.schouten_context();
    let mv = vdual.multivector_chart();
    let half = crate::graded::rat(1, 2);
    let mut quadratic_form = GPoly::zero(sc.chart());
    let to_sc = |f: &GPoly| -> GPoly {
        let images = (0..mv.len()).map(|i| sc.q(i)).collect();
        PolyMap::from_images(mv, sc.chart(), images)
            .expect("positions correspond")
            .apply(f)
    };
    for (&(u, v), val) in schouten.table() {
        let s = int(if ((mv.var(u).degree + 1) * mv.var(v).degree).rem_euclid(2) == 1 {
            -1
        } else {
            1
        });
        let t = &(&sc.p(v) * &sc.p(u)) * &to_sc(val);
        quadratic_form = &quadratic_form + &t.scale(&(&half * &s));
    }
    Ok(LegendreLemma {
        pulled_back,
        quadratic_form,
        chart: sc,
    })
}
