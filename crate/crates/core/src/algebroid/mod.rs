//! Lie algebroid data over a polynomial base and its encodings.

pub mod axioms;
pub mod cartan;
pub mod connection;
pub mod multivector;

use crate::error::{Error, Result};
use crate::graded::{int, rat, Chart, ChartRef, GPoly, GVar, VarKind};
use crate::symplectic::SymplecticChart;

/// A basis element e_a of the fiber together with the names used for its
/// coordinate ξ^a on V[1] and the momentum ξ*_a on T*[2]V[1].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub label: String,
    pub degree: i32,
    pub coord: String,
    pub momentum: String,
}

impl Fiber {
    /// `e1` gets coordinate `xi1` (and `e` gets `xi`); any other label `a`
    /// gets `xi_a`.
    pub fn new(label: impl Into<String>, degree: i32) -> Fiber {
        let label = label.into();
        let coord = match label.strip_prefix('e') {
            Some(rest) => format!("xi{rest}"),
            None => format!("xi_{label}"),
        };
        let momentum = format!("{coord}*");
        Fiber {
            label,
            degree,
            coord,
            momentum,
        }
    }

    pub fn with_names(
        label: impl Into<String>,
        degree: i32,
        coord: impl Into<String>,
        momentum: impl Into<String>,
    ) -> Fiber {
        Fiber {
            label: label.into(),
            degree,
            coord: coord.into(),
            momentum: momentum.into(),
        }
    }
}

/// A section Σ f^a e_a, stored as its coefficient list on the base chart.
pub type Section = Vec<GPoly>;

/// Anchor A^i_a(x) and structure functions C^c_{ab}(x) of a vector bundle
/// over a chart of degree-0 base coordinates.
#[derive(Clone, Debug)]
pub struct AlgebroidSpec {
    base: ChartRef,
    fibers: Vec<Fiber>,
    anchor: Vec<Vec<GPoly>>,
    structure: Vec<Vec<Vec<GPoly>>>,
    v1: ChartRef,
    sc: SymplecticChart,
    multivectors: ChartRef,
    dual: ChartRef,
    mu: GPoly,
}

fn sign_of(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

impl AlgebroidSpec {
    /// `anchor[a][i]` is A^i_a. `brackets` lists `((a, b), [C^c_{ab}]_c)`;
    /// the pair `(b, a)` is completed by graded antisymmetry.
    pub fn new(
        base: &ChartRef,
        fibers: Vec<Fiber>,
        anchor: Vec<Vec<GPoly>>,
        brackets: Vec<((usize, usize), Vec<GPoly>)>,
    ) -> Result<AlgebroidSpec> {
        let m = base.len();
        let r = fibers.len();
        for v in base.vars() {
            if v.degree != 0 || v.kind != VarKind::Base {
                return Err(Error::DegreeMismatch {
                    var: v.name.clone(),
                    expected: 0,
                    found: v.degree.to_string(),
                });
            }
        }
        if anchor.len() != r || anchor.iter().any(|row| row.len() != m) {
            return Err(Error::Invalid(format!("anchor must be {r} rows of {m} entries")));
        }
        for (a, row) in anchor.iter().enumerate() {
            for (i, f) in row.iter().enumerate() {
                check_base_poly(base, f)?;
                if !f.is_zero() && fibers[a].degree != 0 {
                    return Err(Error::DegreeMismatch {
                        var: format!("anchor({}, {})", fibers[a].label, base.var(i).name),
                        expected: 0,
                        found: fibers[a].degree.to_string(),
                    });
                }
            }
        }
        let zero = GPoly::zero(base);
        let mut structure = vec![vec![vec![None::<GPoly>; r]; r]; r];
        for ((a, b), cs) in brackets {
            if a >= r || b >= r || cs.len() != r {
                return Err(Error::Invalid("bracket entry out of range".into()));
            }
            let s = int(-sign_of(fibers[a].degree * fibers[b].degree % 2 != 0));
            for (c, f) in cs.into_iter().enumerate() {
                check_base_poly(base, &f)?;
                if !f.is_zero() && fibers[c].degree != fibers[a].degree + fibers[b].degree {
                    return Err(Error::DegreeMismatch {
                        var: format!(
                            "[{}, {}] component {}",
                            fibers[a].label, fibers[b].label, fibers[c].label
                        ),
                        expected: fibers[a].degree + fibers[b].degree,
                        found: fibers[c].degree.to_string(),
                    });
                }
                let swapped = f.scale(&s);
                for ((p, q), val) in [((a, b), f), ((b, a), swapped)] {
                    match &structure[p][q][c] {
                        Some(old) if *old != val => {
                            return Err(Error::Invalid(format!(
                                "bracket [{}, {}] is not graded antisymmetric",
                                fibers[p].label, fibers[q].label
                            )))
                        }
                        _ => structure[p][q][c] = Some(val),
                    }
                }
            }
        }
        let structure = structure
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|cs| cs.into_iter().map(|c| c.unwrap_or_else(|| zero.clone())).collect())
                    .collect()
            })
            .collect();
        Self::assemble(base, fibers, anchor, structure)
    }

    fn assemble(
        base: &ChartRef,
        fibers: Vec<Fiber>,
        anchor: Vec<Vec<GPoly>>,
        structure: Vec<Vec<Vec<GPoly>>>,
    ) -> Result<AlgebroidSpec> {
        let mut labels = std::collections::HashSet::new();
        for f in &fibers {
            if !labels.insert(f.label.clone()) {
                return Err(Error::DuplicateVariable(f.label.clone()));
            }
        }
        let mut v1_vars = base.vars().to_vec();
        v1_vars.extend(fibers.iter().map(|f| GVar::fiber(f.coord.clone(), 1 - f.degree)));
        let v1 = Chart::new(v1_vars)?;
        let mut momenta: Vec<String> = base.vars().iter().map(|v| format!("{}*", v.name)).collect();
        momenta.extend(fibers.iter().map(|f| f.momentum.clone()));
        let sc = SymplecticChart::with_momenta(&v1, 2, momenta)?;
        let mut mv = base.vars().to_vec();
        mv.extend(fibers.iter().map(|f| GVar::fiber(f.label.clone(), 1 + f.degree)));
        let multivectors = Chart::new(mv)?;
        let mut dv = base.vars().to_vec();
        dv.extend(fibers.iter().map(|f| GVar::fiber(f.label.clone(), f.degree)));
        let dual = Chart::new(dv)?;
        let mu = GPoly::zero(sc.chart());
        let mut spec = AlgebroidSpec {
            base: base.clone(),
            fibers,
            anchor,
            structure,
            v1,
            sc,
            multivectors,
            dual,
            mu,
        };
        spec.mu = spec.build_hamiltonian();
        Ok(spec)
    }

    /// Same structure with the V[1] coordinates and their momenta renamed.
    pub fn renamed(&self, coords: &[(String, String)]) -> Result<AlgebroidSpec> {
        if coords.len() != self.rank() {
            return Err(Error::Invalid("one name pair per fiber required".into()));
        }
        let fibers = self
            .fibers
            .iter()
            .zip(coords)
            .map(|(f, (c, p))| Fiber::with_names(f.label.clone(), f.degree, c.clone(), p.clone()))
            .collect();
        Self::assemble(&self.base, fibers, self.anchor.clone(), self.structure.clone())
    }

    pub fn base(&self) -> &ChartRef {
        &self.base
    }

    pub fn fibers(&self) -> &[Fiber] {
        &self.fibers
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    pub fn rank(&self) -> usize {
        self.fibers.len()
    }

    pub fn fiber_degree(&self, a: usize) -> i32 {
        self.fibers[a].degree
    }

    pub fn anchor(&self, a: usize, i: usize) -> &GPoly {
        &self.anchor[a][i]
    }

    /// C^c_{ab}.
    pub fn structure(&self, a: usize, b: usize, c: usize) -> &GPoly {
        &self.structure[a][b][c]
    }

    /// Coordinates (x, ξ) of V[1].
    pub fn v1_chart(&self) -> &ChartRef {
        &self.v1
    }

    /// Darboux chart (x, ξ, x*, ξ*) of T*[2]V[1].
    pub fn symplectic(&self) -> &SymplecticChart {
        &self.sc
    }

    /// Coordinates (x, e_a) of V*[1], on which polynomials are multivectors.
    pub fn multivector_chart(&self) -> &ChartRef {
        &self.multivectors
    }

    /// Coordinates (x, e_a) of the unshifted dual V*, fiber-linear
    /// functions being sections of V.
    pub fn dual_chart(&self) -> &ChartRef {
        &self.dual
    }

    pub fn xi_index(&self, a: usize) -> usize {
        self.dim() + a
    }

    pub fn xi(&self, a: usize) -> GPoly {
        GPoly::var(&self.v1, self.xi_index(a))
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.iter().flatten().flatten().all(GPoly::is_zero)
    }

    /// μ = Σ ξ^a A^i_a x*_i - ½ Σ (-1)^{|e_a|} C^c_{ab} ξ^a ξ^b ξ*_c.
    pub fn hamiltonian(&self) -> &GPoly {
        &self.mu
    }

    fn build_hamiltonian(&self) -> GPoly {
        let sc = &self.sc;
        let c = sc.chart();
        let lift = |f: &GPoly| f.embed(c).expect("base embeds into its cotangent chart");
        let mut mu = GPoly::zero(c);
        let m = self.dim();
        for a in 0..self.rank() {
            let xa = sc.q(m + a);
            for i in 0..m {
                let coef = &self.anchor[a][i];
                if !coef.is_zero() {
                    mu = &mu + &(&(&xa * &lift(coef)) * &sc.p(i));
                }
            }
        }
        for a in 0..self.rank() {
            for b in 0..self.rank() {
                let s = rat(-sign_of(self.fibers[a].degree % 2 != 0), 2);
                let xab = &sc.q(m + a) * &sc.q(m + b);
                if xab.is_zero() {
                    continue;
                }
                for cc in 0..self.rank() {
                    let coef = &self.structure[a][b][cc];
                    if coef.is_zero() {
                        continue;
                    }
                    let t = &(&lift(coef).scale(&s) * &xab) * &sc.p(m + cc);
                    mu = &mu + &t;
                }
            }
        }
        mu
    }

    /// ρ(e_a) as the component list of a vector field on the base.
    pub fn anchor_field(&self, a: usize) -> Vec<GPoly> {
        self.anchor[a].clone()
    }

    /// ρ(X)(f) for a section X and a base function f.
    pub fn rho(&self, x: &Section, f: &GPoly) -> GPoly {
        let mut out = GPoly::zero(&self.base);
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for i in 0..self.dim() {
                let t = &self.anchor[a][i] * &f.partial_left(i);
                out = &out + &(xa * &t);
            }
        }
        out
    }

    pub fn zero_section(&self) -> Section {
        vec![GPoly::zero(&self.base); self.rank()]
    }

    pub fn basis_section(&self, a: usize) -> Section {
        let mut s = self.zero_section();
        s[a] = GPoly::one(&self.base);
        s
    }

    /// [e_a, e_b] = Σ_c C^c_{ab} e_c.
    pub fn basis_bracket(&self, a: usize, b: usize) -> Section {
        self.structure[a][b].clone()
    }

    /// Bracket of sections, extended from the basis by
    /// [f e_a, g e_b] = fg[e_a,e_b] + f ρ(e_a)(g) e_b - (-1)^{|e_a||e_b|} g ρ(e_b)(f) e_a.
    pub fn section_bracket(&self, x: &Section, y: &Section) -> Section {
        let mut out = self.zero_section();
        for (a, f) in x.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            for (b, g) in y.iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                let fg = f * g;
                for c in 0..self.rank() {
                    out[c] = &out[c] + &(&fg * &self.structure[a][b][c]);
                }
                let ea = self.basis_section(a);
                let eb = self.basis_section(b);
                out[b] = &out[b] + &(f * &self.rho(&ea, g));
                let s = int(sign_of(self.fibers[a].degree * self.fibers[b].degree % 2 != 0));
                out[a] = &out[a] - &(g * &self.rho(&eb, f)).scale(&s);
            }
        }
        out
    }

    /// Renders a section as a multivector-style expression in the labels.
    pub fn section_to_poly(&self, x: &Section) -> GPoly {
        let c = &self.multivectors;
        let mut out = GPoly::zero(c);
        for (a, f) in x.iter().enumerate() {
            let lifted = f.embed(c).expect("base embeds");
            out = &out + &(&lifted * &GPoly::var(c, self.dim() + a));
        }
        out
    }
}

fn check_base_poly(base: &ChartRef, f: &GPoly) -> Result<()> {
    if !crate::graded::same_chart(f.chart(), base) {
        return Err(Error::ChartMismatch);
    }
    Ok(())
}
