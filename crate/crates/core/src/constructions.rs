//! Named constructions: action algebroids, Poisson bialgebroids, triangular
//! structures, Nijenhuis deformations and L∞-bialgebras over a point.

use std::collections::BTreeSet;

pub use crate::algebroid::multivector::{koszul_algebroid, tangent_algebroid};

use crate::algebroid::axioms::{AlgebroidReport, Finding};
use crate::algebroid::multivector::{check_bivector_matrix, koszul_structure};
use crate::algebroid::{AlgebroidSpec, Fiber, Section};
use crate::bialgebroid::{BialgebroidReport, BialgebroidSpec};
use crate::error::{Error, Result};
use crate::graded::{Chart, ChartRef, Coeff, GPoly, GVar, PolyMap, VarKind};
use crate::symplectic::{legendre, vector_field_commutator, SymplecticChart};

/// Action algebroid 𝔤 ⋉ M. `constants` lists ((a, b), [C^c_{ab}]_c) for a < b
/// and `action[a]` is the vector field of e_a on `base`.
pub fn action_algebroid(
    base: &ChartRef,
    fibers: Vec<Fiber>,
    constants: &[((usize, usize), Vec<Coeff>)],
    action: Vec<Vec<GPoly>>,
) -> Result<AlgebroidSpec> {
    let pt = Chart::point();
    let on = |chart: &ChartRef| -> Vec<((usize, usize), Vec<GPoly>)> {
        constants
            .iter()
            .map(|(ab, cs)| (*ab, cs.iter().map(|c| GPoly::constant(chart, c.clone())).collect()))
            .collect()
    };
    let empty = vec![Vec::new(); fibers.len()];
    let algebra = AlgebroidSpec::new(&pt, fibers.clone(), empty, on(&pt))?;
    let report = algebra.check();
    if let Some(f) = report.jacobi.first() {
        return Err(Error::NotLieAlgebra(format!(
            "{} at {}: {}",
            f.identity, f.at, f.residual
        )));
    }
    AlgebroidSpec::new(base, fibers, action, on(base))
}

/// The cotangent Lie bialgebroid of a Poisson manifold: V = T*M with the
/// Koszul bracket, V* = TM.
#[derive(Clone, Debug)]
pub struct PoissonBialgebroid {
    pub spec: BialgebroidSpec,
    pub chi: GPoly,
}

pub fn poisson_bialgebroid(base: &ChartRef, pi: &[Vec<GPoly>]) -> Result<PoissonBialgebroid> {
    let v = koszul_algebroid(base, pi)?;
    let vdual = tangent_algebroid(base)?;
    let spec = BialgebroidSpec::new(v, vdual)?;
    let chi = spec.assemble_chi();
    Ok(PoissonBialgebroid { spec, chi })
}

/// π_V = ρ∘σ read off a linear-quadratic χ: with ρ^i_a the coefficient of
/// ξ^a x*_i and σ^i_a that of ξ*_a x*_i, π_V^{ij} = Σ_a ρ^i_a σ^j_a.
pub fn induced_poisson(sc: &SymplecticChart, chi: &GPoly) -> Vec<Vec<GPoly>> {
    let base = sc.base();
    let bases = base.indices_of_kind(VarKind::Base);
    let fibers = base.indices_of_kind(VarKind::Fiber);
    let x_chart = Chart::new(bases.iter().map(|&i| base.var(i).clone()).collect()).expect("subset of a valid chart");
    let others: Vec<usize> = (0..sc.chart().len()).filter(|i| !bases.contains(i)).collect();
    let read = |d: &GPoly| d.restrict_zero(&others).project(&x_chart);
    let coefficients = |index: &dyn Fn(usize) -> usize| -> Vec<Vec<GPoly>> {
        bases
            .iter()
            .map(|&i| {
                let di = chi.partial_right(sc.momentum_index(i));
                fibers.iter().map(|&a| read(&di.partial_left(index(a)))).collect()
            })
            .collect()
    };
    let rho = coefficients(&|a| a);
    let sigma = coefficients(&|a| sc.momentum_index(a));
    let m = bases.len();
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = GPoly::zero(&x_chart);
                    for a in 0..fibers.len() {
                        acc = &acc + &(&rho[i][a] * &sigma[j][a]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Output of the triangular construction χ = μ + L*(α(r)).
#[derive(Clone, Debug)]
pub struct Triangular {
    pub chi: GPoly,
    /// L*(α(r)) on T*[2]V[1].
    pub alpha: GPoly,
    /// {L*(r), μ} on T*[2]V[1]; equals −{μ, L*(r)} since L*(r) has degree 2.
    pub lr_mu: GPoly,
    /// (momentum count, fiber count) of every monomial of χ.
    pub profile: BTreeSet<(u32, u32)>,
}

impl Triangular {
    pub fn self_check_residual(&self) -> GPoly {
        &self.alpha - &self.lr_mu
    }

    /// Only brackets (two fibers, one momentum), cobrackets (one fiber, two
    /// momenta) and the anchor-type terms occur.
    pub fn no_higher_mixed(&self) -> bool {
        self.profile.iter().all(|&(p, f)| (1..=2).contains(&p) && p + f <= 3)
    }
}

/// α(r) is the lift Σ_u [r,u] p_u of the vector field [r,−] on V*[1],
/// pulled back along the Legendre transform.
pub fn triangular(spec: &AlgebroidSpec, r: &GPoly) -> Result<Triangular> {
    let mv = spec.multivector_chart();
    if !crate::graded::same_chart(r.chart(), mv) {
        return Err(Error::ChartMismatch);
    }
    let rr = spec.schouten_bracket(r, r);
    if !rr.is_zero() {
        return Err(Error::NotTriangular(rr.to_string()));
    }
    let sc = spec.symplectic();
    let l = legendre(sc)?;
    let dual_base = l.dual.base();
    let to_dual = PolyMap::from_images(mv, dual_base, (0..mv.len()).map(|i| GPoly::var(dual_base, i)).collect())?;
    let field: Vec<GPoly> = (0..mv.len())
        .map(|u| to_dual.apply(&spec.schouten_bracket(r, &GPoly::var(mv, u))))
        .collect();
    let lift = l.dual.hamiltonian_lift(&field)?;
    let alpha = l.pullback.apply(&lift);
    let lr = l.pullback.apply(&l.dual.lift_base(&to_dual.apply(r))?);
    let lr_mu = sc.canonical_bracket(&lr, spec.hamiltonian())?;
    let chi = spec.hamiltonian() + &alpha;
    let mom = sc.momentum_indices();
    let fib = sc.chart().indices_of_kind(VarKind::Fiber);
    let profile = chi.terms().map(|(m, _)| (m.count_in(&mom), m.count_in(&fib))).collect();
    Ok(Triangular {
        chi,
        alpha,
        lr_mu,
        profile,
    })
}

/// Report of the Nijenhuis checks for `n[i][j]` = N^i_j, N(∂_j) = Σ_i N^i_j ∂_i.
#[derive(Clone, Debug)]
pub struct NijenhuisReport {
    /// Torsion on coordinate pairs (i < j), nonzero ones only.
    pub torsion: Vec<Finding>,
    /// TM with anchor N and bracket [X,Y]_N.
    pub deformed: AlgebroidSpec,
    pub deformed_report: AlgebroidReport,
    /// Entries of N π^# − π^# N*, nonzero ones only.
    pub sharp: Vec<Finding>,
    /// {α,β}_{Nπ} − {N*α,β}_π − {α,N*β}_π + N*{α,β}_π on coordinate 1-forms;
    /// `None` when Nπ is not a bivector (N π^# ≠ π^# N*).
    pub koszul: Option<Vec<Finding>>,
    /// The pair (TM_N, T*M_π) when every check passes.
    pub bialgebroid: Option<BialgebroidReport>,
}

impl NijenhuisReport {
    pub fn passed(&self) -> bool {
        self.torsion.is_empty() && self.sharp.is_empty() && self.koszul.as_ref().is_some_and(|k| k.is_empty())
    }
}

fn apply_matrix(n: &[Vec<GPoly>], v: &[GPoly]) -> Vec<GPoly> {
    n.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(GPoly::zero(v[0].chart()), |acc, (a, b)| &acc + &(a * b))
        })
        .collect()
}

fn sub_fields(a: &[GPoly], b: &[GPoly]) -> Vec<GPoly> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn render_field(base: &ChartRef, v: &[GPoly]) -> GPoly {
    let chart = crate::algebroid::axioms::vector_field_chart(base);
    let m = base.len();
    v.iter().enumerate().fold(GPoly::zero(&chart), |acc, (i, c)| {
        &acc + &(&c.embed(&chart).expect("base embeds") * &GPoly::var(&chart, m + i))
    })
}

pub fn nijenhuis_check(base: &ChartRef, n: &[Vec<GPoly>], pi: &[Vec<GPoly>]) -> Result<NijenhuisReport> {
    let m = base.len();
    if n.len() != m || n.iter().any(|row| row.len() != m) {
        return Err(Error::Invalid(format!("N must be a {m}x{m} matrix")));
    }
    let koszul_pi = koszul_algebroid(base, pi)?;
    let coord = |i: usize| -> Vec<GPoly> {
        (0..m)
            .map(|k| if k == i { GPoly::one(base) } else { GPoly::zero(base) })
            .collect()
    };
    let br = |x: &[GPoly], y: &[GPoly]| vector_field_commutator(x, y, 0, 0);

    let mut torsion = Vec::new();
    let mut brackets = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let (x, y) = (coord(i), coord(j));
            let (nx, ny) = (apply_matrix(n, &x), apply_matrix(n, &y));
            let xy = br(&x, &y);
            let mixed = &br(&nx, &y)
                .iter()
                .zip(br(&x, &ny))
                .map(|(a, b)| a + &b)
                .collect::<Vec<_>>();
            let t = sub_fields(&br(&nx, &ny), &apply_matrix(n, mixed));
            let t: Vec<GPoly> = t
                .iter()
                .zip(apply_matrix(n, &apply_matrix(n, &xy)))
                .map(|(a, b)| a + &b)
                .collect();
            if t.iter().any(|c| !c.is_zero()) {
                torsion.push(Finding {
                    identity: "nijenhuis torsion",
                    at: format!("({}, {})", base.var(i).name, base.var(j).name),
                    residual: render_field(base, &t),
                });
            }
            brackets.push(((i, j), sub_fields(mixed, &apply_matrix(n, &xy))));
        }
    }
    let tangent = tangent_algebroid(base)?;
    let anchor: Vec<Vec<GPoly>> = (0..m).map(|a| (0..m).map(|i| n[i][a].clone()).collect()).collect();
    let deformed = AlgebroidSpec::new(base, tangent.fibers().to_vec(), anchor, brackets)?;
    let deformed_report = deformed.check();

    // N π^# and π^# N* as matrices indexed [i][a]
    let mut sharp = Vec::new();
    let mut n_pi = vec![vec![GPoly::zero(base); m]; m];
    for i in 0..m {
        for a in 0..m {
            let mut left = GPoly::zero(base);
            let mut right = GPoly::zero(base);
            for k in 0..m {
                left = &left + &(&n[i][k] * &pi[k][a]);
                right = &right + &(&pi[i][k] * &n[a][k]);
            }
            let res = &left - &right;
            if !res.is_zero() {
                sharp.push(Finding {
                    identity: "N pi# = pi# N*",
                    at: format!("({}, {})", base.var(i).name, base.var(a).name),
                    residual: res,
                });
            }
            n_pi[i][a] = left;
        }
    }

    let koszul = if check_bivector_matrix(base, &n_pi).is_ok() {
        let k_npi = koszul_structure(base, &n_pi)?;
        let n_star = |alpha: &Section| -> Section {
            (0..m)
                .map(|b| (0..m).fold(GPoly::zero(base), |acc, a| &acc + &(&alpha[a] * &n[a][b])))
                .collect()
        };
        let mut out = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                let (da, db) = (koszul_pi.basis_section(a), koszul_pi.basis_section(b));
                let lhs = k_npi.section_bracket(&da, &db);
                let t1 = koszul_pi.section_bracket(&n_star(&da), &db);
                let t2 = koszul_pi.section_bracket(&da, &n_star(&db));
                let t3 = n_star(&koszul_pi.section_bracket(&da, &db));
                let res: Section = (0..m).map(|c| &(&(&lhs[c] - &t1[c]) - &t2[c]) + &t3[c]).collect();
                if res.iter().any(|c| !c.is_zero()) {
                    out.push(Finding {
                        identity: "koszul bracket of N pi",
                        at: format!("(d{}, d{})", base.var(a).name, base.var(b).name),
                        residual: koszul_pi.section_to_poly(&res),
                    });
                }
            }
        }
        Some(out)
    } else {
        None
    };

    let mut report = NijenhuisReport {
        torsion,
        deformed,
        deformed_report,
        sharp,
        koszul,
        bialgebroid: None,
    };
    if report.passed() {
        let b = BialgebroidSpec::new(report.deformed.clone(), koszul_pi)?;
        report.bialgebroid = Some(b.check());
    }
    Ok(report)
}

/// T*[2]V[1] over a point for fibers of the given degrees (coordinates
/// ξ^a of degree 1 + |e_a|).
pub fn point_chart(fibers: &[Fiber]) -> Result<SymplecticChart> {
    let v1 = Chart::new(
        fibers
            .iter()
            .map(|f| GVar::fiber(f.coord.clone(), 1 + f.degree))
            .collect(),
    )?;
    SymplecticChart::with_momenta(&v1, 2, fibers.iter().map(|f| f.momentum.clone()).collect())
}

/// Counts (ξ's, ξ*'s) in a monomial on a point chart.
pub fn arity(sc: &SymplecticChart, m: &crate::graded::Monomial) -> (u32, u32) {
    let c = sc.chart();
    (
        m.count_in(&c.indices_of_kind(VarKind::Fiber)),
        m.count_in(&c.indices_of_kind(VarKind::MomentumFiber)),
    )
}

/// Sums (m, n) components into χ after checking that each term of the
/// (m, n) component has m ξ's, n ξ*'s and degree 3.
pub fn linfty_bialgebra(sc: &SymplecticChart, table: &[((u32, u32), GPoly)]) -> Result<GPoly> {
    if !sc.base().indices_of_kind(VarKind::Base).is_empty() {
        return Err(Error::Invalid("L∞-bialgebras live over a point".into()));
    }
    let mut chi = GPoly::zero(sc.chart());
    for ((m, n), comp) in table {
        if *m == 0 || *n == 0 {
            return Err(Error::Invalid(format!("component ({m},{n}) needs m, n ≥ 1")));
        }
        if !crate::graded::same_chart(comp.chart(), sc.chart()) {
            return Err(Error::ChartMismatch);
        }
        for (mono, _) in comp.terms() {
            if arity(sc, mono) != (*m, *n) {
                return Err(Error::Invalid(format!(
                    "component ({m},{n}) has a term of the wrong arity"
                )));
            }
        }
        if !comp.is_homogeneous_of(3) {
            return Err(Error::DegreeMismatch {
                var: format!("component ({m},{n})"),
                expected: 3,
                found: format!("{:?}", comp.degrees()),
            });
        }
        chi = &chi + comp;
    }
    Ok(chi)
}

/// {χ,χ} split by arity.
pub fn mc_components(sc: &SymplecticChart, chi: &GPoly) -> std::collections::BTreeMap<(u32, u32), GPoly> {
    let cc = sc.bracket_context().self_bracket(chi);
    let mut out = std::collections::BTreeMap::new();
    for (mono, c) in cc.terms() {
        out.entry(arity(sc, mono))
            .or_insert_with(|| GPoly::zero(sc.chart()))
            .add_term(mono.clone(), c.clone());
    }
    out
}
