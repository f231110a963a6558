//! Subcommand dispatch. Each subcommand walks the relevant section in
//! declaration order and turns engine verdicts into records.

use std::time::Instant;

use lbialg::algebroid::axioms::AlgebroidReport;
use lbialg::algebroid::connection::{is_flat, ConnectionSpec};
use lbialg::algebroid::AlgebroidSpec;
use lbialg::bialgebroid::linfty::check_linfty;
use lbialg::bialgebroid::morphism::{linfty_morphism_check, semistrict_check, InputResidual, MorphismTable};
use lbialg::bialgebroid::{legendre_lemma_check, BialgebroidReport};
use lbialg::constructions as cons;
use lbialg::graded::random::random_poly;
use lbialg::graded::GPoly;
use lbialg::symplectic::{check_poisson_map, legendre, vector_field_commutator, SymplecticChart};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, CliResult};
use crate::model::{Construct, Model, MorphismKind, CONSTRUCTIONS};
use crate::report::{Record, Report};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subcommand {
    CheckAlgebroid,
    CheckCoalgebroid,
    CheckBialgebroid,
    CheckLinfty,
    CheckMorphism { full: bool },
    Bracket,
    CeDiff,
    Schouten,
    Bv,
    Lift,
    Legendre,
    Construct(String),
}

impl Subcommand {
    pub fn name(&self) -> String {
        match self {
            Subcommand::CheckAlgebroid => "check-algebroid".into(),
            Subcommand::CheckCoalgebroid => "check-coalgebroid".into(),
            Subcommand::CheckBialgebroid => "check-bialgebroid".into(),
            Subcommand::CheckLinfty => "check-linfty".into(),
            Subcommand::CheckMorphism { full: false } => "check-morphism semistrict".into(),
            Subcommand::CheckMorphism { full: true } => "check-morphism full".into(),
            Subcommand::Bracket => "bracket".into(),
            Subcommand::CeDiff => "ce-diff".into(),
            Subcommand::Schouten => "schouten".into(),
            Subcommand::Bv => "bv".into(),
            Subcommand::Lift => "lift".into(),
            Subcommand::Legendre => "legendre".into(),
            Subcommand::Construct(n) => format!("construct {n}"),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    /// Overrides the file's `trunc`.
    pub trunc: Option<u32>,
    pub seed: u64,
    /// Attach elapsed times; off by default so reports stay byte-stable.
    pub timings: bool,
}

struct Run<'a> {
    model: &'a Model,
    opts: &'a Options,
    records: Vec<Record>,
}

pub fn run(sub: &Subcommand, model: &Model, opts: &Options) -> CliResult<Report> {
    let mut r = Run {
        model,
        opts,
        records: Vec::new(),
    };
    match sub {
        Subcommand::CheckAlgebroid => r.check_algebroid()?,
        Subcommand::CheckCoalgebroid => r.check_coalgebroid()?,
        Subcommand::CheckBialgebroid => r.check_bialgebroid()?,
        Subcommand::CheckLinfty => r.check_linfty()?,
        Subcommand::CheckMorphism { full } => r.check_morphism(*full)?,
        Subcommand::Bracket => r.bracket()?,
        Subcommand::CeDiff => r.ce_diff()?,
        Subcommand::Schouten => r.schouten()?,
        Subcommand::Bv => r.bv()?,
        Subcommand::Lift => r.lift()?,
        Subcommand::Legendre => r.legendre()?,
        Subcommand::Construct(name) => r.construct(name)?,
    }
    Ok(Report::new(sub.name(), r.records))
}

fn nonempty<T>(items: &indexmap::IndexMap<String, T>, section: &str) -> CliResult<()> {
    if items.is_empty() {
        return Err(CliError::MissingSection(format!("[{section}]")));
    }
    Ok(())
}

fn algebroid_records(item: &str, report: &AlgebroidReport, prefix: &str) -> Vec<Record> {
    let name = |s: &str| {
        if prefix.is_empty() {
            s.to_string()
        } else {
            format!("{prefix} {s}")
        }
    };
    vec![
        Record::zero(item, &name("{mu,mu} = 0"), "homological vector field", &report.mu_mu),
        Record::findings(
            item,
            &name("jacobi"),
            "Jacobi identity on basis sections",
            &report.jacobi,
        ),
        Record::findings(
            item,
            &name("leibniz"),
            "Leibniz rule on basis sections",
            &report.leibniz,
        ),
        Record::findings(item, &name("anchor"), "anchor is a bracket morphism", &report.anchor),
        Record::flag(
            item,
            &name("routes agree"),
            "{mu,mu} = 0 iff the algebroid axioms hold",
            report.routes_agree(),
        ),
    ]
}

fn bialgebroid_records(item: &str, report: &BialgebroidReport) -> Vec<Record> {
    let mut out = vec![Record::zero(
        item,
        "{chi,chi} = 0",
        "integrable Hamiltonian",
        &report.chi_chi,
    )];
    out.extend(algebroid_records(item, &report.v_report, "V"));
    out.extend(algebroid_records(item, &report.vdual_report, "V*"));
    out.push(Record::findings(
        item,
        "compatibility",
        "d_*[a,b] = [d_*a,b] + (-1)^(|a|-1) [a,d_*b]",
        &report.compat,
    ));
    out.push(Record::flag(
        item,
        "routes agree",
        "{chi,chi} = 0 iff both algebroids and the compatibility hold",
        report.routes_agree(),
    ));
    out
}

fn linfty_records(item: &str, sc: &SymplecticChart, chi: &GPoly) -> Vec<Record> {
    let rep = check_linfty(sc, chi);
    vec![
        Record::zero(
            item,
            "degree 3",
            "L-infinity bialgebroid Hamiltonian",
            &rep.wrong_degree,
        ),
        Record::zero(
            item,
            "vanishes on the zero section",
            "every term has a momentum",
            &rep.on_zero_section,
        ),
        Record::zero(
            item,
            "vanishes over the base",
            "every term has a fiber direction",
            &rep.over_base,
        ),
        Record::zero(item, "{chi,chi} = 0", "Maurer-Cartan equation", &rep.chi_chi),
    ]
}

fn input_residuals(item: &str, check: &str, anchor: &str, res: &[InputResidual]) -> Record {
    let mut r = Record::flag(item, check, anchor, res.is_empty());
    if !res.is_empty() {
        let parts: Vec<String> = res.iter().map(|x| format!("on {}: {}", x.input, x.residual)).collect();
        r.residual = Some(parts.join("; "));
        r.residual_terms = Some(res.iter().map(|x| x.residual.len()).sum());
    }
    r
}

/// e_S for every subset S of the basis, in binary order.
fn wedge_basis(spec: &AlgebroidSpec) -> Vec<GPoly> {
    let n = spec.rank();
    (0..1u32 << n)
        .map(|mask| spec.wedge_basis(&(0..n).filter(|a| mask >> a & 1 == 1).collect::<Vec<_>>()))
        .collect()
}

/// Degree of a homogeneous vector field Σ Q^i ∂_i.
fn field_degree(base: &lbialg::graded::ChartRef, q: &[GPoly]) -> Option<i32> {
    let mut deg = None;
    for (i, c) in q.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let d = c.degree()? - base.var(i).degree;
        if deg.is_some_and(|e| e != d) {
            return None;
        }
        deg = Some(d);
    }
    Some(deg.unwrap_or(0))
}

impl Run<'_> {
    fn cap(&self) -> u32 {
        self.opts.trunc.unwrap_or(self.model.trunc)
    }

    /// Runs `f` for one entry and stamps its records with the elapsed time.
    fn timed(&mut self, f: impl FnOnce(&mut Self) -> CliResult<()>) -> CliResult<()> {
        let start = self.records.len();
        let t = Instant::now();
        f(self)?;
        if self.opts.timings {
            let ms = t.elapsed().as_millis() as u64;
            for r in &mut self.records[start..] {
                r.elapsed_ms = Some(ms);
            }
        }
        Ok(())
    }

    fn check_algebroid(&mut self) -> CliResult<()> {
        nonempty(&self.model.algebroids, "algebroid")?;
        for (name, spec) in &self.model.algebroids {
            self.timed(|r| {
                r.records
                    .push(Record::value(name, "mu", "algebroid Hamiltonian", spec.hamiltonian()));
                r.records.extend(algebroid_records(name, &spec.check(), ""));
                Ok(())
            })?;
        }
        Ok(())
    }

    fn check_coalgebroid(&mut self) -> CliResult<()> {
        nonempty(&self.model.bialgebroids, "bialgebroid")?;
        for (name, b) in &self.model.bialgebroids {
            self.timed(|r| {
                let vdual = b.vdual();
                r.records.extend(algebroid_records(name, &vdual.check(), "V*"));
                let lemma = legendre_lemma_check(vdual)?;
                let mut rec = Record::zero(
                    name,
                    "L*(mu*) = quadratic form",
                    "Legendre pullback of the dual Hamiltonian is the Lie-Poisson form",
                    &(&lemma.pulled_back - &lemma.quadratic_form),
                );
                if lemma.holds() {
                    rec.value = Some(lemma.pulled_back.to_string());
                }
                r.records.push(rec);
                Ok(())
            })?;
        }
        Ok(())
    }

    fn check_bialgebroid(&mut self) -> CliResult<()> {
        nonempty(&self.model.bialgebroids, "bialgebroid")?;
        for (name, b) in &self.model.bialgebroids {
            self.timed(|r| {
                let report = b.check();
                r.records
                    .push(Record::value(name, "chi", "assembled Hamiltonian", &report.chi));
                r.records.extend(bialgebroid_records(name, &report));
                Ok(())
            })?;
        }
        Ok(())
    }

    fn check_linfty(&mut self) -> CliResult<()> {
        if self.model.hamiltonians.is_empty() && self.model.bialgebroids.is_empty() {
            return Err(CliError::MissingSection("[hamiltonian] or [bialgebroid]".into()));
        }
        for (name, h) in &self.model.hamiltonians {
            self.timed(|r| {
                r.records.extend(linfty_records(name, &h.sc, &h.chi));
                Ok(())
            })?;
        }
        for (name, b) in &self.model.bialgebroids {
            self.timed(|r| {
                r.records
                    .extend(linfty_records(name, b.symplectic(), &b.assemble_chi()));
                Ok(())
            })?;
        }
        Ok(())
    }

    fn check_morphism(&mut self, full: bool) -> CliResult<()> {
        let cap = self.cap();
        let entries: Vec<_> = self
            .model
            .morphisms
            .iter()
            .filter(|(_, m)| full || matches!(m.kind, MorphismKind::Semistrict(_)))
            .collect();
        if entries.is_empty() {
            let what = if full {
                "[morphism]"
            } else {
                "[morphism] with a full coordinate map"
            };
            return Err(CliError::MissingSection(what.into()));
        }
        for (name, m) in entries {
            self.timed(|r| {
                let (vsc, wsc) = (m.v.symplectic(), m.w.symplectic());
                match (&m.kind, full) {
                    (MorphismKind::Semistrict(f), false) => {
                        let rep = semistrict_check(vsc, wsc, f, &m.chi_v, &m.chi_w)?;
                        r.records.push(Record::value(
                            name,
                            "F*(chi_W)",
                            "pullback of the target Hamiltonian",
                            &rep.f_star,
                        ));
                        r.records.push(Record::zero(
                            name,
                            "F*(chi_W) = Phi*(chi_V)",
                            "semistrict morphism of Hamiltonians",
                            &rep.residual(),
                        ));
                    }
                    (kind, _) => {
                        let table = match kind {
                            MorphismKind::Semistrict(f) => MorphismTable::from_algebra_map(f, cap)?,
                            MorphismKind::Full(t) => t.clone(),
                        };
                        let res = linfty_morphism_check(vsc, wsc, &table, &m.chi_v, &m.chi_w, cap)?;
                        r.records.push(input_residuals(
                            name,
                            &format!("chi_V f* = f* chi_W (cap {cap})"),
                            "L-infinity morphism as an operator identity",
                            &res,
                        ));
                    }
                }
                Ok(())
            })?;
        }
        Ok(())
    }

    fn bracket(&mut self) -> CliResult<()> {
        nonempty(&self.model.brackets, "bracket")?;
        for (name, b) in &self.model.brackets {
            self.timed(|r| {
                let v = b.sc.canonical_bracket(&b.f, &b.g)?;
                r.records.push(Record::value(name, "{f,g}", "canonical bracket", v));
                Ok(())
            })?;
        }
        Ok(())
    }

    fn ce_diff(&mut self) -> CliResult<()> {
        nonempty(&self.model.ce, "ce")?;
        for (name, item) in &self.model.ce {
            let spec = &self.model.algebroids[&item.algebroid];
            self.timed(|r| {
                let v1 = spec.v1_chart();
                if let Some(form) = &item.form {
                    let d = spec.ce_differential(form);
                    r.records
                        .push(Record::value(name, "d(form)", "Chevalley-Eilenberg differential", &d));
                    r.records.push(Record::zero(
                        name,
                        "d^2(form) = 0",
                        "d is homological",
                        &spec.ce_differential(&d),
                    ));
                }
                let mut worst = GPoly::zero(v1);
                for i in 0..v1.len() {
                    let g = GPoly::var(v1, i);
                    let dd = spec.ce_differential(&spec.ce_differential(&g));
                    worst = &worst + &dd;
                }
                r.records
                    .push(Record::zero(name, "d^2 = 0 on generators", "d is homological", &worst));
                if let Some(n) = item.random {
                    let mut rng = ChaCha8Rng::seed_from_u64(r.opts.seed);
                    let all: Vec<usize> = (0..v1.len()).collect();
                    let mut failures = GPoly::zero(v1);
                    for _ in 0..n {
                        let phi = random_poly(&mut rng, v1, &all, 3, 3);
                        failures = &failures + &spec.ce_differential(&spec.ce_differential(&phi));
                    }
                    r.records.push(Record::zero(
                        name,
                        &format!("d^2 = 0 on {n} random forms (seed {})", r.opts.seed),
                        "d is homological",
                        &failures,
                    ));
                }
                Ok(())
            })?;
        }
        Ok(())
    }

    fn schouten(&mut self) -> CliResult<()> {
        nonempty(&self.model.schouten, "schouten")?;
        for (name, item) in &self.model.schouten {
            let spec = &self.model.algebroids[&item.algebroid];
            self.timed(|r| {
                let v = spec.schouten_bracket(&item.p, &item.q);
                r.records
                    .push(Record::value(name, "[p,q]", "Schouten bracket of the algebroid", v));
                Ok(())
            })?;
        }
        Ok(())
    }

    fn bv(&mut self) -> CliResult<()> {
        nonempty(&self.model.bv, "bv")?;
        for (name, item) in &self.model.bv {
            let spec = &self.model.algebroids[&item.algebroid];
            self.timed(|r| {
                let conn = ConnectionSpec::adjoint_on_top(spec);
                r.records.push(Record::flag(
                    name,
                    "adjoint connection on the top power is flat",
                    "flat connection on the top exterior power",
                    is_flat(spec, &conn)?,
                ));
                if let Some(w) = &item.element {
                    let d = spec.bv_operator(&conn, w)?;
                    r.records.push(Record::value(
                        name,
                        "Delta(element)",
                        "BV operator of the adjoint connection",
                        d,
                    ));
                }
                let basis = wedge_basis(spec);
                let mut gen = Vec::new();
                let mut square = Vec::new();
                for a in &basis {
                    let d = spec.bv_operator(&conn, a)?;
                    let dd = spec.bv_operator(&conn, &d)?;
                    if !dd.is_zero() {
                        square.push(lbialg::algebroid::axioms::Finding {
                            identity: "Delta^2",
                            at: a.to_string(),
                            residual: dd,
                        });
                    }
                    for b in &basis {
                        let res = spec.xu_residual(&conn, a, b)?;
                        if !res.is_zero() {
                            gen.push(lbialg::algebroid::axioms::Finding {
                                identity: "generator",
                                at: format!("({a}, {b})"),
                                residual: res,
                            });
                        }
                    }
                }
                r.records.push(Record::findings(
                    name,
                    "generates the Schouten bracket on basis pairs",
                    "[a,b] = (-1)^(|a|+1) (Delta(ab) - Delta(a)b - (-1)^|a| a Delta(b))",
                    &gen,
                ));
                r.records.push(Record::findings(
                    name,
                    "Delta^2 = 0 on the basis",
                    "BV operator squares to zero",
                    &square,
                ));
                Ok(())
            })?;
        }
        Ok(())
    }

    fn lift(&mut self) -> CliResult<()> {
        nonempty(&self.model.lifts, "lift")?;
        let items: Vec<_> = self.model.lifts.iter().collect();
        for (k, (name, item)) in items.iter().enumerate() {
            let sc = &self.model.cotangents[&item.cotangent];
            self.timed(|r| {
                let mu = sc.hamiltonian_lift(&item.field)?;
                r.records
                    .push(Record::value(name, "mu_Q", "Hamiltonian lift of a vector field", &mu));
                let d1 = field_degree(sc.base(), &item.field).ok_or_else(|| CliError::Invalid {
                    loc: None,
                    message: format!("lift `{name}`: field is not homogeneous"),
                })?;
                for (other, o) in &items[k..] {
                    if o.cotangent != item.cotangent {
                        continue;
                    }
                    let d2 = field_degree(sc.base(), &o.field).ok_or_else(|| CliError::Invalid {
                        loc: None,
                        message: format!("lift `{other}`: field is not homogeneous"),
                    })?;
                    let comm = vector_field_commutator(&item.field, &o.field, d1, d2);
                    let lhs = sc.canonical_bracket(&mu, &sc.hamiltonian_lift(&o.field)?)?;
                    let rhs = sc.hamiltonian_lift(&comm)?;
                    r.records.push(Record::zero(
                        name,
                        &format!("{{mu_Q, mu_R}} = mu_[Q,R] with R = {other}"),
                        "lift is a morphism of brackets",
                        &(&lhs - &rhs),
                    ));
                }
                Ok(())
            })?;
        }
        Ok(())
    }

    fn legendre(&mut self) -> CliResult<()> {
        nonempty(&self.model.algebroids, "algebroid")?;
        for (name, spec) in &self.model.algebroids {
            self.timed(|r| {
                let sc = spec.symplectic();
                let l = legendre(sc)?;
                let res = check_poisson_map(&l.pullback, sc.bracket_context(), l.dual.bracket_context())?;
                let mut rec = Record::flag(
                    name,
                    "L is a symplectomorphism",
                    "Legendre transform preserves the canonical bracket",
                    res.is_empty(),
                );
                if !res.is_empty() {
                    let parts: Vec<String> = res
                        .iter()
                        .map(|p| format!("({}, {}): {}", p.left, p.right, p.residual))
                        .collect();
                    rec.residual = Some(parts.join("; "));
                    rec.residual_terms = Some(res.iter().map(|p| p.residual.len()).sum());
                }
                r.records.push(rec);
                let lemma = legendre_lemma_check(spec)?;
                r.records.push(Record::value(
                    name,
                    "L*(mu) as a function of the dual momenta",
                    "Legendre pullback",
                    &lemma.pulled_back,
                ));
                r.records.push(Record::zero(
                    name,
                    "L*(mu) = quadratic form",
                    "Legendre pullback of an algebroid Hamiltonian is the Lie-Poisson form",
                    &(&lemma.pulled_back - &lemma.quadratic_form),
                ));
                Ok(())
            })?;
        }
        Ok(())
    }

    fn construct(&mut self, which: &str) -> CliResult<()> {
        let entries: Vec<_> = self
            .model
            .constructs
            .iter()
            .filter(|(name, c)| name.as_str() == which || c.kind() == which)
            .collect();
        if entries.is_empty() {
            if !CONSTRUCTIONS.contains(&which) && !self.model.constructs.is_empty() {
                return Err(CliError::Invalid {
                    loc: None,
                    message: format!(
                        "`{which}` is neither a construct entry nor one of {}",
                        CONSTRUCTIONS.join(", ")
                    ),
                });
            }
            return Err(CliError::MissingSection(format!("[construct] `{which}`")));
        }
        for (name, c) in entries {
            self.timed(|r| r.construct_one(name, c))?;
        }
        Ok(())
    }

    fn construct_one(&mut self, name: &str, c: &Construct) -> CliResult<()> {
        let push_algebroid = |r: &mut Self, spec: &AlgebroidSpec| {
            r.records
                .push(Record::value(name, "mu", "algebroid Hamiltonian", spec.hamiltonian()));
            r.records.extend(algebroid_records(name, &spec.check(), ""));
        };
        match c {
            Construct::Tangent { base } => {
                let spec = cons::tangent_algebroid(base)?;
                push_algebroid(self, &spec);
                let v1 = spec.v1_chart();
                for i in 0..spec.dim() {
                    let x = GPoly::var(v1, i);
                    self.records.push(Record::value(
                        name,
                        &format!("d({x})"),
                        "de Rham differential",
                        spec.ce_differential(&x),
                    ));
                }
            }
            Construct::Koszul { base, pi } => match cons::koszul_algebroid(base, pi) {
                Ok(spec) => push_algebroid(self, &spec),
                Err(e @ lbialg::Error::NotPoisson(_)) => {
                    self.records
                        .push(Record::failed(name, "pi is Poisson", "[pi,pi] = 0", e))
                }
                Err(e) => return Err(e.into()),
            },
            Construct::Action {
                base,
                fibers,
                constants,
                action,
            } => match cons::action_algebroid(base, fibers.clone(), constants, action.clone()) {
                Ok(spec) => push_algebroid(self, &spec),
                Err(e @ lbialg::Error::NotLieAlgebra(_)) => self.records.push(Record::failed(
                    name,
                    "constants form a Lie algebra",
                    "Jacobi identity of the acting algebra",
                    e,
                )),
                Err(e) => return Err(e.into()),
            },
            Construct::PoissonBialgebroid { base, pi } => match cons::poisson_bialgebroid(base, pi) {
                Ok(pb) => {
                    self.records
                        .push(Record::value(name, "chi", "cotangent bialgebroid Hamiltonian", &pb.chi));
                    self.records.extend(bialgebroid_records(name, &pb.spec.check()));
                    self.records.extend(linfty_records(name, pb.spec.symplectic(), &pb.chi));
                }
                Err(e @ lbialg::Error::NotPoisson(_)) => {
                    self.records
                        .push(Record::failed(name, "pi is Poisson", "[pi,pi] = 0", e))
                }
                Err(e) => return Err(e.into()),
            },
            Construct::Triangular { algebroid, r } => {
                let spec = &self.model.algebroids[algebroid];
                match cons::triangular(spec, r) {
                    Ok(t) => {
                        self.records
                            .push(Record::value(name, "chi", "mu + L*(alpha(r))", &t.chi));
                        self.records.push(Record::zero(
                            name,
                            "L*(alpha(r)) = {L*(r), mu}",
                            "triangular cobracket is Hamiltonian",
                            &t.self_check_residual(),
                        ));
                        let profile: Vec<String> = t.profile.iter().map(|(p, f)| format!("({p},{f})")).collect();
                        let mut rec = Record::flag(
                            name,
                            "no higher mixed operations",
                            "(momenta, fibers) profile of chi",
                            t.no_higher_mixed(),
                        );
                        rec.value = Some(profile.join(" "));
                        self.records.push(rec);
                        self.records.extend(linfty_records(name, spec.symplectic(), &t.chi));
                    }
                    Err(e @ lbialg::Error::NotTriangular(_)) => {
                        self.records
                            .push(Record::failed(name, "r is triangular", "[r,r] = 0", e))
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            Construct::Nijenhuis { base, n, pi } => match cons::nijenhuis_check(base, n, pi) {
                Ok(rep) => {
                    self.records.push(Record::findings(
                        name,
                        "torsion",
                        "Nijenhuis torsion vanishes",
                        &rep.torsion,
                    ));
                    self.records
                        .extend(algebroid_records(name, &rep.deformed_report, "TM_N"));
                    self.records.push(Record::findings(
                        name,
                        "N pi# = pi# N*",
                        "compatibility of N and pi",
                        &rep.sharp,
                    ));
                    match &rep.koszul {
                        Some(k) => self.records.push(Record::findings(
                            name,
                            "Magri-Morosi concomitant",
                            "Koszul brackets of pi and N pi are compatible",
                            k,
                        )),
                        None => self.records.push(Record::failed(
                            name,
                            "Magri-Morosi concomitant",
                            "Koszul brackets of pi and N pi are compatible",
                            "N pi is not a bivector",
                        )),
                    }
                    if let Some(b) = &rep.bialgebroid {
                        self.records.extend(bialgebroid_records(name, b));
                    }
                }
                Err(e @ lbialg::Error::NotPoisson(_)) => {
                    self.records
                        .push(Record::failed(name, "pi is Poisson", "[pi,pi] = 0", e))
                }
                Err(e) => return Err(e.into()),
            },
            Construct::LinftyBialgebra { sc, table } => {
                let chi = cons::linfty_bialgebra(sc, table)?;
                self.records
                    .push(Record::value(name, "chi", "sum of the (m,n) components", &chi));
                let comps = cons::mc_components(sc, &chi);
                self.records.push(Record::flag(
                    name,
                    "{chi,chi} = 0",
                    "Maurer-Cartan equation",
                    comps.is_empty(),
                ));
                for ((m, n), res) in &comps {
                    let label = match (m, n) {
                        (3, 1) => " (Jacobi)",
                        (1, 3) => " (co-Jacobi)",
                        (2, 2) => " (cocycle)",
                        _ => "",
                    };
                    self.records.push(Record::zero(
                        name,
                        &format!("component ({m},{n}){label}"),
                        "weight component of {chi,chi}",
                        res,
                    ));
                }
            }
        }
        Ok(())
    }
}
