//! Resolution of a [`SpecFile`] into engine objects, with positions for
//! every name and expression that fails to resolve.

use std::collections::{BTreeMap, HashMap};

use indexmap::IndexMap;
use lbialg::algebroid::{AlgebroidSpec, Fiber};
use lbialg::bialgebroid::morphism::MorphismTable;
use lbialg::bialgebroid::BialgebroidSpec;
use lbialg::constructions::point_chart;
use lbialg::graded::{same_chart, Chart, ChartRef, Coeff, GPoly, GVar, PolyMap, VarKind};
use lbialg::symplectic::SymplecticChart;

use crate::error::{CliError, CliResult, Loc};
use crate::spec::{AlgebroidDecl, ConstructDecl, MorphismDecl, Nested, SpecFile, Str, Table};

pub const DEFAULT_TRUNC: u32 = 4;

/// Structure functions keyed by an ordered pair of fiber positions.
type BracketTable = Vec<((usize, usize), Vec<GPoly>)>;

#[derive(Clone, Debug)]
pub struct Ham {
    pub sc: SymplecticChart,
    pub chi: GPoly,
}

#[derive(Clone, Debug)]
pub enum MorphismKind {
    Semistrict(PolyMap),
    Full(MorphismTable),
}

#[derive(Clone, Debug)]
pub struct Morphism {
    pub v: AlgebroidSpec,
    pub w: AlgebroidSpec,
    pub chi_v: GPoly,
    pub chi_w: GPoly,
    pub kind: MorphismKind,
}

#[derive(Clone, Debug)]
pub struct BracketItem {
    pub sc: SymplecticChart,
    pub f: GPoly,
    pub g: GPoly,
}

#[derive(Clone, Debug)]
pub struct CeItem {
    pub algebroid: String,
    pub form: Option<GPoly>,
    pub random: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct SchoutenItem {
    pub algebroid: String,
    pub p: GPoly,
    pub q: GPoly,
}

#[derive(Clone, Debug)]
pub struct BvItem {
    pub algebroid: String,
    pub element: Option<GPoly>,
}

#[derive(Clone, Debug)]
pub struct LiftItem {
    pub cotangent: String,
    pub field: Vec<GPoly>,
}

#[derive(Clone, Debug)]
pub enum Construct {
    Tangent {
        base: ChartRef,
    },
    Koszul {
        base: ChartRef,
        pi: Vec<Vec<GPoly>>,
    },
    Action {
        base: ChartRef,
        fibers: Vec<Fiber>,
        constants: Vec<((usize, usize), Vec<Coeff>)>,
        action: Vec<Vec<GPoly>>,
    },
    PoissonBialgebroid {
        base: ChartRef,
        pi: Vec<Vec<GPoly>>,
    },
    Triangular {
        algebroid: String,
        r: GPoly,
    },
    Nijenhuis {
        base: ChartRef,
        n: Vec<Vec<GPoly>>,
        pi: Vec<Vec<GPoly>>,
    },
    LinftyBialgebra {
        sc: SymplecticChart,
        table: Vec<((u32, u32), GPoly)>,
    },
}

impl Construct {
    pub fn kind(&self) -> &'static str {
        match self {
            Construct::Tangent { .. } => "tangent",
            Construct::Koszul { .. } => "koszul",
            Construct::Action { .. } => "action",
            Construct::PoissonBialgebroid { .. } => "poisson-bialgebroid",
            Construct::Triangular { .. } => "triangular",
            Construct::Nijenhuis { .. } => "nijenhuis",
            Construct::LinftyBialgebra { .. } => "linfty-bialgebra",
        }
    }
}

pub const CONSTRUCTIONS: [&str; 7] = [
    "tangent",
    "koszul",
    "action",
    "poisson-bialgebroid",
    "triangular",
    "nijenhuis",
    "linfty-bialgebra",
];

/// A fully resolved spec file. Maps keep declaration order.
#[derive(Clone, Debug, Default)]
pub struct Model {
    pub trunc: u32,
    pub charts: IndexMap<String, ChartRef>,
    pub cotangents: IndexMap<String, SymplecticChart>,
    pub algebroids: IndexMap<String, AlgebroidSpec>,
    pub bialgebroids: IndexMap<String, BialgebroidSpec>,
    pub hamiltonians: IndexMap<String, Ham>,
    pub morphisms: IndexMap<String, Morphism>,
    pub brackets: IndexMap<String, BracketItem>,
    pub ce: IndexMap<String, CeItem>,
    pub schouten: IndexMap<String, SchoutenItem>,
    pub bv: IndexMap<String, BvItem>,
    pub lifts: IndexMap<String, LiftItem>,
    pub constructs: IndexMap<String, Construct>,
}

struct Ctx<'a> {
    text: &'a str,
}

impl Ctx<'_> {
    fn loc(&self, s: &Str) -> Loc {
        Loc::of_offset(self.text, s.span().start)
    }

    /// Position inside a quoted string value.
    fn inner(&self, s: &Str, offset: usize) -> Loc {
        Loc::of_offset(self.text, s.span().start + 1 + offset)
    }

    fn invalid(&self, s: &Str, message: impl Into<String>) -> CliError {
        CliError::Invalid {
            loc: Some(self.loc(s)),
            message: message.into(),
        }
    }

    fn engine(&self, s: &Str, e: lbialg::Error) -> CliError {
        match e {
            lbialg::Error::Parse { pos, expected } => CliError::Parse {
                loc: Some(self.inner(s, pos)),
                message: format!("expected {expected}"),
            },
            lbialg::Error::UnknownVariable(name) => CliError::UndeclaredVariable { loc: self.loc(s), name },
            e @ lbialg::Error::DegreeMismatch { .. } => CliError::Degree {
                loc: self.loc(s),
                message: e.to_string(),
            },
            e => self.invalid(s, e.to_string()),
        }
    }

    fn expr(&self, s: &Str, chart: &ChartRef) -> CliResult<GPoly> {
        lbialg::graded::parse_poly(s.get_ref(), chart).map_err(|e| self.engine(s, e))
    }

    fn constant(&self, s: &Str) -> CliResult<Coeff> {
        let p = self.expr(s, &Chart::point())?;
        Ok(p.constant_term())
    }

    /// `"name:degree"`.
    fn var_decl(&self, s: &Str) -> CliResult<(String, i32)> {
        let bad = || CliError::Parse {
            loc: Some(self.inner(s, 0)),
            message: format!("expected `name:degree`, found `{}`", s.get_ref()),
        };
        let (name, deg) = s.get_ref().rsplit_once(':').ok_or_else(bad)?;
        let name = name.trim();
        let valid = !name.is_empty()
            && name.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '*');
        if !valid {
            return Err(bad());
        }
        let deg = deg.trim().parse().map_err(|_| bad())?;
        Ok((name.to_string(), deg))
    }

    /// `"(a,b)"` with a declared no later than b.
    fn pair(&self, s: &Str, names: &[String]) -> CliResult<(usize, usize)> {
        let raw = s.get_ref().trim();
        let bad = || CliError::Parse {
            loc: Some(self.inner(s, 0)),
            message: format!("expected a pair `(a,b)`, found `{raw}`"),
        };
        let body = raw
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (a, b) = body.split_once(',').ok_or_else(bad)?;
        let index = |n: &str| {
            names
                .iter()
                .position(|m| m == n.trim())
                .ok_or_else(|| CliError::UndeclaredVariable {
                    loc: self.loc(s),
                    name: n.trim().to_string(),
                })
        };
        let (i, j) = (index(a)?, index(b)?);
        if i > j {
            let (lo, hi) = (&names[j], &names[i]);
            return Err(self.invalid(
                s,
                format!("pair `{raw}` must be written in canonical order `({lo},{hi})`"),
            ));
        }
        Ok((i, j))
    }

    fn index_in(&self, s: &Str, names: &[String]) -> CliResult<usize> {
        names
            .iter()
            .position(|n| n == s.get_ref())
            .ok_or_else(|| CliError::UndeclaredVariable {
                loc: self.loc(s),
                name: s.get_ref().clone(),
            })
    }
}

fn names(chart: &ChartRef) -> Vec<String> {
    chart.vars().iter().map(|v| v.name.clone()).collect()
}

fn lookup<'m, T>(ctx: &Ctx, map: &'m IndexMap<String, T>, s: &Str, what: &str) -> CliResult<&'m T> {
    map.get(s.get_ref())
        .ok_or_else(|| ctx.invalid(s, format!("no {what} named `{}`", s.get_ref())))
}

fn required<'d, T>(ctx: &Ctx, kind: &Str, v: &'d Option<T>, field: &str) -> CliResult<&'d T> {
    v.as_ref()
        .ok_or_else(|| ctx.invalid(kind, format!("construction `{}` needs `{field}`", kind.get_ref())))
}

impl Model {
    pub fn load(text: &str, file: &SpecFile) -> CliResult<Model> {
        let ctx = Ctx { text };
        let mut m = Model {
            trunc: file.trunc.unwrap_or(DEFAULT_TRUNC),
            ..Model::default()
        };
        for (name, decl) in &file.chart {
            let mut vars = Vec::new();
            for v in &decl.vars {
                let (n, d) = ctx.var_decl(v)?;
                vars.push(GVar::base(n, d));
            }
            let chart = Chart::new(vars).map_err(|e| match decl.vars.first() {
                Some(s) => ctx.engine(s, e),
                None => CliError::Invalid {
                    loc: None,
                    message: e.to_string(),
                },
            })?;
            m.charts.insert(name.clone(), chart);
        }
        for (name, decl) in &file.cotangent {
            let base = lookup(&ctx, &m.charts, &decl.chart, "chart")?;
            let sc = match &decl.momenta {
                None => SymplecticChart::shifted_cotangent(base, decl.shift),
                Some(ps) => {
                    if ps.len() != base.len() {
                        return Err(ctx.invalid(&decl.chart, "one momentum per chart variable required"));
                    }
                    let mut names = Vec::new();
                    for (p, v) in ps.iter().zip(base.vars()) {
                        let (n, d) = ctx.var_decl(p)?;
                        if d != decl.shift - v.degree {
                            return Err(CliError::Degree {
                                loc: ctx.loc(p),
                                message: format!(
                                    "momentum `{n}` of `{}` must have degree {} - {} = {}, not {d}",
                                    v.name,
                                    decl.shift,
                                    v.degree,
                                    decl.shift - v.degree
                                ),
                            });
                        }
                        names.push(n);
                    }
                    SymplecticChart::with_momenta(base, decl.shift, names)
                }
            }
            .map_err(|e| ctx.engine(&decl.chart, e))?;
            m.cotangents.insert(name.clone(), sc);
        }
        for (name, decl) in &file.algebroid {
            let spec = m.algebroid(&ctx, name, decl)?;
            m.algebroids.insert(name.clone(), spec);
        }
        for (name, decl) in &file.bialgebroid {
            let v = lookup(&ctx, &m.algebroids, &decl.v, "algebroid")?;
            let d = lookup(&ctx, &m.algebroids, &decl.dual, "algebroid")?;
            let b = BialgebroidSpec::new(v.clone(), d.clone()).map_err(|e| ctx.engine(&decl.dual, e))?;
            m.bialgebroids.insert(name.clone(), b);
        }
        for (name, decl) in &file.hamiltonian {
            let sc = m.symplectic_of(&ctx, &decl.on)?;
            let chi = ctx.expr(&decl.expr, sc.chart())?;
            m.hamiltonians.insert(name.clone(), Ham { sc, chi });
        }
        for (name, decl) in &file.morphism {
            let mo = m.morphism(&ctx, decl)?;
            m.morphisms.insert(name.clone(), mo);
        }
        for (name, decl) in &file.bracket {
            let sc = m.symplectic_of(&ctx, &decl.on)?;
            let f = ctx.expr(&decl.f, sc.chart())?;
            let g = ctx.expr(&decl.g, sc.chart())?;
            m.brackets.insert(name.clone(), BracketItem { sc, f, g });
        }
        for (name, decl) in &file.ce {
            let spec = lookup(&ctx, &m.algebroids, &decl.algebroid, "algebroid")?;
            let form = decl.form.as_ref().map(|f| ctx.expr(f, spec.v1_chart())).transpose()?;
            m.ce.insert(
                name.clone(),
                CeItem {
                    algebroid: decl.algebroid.get_ref().clone(),
                    form,
                    random: decl.random,
                },
            );
        }
        for (name, decl) in &file.schouten {
            let spec = lookup(&ctx, &m.algebroids, &decl.algebroid, "algebroid")?;
            let c = spec.multivector_chart();
            let item = SchoutenItem {
                algebroid: decl.algebroid.get_ref().clone(),
                p: ctx.expr(&decl.p, c)?,
                q: ctx.expr(&decl.q, c)?,
            };
            m.schouten.insert(name.clone(), item);
        }
        for (name, decl) in &file.bv {
            let spec = lookup(&ctx, &m.algebroids, &decl.algebroid, "algebroid")?;
            let element = decl
                .element
                .as_ref()
                .map(|e| ctx.expr(e, spec.multivector_chart()))
                .transpose()?;
            m.bv.insert(
                name.clone(),
                BvItem {
                    algebroid: decl.algebroid.get_ref().clone(),
                    element,
                },
            );
        }
        for (name, decl) in &file.lift {
            let sc = lookup(&ctx, &m.cotangents, &decl.on, "cotangent chart")?;
            let base = sc.base();
            let mut field = vec![GPoly::zero(base); base.len()];
            for (k, v) in &decl.field {
                let i = ctx.index_in(k, &names(base))?;
                field[i] = ctx.expr(v, base)?;
            }
            m.lifts.insert(
                name.clone(),
                LiftItem {
                    cotangent: decl.on.get_ref().clone(),
                    field,
                },
            );
        }
        for (name, decl) in &file.construct {
            let c = m.construct(&ctx, decl)?;
            m.constructs.insert(name.clone(), c);
        }
        Ok(m)
    }

    fn fibers(&self, ctx: &Ctx, decl: &[Str]) -> CliResult<Vec<Fiber>> {
        decl.iter()
            .map(|s| ctx.var_decl(s).map(|(n, d)| Fiber::new(n, d)))
            .collect()
    }

    fn algebroid(&self, ctx: &Ctx, name: &str, decl: &AlgebroidDecl) -> CliResult<AlgebroidSpec> {
        let base = match &decl.base {
            Some(b) => lookup(ctx, &self.charts, b, "chart")?.clone(),
            None => Chart::point(),
        };
        let mut fibers = self.fibers(ctx, &decl.fibers)?;
        if let Some(coords) = &decl.coords {
            if coords.len() != fibers.len() {
                return Err(CliError::Invalid {
                    loc: coords.first().map(|s| ctx.loc(s)),
                    message: format!("algebroid `{name}`: one coordinate per fiber required"),
                });
            }
            for (f, s) in fibers.iter_mut().zip(coords) {
                let (n, d) = ctx.var_decl(s)?;
                if d != 1 + f.degree {
                    return Err(CliError::Degree {
                        loc: ctx.loc(s),
                        message: format!(
                            "coordinate `{n}` of `{}` must have degree 1 + {} = {}, not {d}",
                            f.label,
                            f.degree,
                            1 + f.degree
                        ),
                    });
                }
                f.coord = n;
                f.momentum = format!("{}*", f.coord);
            }
        }
        if let Some(momenta) = &decl.momenta {
            if momenta.len() != fibers.len() {
                return Err(CliError::Invalid {
                    loc: momenta.first().map(|s| ctx.loc(s)),
                    message: format!("algebroid `{name}`: one momentum per fiber required"),
                });
            }
            for (f, s) in fibers.iter_mut().zip(momenta) {
                let (n, d) = ctx.var_decl(s)?;
                let q = 1 + f.degree;
                if d != 2 - q {
                    return Err(CliError::Degree {
                        loc: ctx.loc(s),
                        message: format!(
                            "momentum `{n}` of `{}` must have degree 2 - {q} = {}, not {d}",
                            f.coord,
                            2 - q
                        ),
                    });
                }
                f.momentum = n;
            }
        }
        let labels: Vec<String> = fibers.iter().map(|f| f.label.clone()).collect();
        let base_names = names(&base);
        let mut anchor = vec![vec![GPoly::zero(&base); base.len()]; fibers.len()];
        for (label, row) in &decl.anchor {
            let a = ctx.index_in(label, &labels)?;
            for (coord, val) in row {
                let i = ctx.index_in(coord, &base_names)?;
                anchor[a][i] = ctx.expr(val, &base)?;
            }
        }
        let brackets = self.bracket_table(ctx, &decl.bracket, &labels, &base)?;
        let at = decl.fibers.first().or(decl.base.as_ref());
        AlgebroidSpec::new(&base, fibers, anchor, brackets).map_err(|e| match at {
            Some(s) => match ctx.engine(s, e) {
                CliError::Invalid { loc, message } => CliError::Invalid {
                    loc,
                    message: format!("algebroid `{name}`: {message}"),
                },
                other => other,
            },
            None => CliError::Invalid {
                loc: None,
                message: format!("algebroid `{name}`: {e}"),
            },
        })
    }

    fn bracket_table(&self, ctx: &Ctx, table: &Nested, labels: &[String], base: &ChartRef) -> CliResult<BracketTable> {
        let mut out = Vec::new();
        for (pair, row) in table {
            let (a, b) = ctx.pair(pair, labels)?;
            let mut cs = vec![GPoly::zero(base); labels.len()];
            for (label, val) in row {
                let c = ctx.index_in(label, labels)?;
                cs[c] = ctx.expr(val, base)?;
            }
            out.push(((a, b), cs));
        }
        Ok(out)
    }

    fn symplectic_of(&self, ctx: &Ctx, s: &Str) -> CliResult<SymplecticChart> {
        let n = s.get_ref();
        if let Some(a) = self.algebroids.get(n) {
            return Ok(a.symplectic().clone());
        }
        if let Some(b) = self.bialgebroids.get(n) {
            return Ok(b.symplectic().clone());
        }
        if let Some(c) = self.cotangents.get(n) {
            return Ok(c.clone());
        }
        Err(ctx.invalid(s, format!("no algebroid, bialgebroid or cotangent chart named `{n}`")))
    }

    /// The algebroid V and its default χ for a morphism end.
    fn morphism_end(&self, ctx: &Ctx, s: &Str, chi: &Option<Str>) -> CliResult<(AlgebroidSpec, GPoly)> {
        let (spec, default) = if let Some(a) = self.algebroids.get(s.get_ref()) {
            (a.clone(), a.hamiltonian().clone())
        } else if let Some(b) = self.bialgebroids.get(s.get_ref()) {
            (b.v().clone(), b.assemble_chi())
        } else {
            return Err(ctx.invalid(s, format!("no algebroid or bialgebroid named `{}`", s.get_ref())));
        };
        let chi = match chi {
            None => default,
            Some(h) => {
                let ham = lookup(ctx, &self.hamiltonians, h, "hamiltonian")?;
                if !same_chart(ham.sc.chart(), spec.symplectic().chart()) {
                    return Err(ctx.invalid(h, format!("hamiltonian `{}` lives on another chart", h.get_ref())));
                }
                ham.chi.clone()
            }
        };
        Ok((spec, chi))
    }

    fn morphism(&self, ctx: &Ctx, decl: &MorphismDecl) -> CliResult<Morphism> {
        let (v, chi_v) = self.morphism_end(ctx, &decl.source, &decl.source_chi)?;
        let (w, chi_w) = self.morphism_end(ctx, &decl.target, &decl.target_chi)?;
        let w_names = names(w.v1_chart());
        let mut assigned = HashMap::new();
        for (k, val) in &decl.map {
            ctx.index_in(k, &w_names)?;
            assigned.insert(k.get_ref().clone(), ctx.expr(val, v.v1_chart())?);
        }
        let kind = match &decl.words {
            None => {
                let f = PolyMap::new(w.v1_chart(), v.v1_chart(), &assigned).map_err(|e| ctx.engine(&decl.target, e))?;
                MorphismKind::Semistrict(f)
            }
            Some(words) => {
                let fib = w.v1_chart().indices_of_kind(VarKind::Fiber);
                for (k, _) in &decl.map {
                    let i = w.v1_chart().require(k.get_ref()).map_err(|e| ctx.engine(k, e))?;
                    if fib.contains(&i) {
                        return Err(ctx.invalid(k, "full morphisms assign fiber coordinates through `words`"));
                    }
                }
                let mut table = BTreeMap::new();
                for (k, val) in words {
                    let mono = ctx.expr(k, w.v1_chart())?;
                    let word = match mono.terms().next() {
                        Some((m, c)) if mono.len() == 1 && *c == Coeff::from_integer(1.into()) => {
                            let mut word = Vec::new();
                            for (i, e) in m.exponents().iter().enumerate() {
                                if *e > 0 && !fib.contains(&i) {
                                    return Err(ctx.invalid(k, "words contain fiber coordinates only"));
                                }
                                let pos = fib.iter().position(|&f| f == i);
                                for _ in 0..*e {
                                    word.push(pos.expect("checked above"));
                                }
                            }
                            word
                        }
                        _ => return Err(ctx.invalid(k, "a word is a product of fiber coordinates")),
                    };
                    table.insert(word, ctx.expr(val, v.v1_chart())?);
                }
                let t = MorphismTable::new(w.v1_chart(), v.v1_chart(), &assigned, table)
                    .map_err(|e| ctx.engine(&decl.target, e))?;
                MorphismKind::Full(t)
            }
        };
        Ok(Morphism {
            v,
            w,
            chi_v,
            chi_w,
            kind,
        })
    }

    fn bivector(&self, ctx: &Ctx, base: &ChartRef, pi: &Table) -> CliResult<Vec<Vec<GPoly>>> {
        let n = base.len();
        let mut out = vec![vec![GPoly::zero(base); n]; n];
        for (pair, val) in pi {
            let (i, j) = ctx.pair(pair, &names(base))?;
            let v = ctx.expr(val, base)?;
            out[j][i] = -&v;
            out[i][j] = v;
        }
        Ok(out)
    }

    fn construct(&self, ctx: &Ctx, decl: &ConstructDecl) -> CliResult<Construct> {
        let kind = &decl.kind;
        let base = || -> CliResult<ChartRef> {
            let c = required(ctx, kind, &decl.chart, "chart")?;
            Ok(lookup(ctx, &self.charts, c, "chart")?.clone())
        };
        Ok(match kind.get_ref().as_str() {
            "tangent" => Construct::Tangent { base: base()? },
            "koszul" | "poisson-bialgebroid" => {
                let b = base()?;
                let pi = self.bivector(ctx, &b, required(ctx, kind, &decl.pi, "pi")?)?;
                if kind.get_ref() == "koszul" {
                    Construct::Koszul { base: b, pi }
                } else {
                    Construct::PoissonBialgebroid { base: b, pi }
                }
            }
            "action" => {
                let b = base()?;
                let fibers = self.fibers(ctx, required(ctx, kind, &decl.fibers, "fibers")?)?;
                let labels: Vec<String> = fibers.iter().map(|f| f.label.clone()).collect();
                let mut constants = Vec::new();
                for (pair, row) in required(ctx, kind, &decl.constants, "constants")? {
                    let ab = ctx.pair(pair, &labels)?;
                    let mut cs = vec![Coeff::from_integer(0.into()); labels.len()];
                    for (label, val) in row {
                        cs[ctx.index_in(label, &labels)?] = ctx.constant(val)?;
                    }
                    constants.push((ab, cs));
                }
                let mut action = vec![vec![GPoly::zero(&b); b.len()]; labels.len()];
                for (label, row) in required(ctx, kind, &decl.action, "action")? {
                    let a = ctx.index_in(label, &labels)?;
                    for (coord, val) in row {
                        action[a][ctx.index_in(coord, &names(&b))?] = ctx.expr(val, &b)?;
                    }
                }
                Construct::Action {
                    base: b,
                    fibers,
                    constants,
                    action,
                }
            }
            "triangular" => {
                let a = required(ctx, kind, &decl.algebroid, "algebroid")?;
                let spec = lookup(ctx, &self.algebroids, a, "algebroid")?;
                let r = ctx.expr(required(ctx, kind, &decl.r, "r")?, spec.multivector_chart())?;
                Construct::Triangular {
                    algebroid: a.get_ref().clone(),
                    r,
                }
            }
            "nijenhuis" => {
                let b = base()?;
                let pi = self.bivector(ctx, &b, required(ctx, kind, &decl.pi, "pi")?)?;
                let mut n = vec![vec![GPoly::zero(&b); b.len()]; b.len()];
                for (col, rows) in required(ctx, kind, &decl.n, "n")? {
                    let j = ctx.index_in(col, &names(&b))?;
                    for (row, val) in rows {
                        n[ctx.index_in(row, &names(&b))?][j] = ctx.expr(val, &b)?;
                    }
                }
                Construct::Nijenhuis { base: b, n, pi }
            }
            "linfty-bialgebra" => {
                let fibers = self.fibers(ctx, required(ctx, kind, &decl.fibers, "fibers")?)?;
                let sc = point_chart(&fibers).map_err(|e| ctx.engine(kind, e))?;
                let mut table = Vec::new();
                for (key, val) in required(ctx, kind, &decl.components, "components")? {
                    let (m, n) = arity_key(ctx, key)?;
                    table.push(((m, n), ctx.expr(val, sc.chart())?));
                }
                Construct::LinftyBialgebra { sc, table }
            }
            other => {
                return Err(ctx.invalid(
                    kind,
                    format!(
                        "unknown construction `{other}`; expected one of {}",
                        CONSTRUCTIONS.join(", ")
                    ),
                ))
            }
        })
    }
}

fn arity_key(ctx: &Ctx, s: &Str) -> CliResult<(u32, u32)> {
    let bad = || CliError::Parse {
        loc: Some(ctx.inner(s, 0)),
        message: format!("expected an arity `(m,n)`, found `{}`", s.get_ref()),
    };
    let body = s
        .get_ref()
        .trim()
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(bad)?;
    let (m, n) = body.split_once(',').ok_or_else(bad)?;
    Ok((
        m.trim().parse().map_err(|_| bad())?,
        n.trim().parse().map_err(|_| bad())?,
    ))
}
