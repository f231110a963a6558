//! V-connections, curvature, torsion and the BV operator of a connection
//! on the top exterior power.

use super::{AlgebroidSpec, Section};
use crate::error::{Error, Result};
use crate::graded::{int, same_chart, GPoly};

/// ∇_{e_a} ε_α = Σ_β Γ^β_{aα} ε_β on a bundle E of rank `rank` over the
/// base of an algebroid; `gamma[a][alpha][beta]` is Γ^β_{aα}.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionSpec {
    pub rank: usize,
    pub gamma: Vec<Vec<Vec<GPoly>>>,
}

impl ConnectionSpec {
    /// A connection on a line bundle: ∇_{e_a} ε = Γ_a ε.
    pub fn line(gamma: Vec<GPoly>) -> ConnectionSpec {
        ConnectionSpec {
            rank: 1,
            gamma: gamma.into_iter().map(|g| vec![vec![g]]).collect(),
        }
    }

    pub fn flat_trivial(spec: &AlgebroidSpec, rank: usize) -> ConnectionSpec {
        let z = GPoly::zero(spec.base());
        ConnectionSpec {
            rank,
            gamma: vec![vec![vec![z; rank]; rank]; spec.rank()],
        }
    }

    /// The adjoint action on ∧^top V: Γ_a = tr ad_{e_a} = Σ_c C^c_{ac}.
    pub fn adjoint_on_top(spec: &AlgebroidSpec) -> ConnectionSpec {
        let gamma = (0..spec.rank())
            .map(|a| {
                let mut g = GPoly::zero(spec.base());
                for c in 0..spec.rank() {
                    g = &g + spec.structure(a, c, c);
                }
                g
            })
            .collect();
        ConnectionSpec::line(gamma)
    }

    /// ∇_{e_a} e_b = Σ_c C^c_{ab} e_c, a connection on V itself.
    pub fn adjoint_on_fiber(spec: &AlgebroidSpec) -> ConnectionSpec {
        let r = spec.rank();
        ConnectionSpec {
            rank: r,
            gamma: (0..r)
                .map(|a| (0..r).map(|b| spec.basis_bracket(a, b)).collect())
                .collect(),
        }
    }

    fn validate(&self, spec: &AlgebroidSpec) -> Result<()> {
        if self.gamma.len() != spec.rank()
            || self
                .gamma
                .iter()
                .any(|m| m.len() != self.rank || m.iter().any(|row| row.len() != self.rank))
        {
            return Err(Error::Invalid("connection coefficients have the wrong shape".into()));
        }
        if self
            .gamma
            .iter()
            .flatten()
            .flatten()
            .any(|g| !same_chart(g.chart(), spec.base()))
        {
            return Err(Error::ChartMismatch);
        }
        if spec.fibers().iter().any(|f| f.degree != 0) {
            return Err(Error::Invalid(
                "connections are supported for ungraded fibers only".into(),
            ));
        }
        Ok(())
    }

    /// ∇_X s for X = Σ f^a e_a and s = Σ s^α ε_α.
    pub fn covariant(&self, spec: &AlgebroidSpec, x: &Section, s: &[GPoly]) -> Vec<GPoly> {
        let mut out = vec![GPoly::zero(spec.base()); self.rank];
        for (a, f) in x.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let ea = spec.basis_section(a);
            for (alpha, sa) in s.iter().enumerate() {
                out[alpha] = &out[alpha] + &(f * &spec.rho(&ea, sa));
                for (beta, o) in out.iter_mut().enumerate() {
                    let g = &self.gamma[a][alpha][beta];
                    if !g.is_zero() {
                        *o = &*o + &(&(f * sa) * g);
                    }
                }
            }
        }
        out
    }
}

/// R(e_a, e_b) as a matrix: column α holds R(e_a,e_b)ε_α.
pub fn curvature(spec: &AlgebroidSpec, conn: &ConnectionSpec, a: usize, b: usize) -> Result<Vec<Vec<GPoly>>> {
    conn.validate(spec)?;
    let (xa, xb) = (spec.basis_section(a), spec.basis_section(b));
    let xab = spec.section_bracket(&xa, &xb);
    let mut cols = Vec::with_capacity(conn.rank);
    for alpha in 0..conn.rank {
        let mut eps = vec![GPoly::zero(spec.base()); conn.rank];
        eps[alpha] = GPoly::one(spec.base());
        let ab = conn.covariant(spec, &xa, &conn.covariant(spec, &xb, &eps));
        let ba = conn.covariant(spec, &xb, &conn.covariant(spec, &xa, &eps));
        let br = conn.covariant(spec, &xab, &eps);
        cols.push(ab.iter().zip(&ba).zip(&br).map(|((p, q), r)| &(p - q) - r).collect());
    }
    Ok(cols)
}

pub fn is_flat(spec: &AlgebroidSpec, conn: &ConnectionSpec) -> Result<bool> {
    for a in 0..spec.rank() {
        for b in a + 1..spec.rank() {
            if curvature(spec, conn, a, b)?.iter().flatten().any(|g| !g.is_zero()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// T(e_a, e_b) = ∇_{e_a} e_b − ∇_{e_b} e_a − [e_a, e_b] for a connection on V.
pub fn torsion(spec: &AlgebroidSpec, conn: &ConnectionSpec, a: usize, b: usize) -> Result<Section> {
    conn.validate(spec)?;
    if conn.rank != spec.rank() {
        return Err(Error::Invalid("torsion needs a connection on V".into()));
    }
    let (xa, xb) = (spec.basis_section(a), spec.basis_section(b));
    let p = conn.covariant(spec, &xa, &xb);
    let q = conn.covariant(spec, &xb, &xa);
    let r = spec.section_bracket(&xa, &xb);
    Ok(p.iter().zip(&q).zip(&r).map(|((p, q), r)| &(p - q) - r).collect())
}

/// (−1)^{p(p−1)/2}
fn reversal(p: usize) -> crate::graded::Coeff {
    int(if (p * p.saturating_sub(1) / 2) % 2 == 1 { -1 } else { 1 })
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

impl AlgebroidSpec {
    /// Multivector e_{s1} ⋯ e_{sk}.
    pub fn wedge_basis(&self, s: &[usize]) -> GPoly {
        let c = self.multivector_chart();
        let mut out = GPoly::one(c);
        for &a in s {
            out = &out * &GPoly::var(c, self.dim() + a);
        }
        out
    }

    /// h with ω = h e_1 ⋯ e_n for a top-degree multivector (other terms ignored).
    fn top_coefficient(&self, w: &GPoly) -> GPoly {
        let all: Vec<usize> = (0..self.rank()).collect();
        let top = self.wedge_basis(&all);
        let top_mono = top.terms().next().expect("top power is a monomial").0.clone();
        let m = self.dim();
        let mut out = GPoly::zero(self.base());
        for (mono, c) in w.terms() {
            if (0..self.rank()).all(|a| mono.exp(m + a) == 1) {
                let mut exps = mono.exponents().to_vec();
                for e in exps.iter_mut().skip(m) {
                    *e = 0;
                }
                let sign = top.coeff(&top_mono);
                out.add_term(crate::graded::Monomial::from_exponents(exps[..m].to_vec()), c * &sign);
            }
        }
        out
    }

    /// The BV operator of a connection on ∧^n V (n = rank). An ω of arity
    /// n − p is the p-form α with ω = ι_α Ω (ι_{α∧β} = ι_α ι_β), so
    /// ω(X_1,…,X_p) = (−1)^{p(p−1)/2} X_1 ∧ ⋯ ∧ X_p ∧ ω, and
    /// Δω(X_1,…,X_{p+1}) = Σ_i (−1)^{i−1} ∇_{X_i} ω(…X̂_i…)
    ///                   + Σ_{i<j} (−1)^{i+j} ω([X_i,X_j], …X̂_i…X̂_j…).
    pub fn bv_operator(&self, conn: &ConnectionSpec, w: &GPoly) -> Result<GPoly> {
        conn.validate(self)?;
        if conn.rank != 1 {
            return Err(Error::Invalid("BV operator needs a connection on a line bundle".into()));
        }
        if !same_chart(w.chart(), self.multivector_chart()) {
            return Err(Error::ChartMismatch);
        }
        let n = self.rank();
        let m = self.dim();
        let fib: Vec<usize> = (m..m + n).collect();
        let c = self.multivector_chart();
        let lift = |f: &GPoly| f.embed(c).expect("base embeds");
        let mut out = GPoly::zero(c);
        for arity in 1..=n {
            let part = w.filter_terms(|mono| mono.count_in(&fib) == arity as u32);
            if part.is_zero() {
                continue;
            }
            let p = n - arity;
            let eval = |xs: &[GPoly]| {
                let mut acc = GPoly::one(c);
                for x in xs {
                    acc = &acc * x;
                }
                self.top_coefficient(&(&acc * &part)).scale(&reversal(xs.len()))
            };
            for s in subsets(n, p + 1) {
                let xs: Vec<GPoly> = s.iter().map(|&a| self.wedge_basis(&[a])).collect();
                let mut val = GPoly::zero(self.base());
                for i in 0..=p {
                    let rest: Vec<GPoly> = xs
                        .iter()
                        .enumerate()
                        .filter(|&(t, _)| t != i)
                        .map(|(_, x)| x.clone())
                        .collect();
                    let h = eval(&rest);
                    let ei = self.basis_section(s[i]);
                    let nabla = &self.rho(&ei, &h) + &(&h * &conn.gamma[s[i]][0][0]);
                    val = &val + &nabla.scale(&int(if i % 2 == 1 { -1 } else { 1 }));
                }
                for i in 0..=p {
                    for j in i + 1..=p {
                        let br = self.section_to_poly(&self.basis_bracket(s[i], s[j]));
                        let mut args = vec![br];
                        args.extend(
                            xs.iter()
                                .enumerate()
                                .filter(|&(t, _)| t != i && t != j)
                                .map(|(_, x)| x.clone()),
                        );
                        let v = eval(&args);
                        val = &val + &v.scale(&int(if (i + j) % 2 == 1 { -1 } else { 1 }));
                    }
                }
                if val.is_zero() {
                    continue;
                }
                // X_S ∧ e_{S^c} = ε Ω, so the coefficient of e_{S^c} is val / (ε σ).
                let comp: Vec<usize> = (0..n).filter(|a| !s.contains(a)).collect();
                let xs_wedge = self.wedge_basis(&s);
                let eps = self.top_coefficient(&(&xs_wedge * &self.wedge_basis(&comp)));
                let eps = eps.constant_term() * reversal(p + 1);
                out = &out + &(&lift(&val) * &self.wedge_basis(&comp)).scale(&(int(1) / eps));
            }
        }
        Ok(out)
    }

    /// Residual of [a,b] = (−1)^{|a|+1}(Δ(ab) − Δ(a)b − (−1)^{|a|} aΔ(b)) for
    /// a of homogeneous arity |a|.
    pub fn xu_residual(&self, conn: &ConnectionSpec, a: &GPoly, b: &GPoly) -> Result<GPoly> {
        let m = self.dim();
        let fib: Vec<usize> = (m..m + self.rank()).collect();
        let arity = a.terms().next().map_or(0, |(mono, _)| mono.count_in(&fib)) as i32;
        let sa = int(if arity % 2 == 1 { -1 } else { 1 });
        let lhs = self.schouten_bracket(a, b);
        let ab = self.bv_operator(conn, &(a * b))?;
        let da = self.bv_operator(conn, a)?;
        let db = self.bv_operator(conn, b)?;
        let inner = &(&ab - &(&da * b)) - &(a * &db).scale(&sa);
        Ok(&lhs - &inner.scale(&-sa))
    }
}
