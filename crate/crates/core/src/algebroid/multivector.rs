//! Brackets induced on V*[1] (multivectors) and on V* (fiber-linear
//! functions), and the cotangent algebroid of a Poisson bivector.

use super::{AlgebroidSpec, Fiber, Section};
use crate::bracket::BracketContext;
use crate::error::{Error, Result};
use crate::graded::{ChartRef, GPoly};

impl AlgebroidSpec {
    fn fiber_linear_context(&self, chart: &ChartRef, shift: i32) -> BracketContext {
        let m = self.dim();
        let r = self.rank();
        let lift = |f: &GPoly| f.embed(chart).expect("base embeds");
        let mut pairs = Vec::new();
        for a in 0..r {
            for b in a..r {
                let mut val = GPoly::zero(chart);
                for c in 0..r {
                    let coef = self.structure(a, b, c);
                    if !coef.is_zero() {
                        val = &val + &(&lift(coef) * &GPoly::var(chart, m + c));
                    }
                }
                pairs.push((m + a, m + b, val));
            }
            for i in 0..m {
                pairs.push((m + a, i, lift(self.anchor(a, i))));
            }
        }
        BracketContext::new(chart, shift, pairs).expect("structure functions are antisymmetric")
    }

    /// The degree −1 bracket on Γ(∧V) = functions on V*[1]:
    /// [e_a, e_b] = C^c_{ab} e_c, [e_a, f] = ρ(e_a) f, [f, g] = 0.
    pub fn schouten_context(&self) -> BracketContext {
        self.fiber_linear_context(self.multivector_chart(), 1)
    }

    pub fn schouten_bracket(&self, p: &GPoly, q: &GPoly) -> GPoly {
        self.schouten_context().bracket(p, q)
    }

    /// The fiber-linear Poisson bracket on V*.
    pub fn lie_poisson(&self) -> BracketContext {
        self.fiber_linear_context(self.dual_chart(), 0)
    }

    /// Σ_{i<j} π^{ij} e_i e_j on the multivector chart of this spec.
    pub fn bivector(&self, pi: &[Vec<GPoly>]) -> GPoly {
        let c = self.multivector_chart();
        let m = self.dim();
        let mut out = GPoly::zero(c);
        for i in 0..self.rank() {
            for j in i + 1..self.rank() {
                let coef = pi[i][j].embed(c).expect("base embeds");
                let t = &(&coef * &GPoly::var(c, m + i)) * &GPoly::var(c, m + j);
                out = &out + &t;
            }
        }
        out
    }
}

/// The tangent algebroid TM: identity anchor, zero bracket. The fiber over
/// a coordinate named `x<s>` is labelled `e<s>` with coordinate `xi<s>`.
pub fn tangent_algebroid(base: &ChartRef) -> Result<AlgebroidSpec> {
    let m = base.len();
    let fibers = base
        .vars()
        .iter()
        .map(|v| Fiber::new(tangent_label(&v.name), 0))
        .collect();
    let anchor = (0..m)
        .map(|a| {
            (0..m)
                .map(|i| if a == i { GPoly::one(base) } else { GPoly::zero(base) })
                .collect()
        })
        .collect();
    AlgebroidSpec::new(base, fibers, anchor, Vec::new())
}

fn tangent_label(name: &str) -> String {
    match name.strip_prefix('x') {
        Some(rest) => format!("e{rest}"),
        None => format!("e_{name}"),
    }
}

/// Validates an antisymmetric coefficient matrix π^{ij} on `base`.
pub fn check_bivector_matrix(base: &ChartRef, pi: &[Vec<GPoly>]) -> Result<()> {
    let m = base.len();
    if pi.len() != m || pi.iter().any(|row| row.len() != m) {
        return Err(Error::Invalid(format!("bivector must be a {m}x{m} matrix")));
    }
    for i in 0..m {
        for j in 0..m {
            if pi[i][j] != -&pi[j][i] {
                return Err(Error::Invalid("bivector matrix is not antisymmetric".into()));
            }
        }
    }
    Ok(())
}

/// [π, π] for the bivector with coefficient matrix π on the tangent algebroid.
pub fn poisson_residual(base: &ChartRef, pi: &[Vec<GPoly>]) -> Result<GPoly> {
    check_bivector_matrix(base, pi)?;
    let t = tangent_algebroid(base)?;
    let p = t.bivector(pi);
    Ok(t.schouten_bracket(&p, &p))
}

/// The cotangent algebroid T*M of a Poisson bivector. Anchor and bracket
/// are computed from the Cartan calculus of the de Rham complex:
/// ⟨β, π^#α⟩ = ι_π(α∧β) with ι_{X∧Y} = ι_X ι_Y, and
/// {α,β} = L_{π^#α}β − L_{π^#β}α − d ι_π(α∧β).
pub fn koszul_algebroid(base: &ChartRef, pi: &[Vec<GPoly>]) -> Result<AlgebroidSpec> {
    let residual = poisson_residual(base, pi)?;
    if !residual.is_zero() {
        return Err(Error::NotPoisson(residual.to_string()));
    }
    koszul_structure(base, pi)
}

/// Anchor and bracket of the Koszul formula for any bivector, Poisson or
/// not. Only a Poisson π gives an algebroid.
pub fn koszul_structure(base: &ChartRef, pi: &[Vec<GPoly>]) -> Result<AlgebroidSpec> {
    check_bivector_matrix(base, pi)?;
    let t = tangent_algebroid(base)?;
    let m = base.len();
    let iota_pi = |phi: &GPoly| -> GPoly {
        let mut out = GPoly::zero(t.v1_chart());
        for i in 0..m {
            for j in i + 1..m {
                if pi[i][j].is_zero() {
                    continue;
                }
                let inner = t.contraction(&t.basis_section(j), phi);
                let outer = t.contraction(&t.basis_section(i), &inner);
                let coef = pi[i][j].embed(t.v1_chart()).expect("base embeds");
                out = &out + &(&coef * &outer);
            }
        }
        out
    };
    let dx: Vec<GPoly> = (0..m).map(|a| t.xi(a)).collect();
    // π^#(dx^a) as a section of TM
    let sharp: Vec<Section> = (0..m)
        .map(|a| (0..m).map(|i| iota_pi(&(&dx[a] * &dx[i])).project(base)).collect())
        .collect();
    let mut brackets = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            let form = &(&t.lie_derivative(&sharp[a], &dx[b]) - &t.lie_derivative(&sharp[b], &dx[a]))
                - &t.ce_differential(&iota_pi(&(&dx[a] * &dx[b])));
            let coeffs = (0..m).map(|k| t.evaluate_form(&form, &[k])).collect();
            brackets.push(((a, b), coeffs));
        }
    }
    AlgebroidSpec::new(base, t.fibers().to_vec(), sharp, brackets)
}
