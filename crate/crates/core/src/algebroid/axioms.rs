//! Two independent verdicts on an algebroid: `{μ,μ} = 0` and the
//! section-level axioms.

use super::{AlgebroidSpec, Section};
use crate::graded::{int, Chart, ChartRef, GPoly, GVar};
use crate::symplectic::vector_field_commutator;

/// A failing instance of an identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Finding {
    pub identity: &'static str,
    pub at: String,
    pub residual: GPoly,
}

#[derive(Clone, Debug)]
pub struct AlgebroidReport {
    pub mu: GPoly,
    pub mu_mu: GPoly,
    pub jacobi: Vec<Finding>,
    pub leibniz: Vec<Finding>,
    pub anchor: Vec<Finding>,
}

impl AlgebroidReport {
    pub fn hamiltonian_route(&self) -> bool {
        self.mu_mu.is_zero()
    }

    pub fn axiom_route(&self) -> bool {
        self.jacobi.is_empty() && self.leibniz.is_empty() && self.anchor.is_empty()
    }

    pub fn routes_agree(&self) -> bool {
        self.hamiltonian_route() == self.axiom_route()
    }

    pub fn passed(&self) -> bool {
        self.hamiltonian_route() && self.axiom_route()
    }
}

fn parity_sign(a: i32, b: i32) -> crate::graded::Coeff {
    int(if (a * b).rem_euclid(2) == 1 { -1 } else { 1 })
}

fn add_sections(x: &Section, y: &Section) -> Section {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

fn scale_section(x: &Section, f: &GPoly) -> Section {
    x.iter().map(|a| f * a).collect()
}

/// Chart on which vector fields Σ V^i ∂/∂x^i are rendered as Σ V^i d_xi.
pub fn vector_field_chart(base: &ChartRef) -> ChartRef {
    let mut vars = base.vars().to_vec();
    vars.extend(
        base.vars()
            .iter()
            .map(|v| GVar::fiber(format!("d_{}", v.name), -v.degree)),
    );
    Chart::new(vars).expect("derived names are fresh")
}

pub fn render_vector_field(base: &ChartRef, v: &[GPoly]) -> GPoly {
    let c = vector_field_chart(base);
    let mut out = GPoly::zero(&c);
    for (i, vi) in v.iter().enumerate() {
        let lifted = vi.embed(&c).expect("base embeds");
        out = &out + &(&lifted * &GPoly::var(&c, base.len() + i));
    }
    out
}

impl AlgebroidSpec {
    /// Cyclic graded Jacobiator
    /// (-1)^{|a||c|}[[a,b],c] + (-1)^{|b||a|}[[b,c],a] + (-1)^{|c||b|}[[c,a],b].
    pub fn jacobiator(&self, x: (&Section, i32), y: (&Section, i32), z: (&Section, i32)) -> Section {
        let term = |p: (&Section, i32), q: (&Section, i32), r: (&Section, i32)| {
            let inner = self.section_bracket(p.0, q.0);
            let outer = self.section_bracket(&inner, r.0);
            outer
                .iter()
                .map(|f| f.scale(&parity_sign(p.1, r.1)))
                .collect::<Section>()
        };
        let s = add_sections(&term(x, y, z), &term(y, z, x));
        add_sections(&s, &term(z, x, y))
    }

    /// Checks Jacobi on basis triples, the Leibniz rule on basis sections
    /// times coordinate functions, and ρ([e_a,e_b]) = [ρ(e_a),ρ(e_b)],
    /// alongside {μ,μ}.
    pub fn check(&self) -> AlgebroidReport {
        let mu = self.hamiltonian().clone();
        let mu_mu = self.symplectic().bracket_context().self_bracket(&mu);
        let r = self.rank();
        let label = |a: usize| self.fibers()[a].label.clone();
        let deg = |a: usize| self.fiber_degree(a);
        let basis: Vec<Section> = (0..r).map(|a| self.basis_section(a)).collect();

        let mut jacobi = Vec::new();
        for a in 0..r {
            for b in a..r {
                for c in b..r {
                    let j = self.jacobiator((&basis[a], deg(a)), (&basis[b], deg(b)), (&basis[c], deg(c)));
                    let residual = self.section_to_poly(&j);
                    if !residual.is_zero() {
                        jacobi.push(Finding {
                            identity: "jacobi",
                            at: format!("({}, {}, {})", label(a), label(b), label(c)),
                            residual,
                        });
                    }
                }
            }
        }

        // [X, fY] = f[X,Y] + ρ(X)(f) Y, with the left side evaluated as
        // -(-1)^{|X||Y|}[fY, X] so the right-slot Leibniz term is exercised.
        let mut leibniz = Vec::new();
        for a in 0..r {
            for b in 0..r {
                for i in 0..self.dim() {
                    let f = GPoly::var(self.base(), i);
                    let fy = scale_section(&basis[b], &f);
                    let lhs: Section = self
                        .section_bracket(&fy, &basis[a])
                        .iter()
                        .map(|p| -p.scale(&parity_sign(deg(a), deg(b))))
                        .collect();
                    let mut rhs = scale_section(&self.basis_bracket(a, b), &f);
                    let rf = self.rho(&basis[a], &f);
                    rhs = add_sections(&rhs, &scale_section(&basis[b], &rf));
                    let diff: Section = lhs.iter().zip(&rhs).map(|(p, q)| p - q).collect();
                    let residual = self.section_to_poly(&diff);
                    if !residual.is_zero() {
                        leibniz.push(Finding {
                            identity: "leibniz",
                            at: format!("({}, {}*{})", label(a), self.base().var(i).name, label(b)),
                            residual,
                        });
                    }
                }
            }
        }

        let mut anchor = Vec::new();
        for a in 0..r {
            for b in a..r {
                let br = self.basis_bracket(a, b);
                let mut lhs = vec![GPoly::zero(self.base()); self.dim()];
                for (c, coef) in br.iter().enumerate() {
                    for (i, l) in lhs.iter_mut().enumerate() {
                        *l = &*l + &(coef * self.anchor(c, i));
                    }
                }
                let rhs = vector_field_commutator(&self.anchor_field(a), &self.anchor_field(b), deg(a), deg(b));
                let diff: Vec<GPoly> = lhs.iter().zip(&rhs).map(|(p, q)| p - q).collect();
                let residual = render_vector_field(self.base(), &diff);
                if !residual.is_zero() {
                    anchor.push(Finding {
                        identity: "anchor-morphism",
                        at: format!("({}, {})", label(a), label(b)),
                        residual,
                    });
                }
            }
        }

        AlgebroidReport {
            mu,
            mu_mu,
            jacobi,
            leibniz,
            anchor,
        }
    }
}
