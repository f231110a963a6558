//! Chevalley–Eilenberg differential and Cartan calculus on Γ(∧V*),
//! realised as functions on V[1].

use super::{AlgebroidSpec, Section};
use crate::graded::{int, same_chart, GPoly};

impl AlgebroidSpec {
    /// dφ = {μ, φ}, read back on V[1].
    pub fn ce_differential(&self, phi: &GPoly) -> GPoly {
        assert!(same_chart(phi.chart(), self.v1_chart()), "form must live on V[1]");
        let sc = self.symplectic();
        let lifted = phi.embed(sc.chart()).expect("V[1] embeds in T*[2]V[1]");
        let out = sc.bracket_context().bracket(self.hamiltonian(), &lifted);
        out.project(self.v1_chart())
    }

    fn lift_coefficient(&self, f: &GPoly) -> GPoly {
        f.embed(self.v1_chart()).expect("base embeds in V[1]")
    }

    /// ι_X φ = Σ X^a ∂_{ξ^a} φ.
    pub fn contraction(&self, x: &Section, phi: &GPoly) -> GPoly {
        let mut out = GPoly::zero(self.v1_chart());
        for (a, f) in x.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let d = phi.partial_left(self.xi_index(a));
            out = &out + &(&self.lift_coefficient(f) * &d);
        }
        out
    }

    /// L_X = [d, ι_X] = d ι_X - (-1)^{|X|-1} ι_X d, summed over the
    /// homogeneous components of X.
    pub fn lie_derivative(&self, x: &Section, phi: &GPoly) -> GPoly {
        let mut out = GPoly::zero(self.v1_chart());
        for (a, f) in x.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let mut xa = self.zero_section();
            xa[a] = f.clone();
            let first = self.ce_differential(&self.contraction(&xa, phi));
            let second = self.contraction(&xa, &self.ce_differential(phi));
            let s = int(if (self.fiber_degree(a) - 1).rem_euclid(2) == 1 {
                -1
            } else {
                1
            });
            out = &out + &(&first - &second.scale(&s));
        }
        out
    }

    /// φ(e_{b1}, …, e_{bk}) = ∂_{ξ^{bk}} ⋯ ∂_{ξ^{b1}} φ restricted to ξ = 0,
    /// returned as a base function.
    pub fn evaluate_form(&self, phi: &GPoly, args: &[usize]) -> GPoly {
        let mut cur = phi.clone();
        for &b in args {
            cur = cur.partial_left(self.xi_index(b));
        }
        cur.project(self.base())
    }

    /// Right-hand side of the invariant formula for dφ on basis sections
    /// (classical case):
    /// Σ_i (-1)^i ρ(X_i) φ(…X̂_i…) + Σ_{i<j} (-1)^{i+j} φ([X_i,X_j], …X̂_i…X̂_j…).
    pub fn invariant_differential(&self, phi: &GPoly, args: &[usize]) -> GPoly {
        let k = args.len();
        let sgn = |e: usize| int(if e % 2 == 1 { -1 } else { 1 });
        let mut out = GPoly::zero(self.base());
        for i in 0..k {
            let rest: Vec<usize> = args
                .iter()
                .enumerate()
                .filter(|&(t, _)| t != i)
                .map(|(_, &b)| b)
                .collect();
            let v = self.evaluate_form(phi, &rest);
            let x = self.basis_section(args[i]);
            out = &out + &self.rho(&x, &v).scale(&sgn(i));
        }
        for i in 0..k {
            for j in i + 1..k {
                let br = self.basis_bracket(args[i], args[j]);
                let rest: Vec<usize> = args
                    .iter()
                    .enumerate()
                    .filter(|&(t, _)| t != i && t != j)
                    .map(|(_, &b)| b)
                    .collect();
                for (c, coef) in br.iter().enumerate() {
                    if coef.is_zero() {
                        continue;
                    }
                    let mut full = vec![c];
                    full.extend(&rest);
                    let v = self.evaluate_form(phi, &full);
                    out = &out + &(coef * &v).scale(&sgn(i + j));
                }
            }
        }
        out
    }
}
