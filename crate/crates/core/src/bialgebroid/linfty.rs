//! Degree-three Hamiltonians on T*[2]V[1] as L∞-bialgebroid structures.

use crate::graded::{GPoly, VarKind};
use crate::symplectic::SymplecticChart;

#[derive(Clone, Debug)]
pub struct LinftyReport {
    /// Terms of degree other than 3.
    pub wrong_degree: GPoly,
    /// Terms without any momentum (nonzero on the zero section V[1]).
    pub on_zero_section: GPoly,
    /// Terms without any fiber-direction coordinate ξ^a or ξ*_a (nonzero
    /// over the base).
    pub over_base: GPoly,
    pub chi_chi: GPoly,
}

impl LinftyReport {
    pub fn passed(&self) -> bool {
        self.wrong_degree.is_zero()
            && self.on_zero_section.is_zero()
            && self.over_base.is_zero()
            && self.chi_chi.is_zero()
    }
}

/// Indices of the fiber coordinates ξ^a and their momenta ξ*_a.
pub fn fiber_direction_indices(sc: &SymplecticChart) -> Vec<usize> {
    let c = sc.chart();
    let mut out = c.indices_of_kind(VarKind::Fiber);
    out.extend(c.indices_of_kind(VarKind::MomentumFiber));
    out
}

pub fn check_linfty(sc: &SymplecticChart, chi: &GPoly) -> LinftyReport {
    let c = sc.chart().clone();
    let mom = sc.momentum_indices();
    let fib = fiber_direction_indices(sc);
    LinftyReport {
        wrong_degree: chi.filter_terms(|m| m.degree(&c) != 3),
        on_zero_section: chi.filter_terms(|m| m.count_in(&mom) == 0),
        over_base: chi.filter_terms(|m| m.count_in(&fib) == 0),
        chi_chi: sc.bracket_context().self_bracket(chi),
    }
}

/// The big bracket on V*[1] ⊕ V[1] over a point: the canonical degree −2
/// bracket of T*[2]V[1].
pub fn big_bracket(sc: &SymplecticChart, t1: &GPoly, t2: &GPoly) -> crate::Result<GPoly> {
    if !sc.base().indices_of_kind(VarKind::Base).is_empty() || sc.shift() != 2 {
        return Err(crate::Error::Invalid(
            "the big bracket lives on T*[2]V[1] over a point".into(),
        ));
    }
    sc.canonical_bracket(t1, t2)
}
