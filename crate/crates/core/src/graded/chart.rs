use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Role of a coordinate inside a chart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    Base,
    Fiber,
    MomentumBase,
    MomentumFiber,
    Formal,
}

impl VarKind {
    pub fn is_momentum(self) -> bool {
        matches!(self, VarKind::MomentumBase | VarKind::MomentumFiber)
    }

    /// Weight used by truncated arithmetic unless the chart overrides it.
    pub fn default_weight(self) -> u32 {
        match self {
            VarKind::Fiber | VarKind::Formal => 1,
            _ => 0,
        }
    }
}

/// A named graded coordinate. Its position in the owning chart is its index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GVar {
    pub name: String,
    pub degree: i32,
    pub kind: VarKind,
}

impl GVar {
    pub fn new(name: impl Into<String>, degree: i32, kind: VarKind) -> Self {
        GVar {
            name: name.into(),
            degree,
            kind,
        }
    }

    pub fn base(name: impl Into<String>, degree: i32) -> Self {
        Self::new(name, degree, VarKind::Base)
    }

    pub fn fiber(name: impl Into<String>, degree: i32) -> Self {
        Self::new(name, degree, VarKind::Fiber)
    }

    /// The formal deformation parameter; always degree 2.
    pub fn hbar() -> Self {
        Self::new("hbar", 2, VarKind::Formal)
    }

    pub fn is_odd(&self) -> bool {
        self.degree.rem_euclid(2) == 1
    }
}

/// An ordered graded coordinate system. Declaration order is the canonical
/// monomial order.
#[derive(Clone)]
pub struct Chart {
    vars: Vec<GVar>,
    odd: Vec<bool>,
    weights: Vec<u32>,
    trunc: Option<u32>,
    lookup: HashMap<String, usize>,
}

pub type ChartRef = Arc<Chart>;

impl Chart {
    pub fn new(vars: Vec<GVar>) -> Result<ChartRef> {
        Ok(Arc::new(Self::build(vars, None, None)?))
    }

    fn build(vars: Vec<GVar>, weights: Option<Vec<u32>>, trunc: Option<u32>) -> Result<Chart> {
        let mut lookup = HashMap::with_capacity(vars.len());
        for (i, v) in vars.iter().enumerate() {
            if lookup.insert(v.name.clone(), i).is_some() {
                return Err(Error::DuplicateVariable(v.name.clone()));
            }
        }
        let odd = vars.iter().map(GVar::is_odd).collect();
        let weights = weights.unwrap_or_else(|| vars.iter().map(|v| v.kind.default_weight()).collect());
        if weights.len() != vars.len() {
            return Err(Error::Invalid("weight vector length differs from chart".into()));
        }
        Ok(Chart {
            vars,
            odd,
            weights,
            trunc,
            lookup,
        })
    }

    /// The empty chart (functions on a point).
    pub fn point() -> ChartRef {
        Arc::new(Self::build(Vec::new(), None, None).expect("empty chart"))
    }

    /// Same coordinates, with monomials of designated weight above `cap` discarded.
    pub fn with_truncation(&self, cap: Option<u32>) -> ChartRef {
        let mut c = self.clone();
        c.trunc = cap;
        Arc::new(c)
    }

    pub fn with_weights(&self, weights: Vec<u32>) -> Result<ChartRef> {
        Ok(Arc::new(Self::build(self.vars.clone(), Some(weights), self.trunc)?))
    }

    /// A new chart with `extra` appended after the existing coordinates.
    pub fn extended(&self, extra: impl IntoIterator<Item = GVar>) -> Result<ChartRef> {
        let mut vars = self.vars.clone();
        let mut weights = self.weights.clone();
        for v in extra {
            weights.push(v.kind.default_weight());
            vars.push(v);
        }
        Ok(Arc::new(Self::build(vars, Some(weights), self.trunc)?))
    }

    pub fn vars(&self) -> &[GVar] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn var(&self, idx: usize) -> &GVar {
        &self.vars[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.lookup.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn is_odd(&self, idx: usize) -> bool {
        self.odd[idx]
    }

    pub fn weight(&self, idx: usize) -> u32 {
        self.weights[idx]
    }

    pub fn trunc(&self) -> Option<u32> {
        self.trunc
    }

    pub fn indices_of_kind(&self, kind: VarKind) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.vars[i].kind == kind).collect()
    }

    pub fn momentum_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.vars[i].kind.is_momentum()).collect()
    }
}

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.weights == other.weights && self.trunc == other.trunc
    }
}

impl Eq for Chart {}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.vars.iter().map(|v| format!("{}:{}", v.name, v.degree)).collect();
        write!(f, "Chart[{}]", names.join(", "))?;
        if let Some(t) = self.trunc {
            write!(f, " trunc {t}")?;
        }
        Ok(())
    }
}

/// True when two chart handles describe the same coordinate system.
pub fn same_chart(a: &ChartRef, b: &ChartRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
