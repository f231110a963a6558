//! The spec-file format: a TOML document of named sections.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use toml::Spanned;

use crate::error::{CliError, CliResult, Loc};

pub type Str = Spanned<String>;
pub type Table = IndexMap<Str, Str>;
pub type Nested = IndexMap<Str, Table>;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    /// Default word and ħ cap; `--trunc` overrides it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trunc: Option<u32>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub chart: IndexMap<String, ChartDecl>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub cotangent: IndexMap<String, CotangentDecl>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub algebroid: IndexMap<String, AlgebroidDecl>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub bialgebroid: IndexMap<String, BialgebroidDecl>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub hamiltonian: IndexMap<String, HamiltonianDecl>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub morphism: IndexMap<String, MorphismDecl>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub bracket: IndexMap<String, BracketDecl>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub ce: IndexMap<String, CeDecl>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub schouten: IndexMap<String, SchoutenDecl>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub bv: IndexMap<String, BvDecl>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub lift: IndexMap<String, LiftDecl>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub construct: IndexMap<String, ConstructDecl>,
}

/// Variables as `"name:degree"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartDecl {
    pub vars: Vec<Str>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CotangentDecl {
    pub chart: Str,
    pub shift: i32,
    /// Momentum names with degrees, one per chart variable; each degree
    /// must be `shift - |q|`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub momenta: Option<Vec<Str>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebroidDecl {
    /// Base chart; omitted for an algebra over a point.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Str>,
    /// Basis labels with degrees, `"e1:0"`.
    pub fibers: Vec<Str>,
    /// Names and degrees of the coordinates ξ^a (degree 1 + |e_a|).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<Str>>,
    /// Names and degrees of the momenta ξ*_a (degree 2 - |ξ^a|).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub momenta: Option<Vec<Str>>,
    /// fiber label → base coordinate → A^i_a.
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub anchor: Nested,
    /// `"(a,b)"` with a before b → fiber label → C^c_{ab}.
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub bracket: Nested,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BialgebroidDecl {
    pub v: Str,
    pub dual: Str,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianDecl {
    /// An algebroid or bialgebroid (its T*[2]V[1]) or a cotangent chart.
    pub on: Str,
    pub expr: Str,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDecl {
    /// The algebroid or bialgebroid V whose V[1] is the domain.
    pub source: Str,
    /// The algebroid or bialgebroid W.
    pub target: Str,
    /// Hamiltonian entries replacing the default χ of source or target.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_chi: Option<Str>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_chi: Option<Str>,
    /// W[1] coordinate → polynomial on V[1]. A semistrict morphism assigns
    /// every coordinate; a full one only the base coordinates.
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub map: Table,
    /// Full morphisms: word in W[1] fiber coordinates → polynomial on V[1].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub words: Option<Table>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketDecl {
    pub on: Str,
    pub f: Str,
    pub g: Str,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CeDecl {
    pub algebroid: Str,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<Str>,
    /// Number of random forms on which d² = 0 is checked (seeded by `--seed`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub random: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchoutenDecl {
    pub algebroid: Str,
    pub p: Str,
    pub q: Str,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BvDecl {
    pub algebroid: Str,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element: Option<Str>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiftDecl {
    /// A cotangent chart.
    pub on: Str,
    /// Base coordinate → component of the vector field.
    pub field: Table,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructDecl {
    /// tangent, koszul, action, poisson-bialgebroid, triangular, nijenhuis
    /// or linfty-bialgebra.
    pub kind: Str,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chart: Option<Str>,
    /// `"(x1,x2)"` → π^{12}.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi: Option<Table>,
    /// Column x_j → row x_i → N^i_j, i.e. N(∂_j) = Σ_i N^i_j ∂_i.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<Nested>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fibers: Option<Vec<Str>>,
    /// Structure constants of the acting algebra, keyed like brackets.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constants: Option<Nested>,
    /// Fiber label → base coordinate → component of the fundamental field.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Nested>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebroid: Option<Str>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Str>,
    /// `"(m,n)"` → component of an L∞-bialgebra over a point.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Table>,
}

/// Parses and checks the document structure; names and expressions are
/// resolved by [`crate::model::Model::load`].
pub fn parse_spec(text: &str) -> CliResult<SpecFile> {
    toml::from_str(text).map_err(|e| CliError::Parse {
        loc: e.span().map(|s| Loc::of_offset(text, s.start)),
        message: e.message().trim().to_string(),
    })
}

impl SpecFile {
    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("spec files serialize")
    }
}
