pub mod chart;
pub mod expr;
pub mod poly;
pub mod random;
pub mod subst;

pub use chart::{same_chart, Chart, ChartRef, GVar, VarKind};
pub use expr::parse_poly;
pub use poly::{int, mono_normalize, rat, Coeff, GPoly, Monomial};
pub use subst::{substitute, PolyMap};
