//! Spec-file front end for the `lbialg` engine: parsing, resolution,
//! subcommand dispatch and reports.

pub mod error;
pub mod model;
pub mod report;
pub mod run;
pub mod spec;

pub use error::{CliError, CliResult, Loc};
pub use model::{Construct, Model, MorphismKind};
pub use report::{Record, Report, Verdict};
pub use run::{run, Options, Subcommand};
pub use spec::{parse_spec, SpecFile};
