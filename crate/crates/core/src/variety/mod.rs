//! Data model for Whitney-stratified germs and affine sets: charts, strata,
//! the closure poset, complex-link Euler characteristic tables, the builtin
//! verification corpus and file ingestion.

mod builtins;
mod chart;
mod holomorphic;
mod poly;
mod schema;
mod space;

pub use builtins::{builtin, builtin_names};
pub use chart::{Chart, ChartPoint, Region, SamplePoint};
pub use holomorphic::HoloChart;
pub use poly::MPoly;
pub use schema::{load, load_str};
pub use space::{
    AlphaData, Annotations, LinkTable, LinkTarget, SpaceKind, StratifiedSpace, Stratum,
    ValidationIssue, ValidationReport,
};
