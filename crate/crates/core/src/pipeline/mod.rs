//! Verification plans, reports and the record cache.

mod anchors;
mod cache;
mod plan;
mod run;

pub use anchors::*;
pub use cache::*;
pub use plan::*;
pub use run::*;
