//! Fully packed loop configurations, their boundary connectivity and the
//! census against loop-model ground states.

mod census;
mod config;
mod trace;

pub use census::*;
pub use config::*;
pub use trace::*;
