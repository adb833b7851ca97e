//! The twisted XXZ chain at `Δ = −1/2` and its six-vertex transfer matrix.

mod ground;
mod ops;
mod state;
mod verify;

pub use ground::*;
pub use ops::*;
pub use state::*;
pub use verify::*;
