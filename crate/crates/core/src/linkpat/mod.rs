//! Link patterns and the diagram algebra acting on them.

mod basis;
mod ops;
mod pattern;

pub use basis::{operator_matrix, Basis, PatternVector};
pub use ops::{
    apply_crossing, crossing_matrix, e_matrix, e_vector, gram_matrix, paste_loops, project_up, projection_matrix,
    rotation_matrix, Crossing, Projection,
};
pub use pattern::{EAction, Kind, LinkPattern};
