//! Loop-model transfer matrices, ground states and the identities they satisfy.

mod eigen;
mod param;
mod poly;
mod row;
mod verify;

pub use poly::*;
pub use verify::*;

pub use eigen::{
    base_value, default_t, eigenvector, eigenvector_any, homogeneous, integer_form, kernel_vector,
    multiplicities, pf_eigenvector, pf_eigenvector_any, rotated_base, EigvecRecord,
};
pub use param::{params, qdiff, rhat_coeffs, values, Param};
pub use row::{build_rhat, build_transfer, trace_row, Tile, TransferOperator, A_TILE};
