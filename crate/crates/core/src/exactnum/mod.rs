//! Exact arithmetic: rationals, the cyclotomic field ℚ(ζ₁₂), Laurent
//! polynomials for generic-q checks, multivariate polynomials and matrices.

pub mod cyc;
pub mod laurent;
pub mod matrix;
pub mod mpoly;
pub mod rational;
pub mod ring;

pub use cyc::CycNum;
pub use laurent::LaurentG;
pub use matrix::Matrix;
pub use mpoly::MPoly;
pub use rational::{int, rat, Rational};
pub use ring::{ExactDiv, Field, LoopRing, Scalar};

/// Rank over the fraction field of the Laurent ring.
pub fn laurent_rank(m: &Matrix<LaurentG>) -> usize {
    m.rank_fraction_free()
}
