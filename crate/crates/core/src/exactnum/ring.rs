use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// Commutative ring with exact arithmetic.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn from_i64(v: i64) -> Self;

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }
}

/// Rings in which `a / b` is computable whenever `b` divides `a`.
pub trait ExactDiv: Scalar {
    /// Returns `None` when `b` does not divide `a` (or `b` is zero).
    fn exact_div(&self, b: &Self) -> Option<Self>;
}

/// Fields: every nonzero element is invertible.
pub trait Field: ExactDiv {
    fn inv(&self) -> Option<Self>;
}

/// Coefficient rings carrying the loop-model constants `q^{1/2}` and `omega^{1/2}`,
/// with `q = (q^{1/2})^2` and `omega = -q`.
pub trait LoopRing: Scalar {
    fn sqrt_q() -> Self;
    fn inv_sqrt_q() -> Self;
    fn omega_half() -> Self;
    fn inv_omega_half() -> Self;

    fn q() -> Self {
        Self::sqrt_q().pow(2)
    }

    fn inv_q() -> Self {
        Self::inv_sqrt_q().pow(2)
    }

    /// Weight of a contractible loop, `-q - q^{-1}`.
    fn tau() -> Self {
        -(Self::q() + Self::inv_q())
    }
}
