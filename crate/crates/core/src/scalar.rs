//! Scalar abstraction for polynomial coefficients and evaluation targets.
//!
//! Everything downstream works over an exact commutative ring; the trait is
//! an alias over the num-traits vocabulary so that `BigInt`, `BigRational`,
//! and the two field types of this crate can all serve as coefficients.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// Exact commutative ring scalar. No floating-point type implements this
/// crate's invariants correctly; instantiate with `BigInt`, `BigRational`,
/// [`crate::CycloValue`], or [`crate::QuadValue`].
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + AddAssign
{
}

impl<T> Scalar for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + AddAssign
{
}
