//! Coefficient traits shared by every polynomial and matrix routine.
//!
//! The algebra is written against [`Ring`] and [`Field`] so that the same
//! code runs over `BigRational` (the exact default), machine integers, nested
//! polynomial rings, or `f64` when a quick numeric sanity check is wanted.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A commutative ring with identity.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Image of an integer under the canonical map `Z -> R`.
    fn from_i64(n: i64) -> Self;

    fn pow_u32(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring + Div<Output = Self> {
    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl Ring for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}
impl Field for BigRational {}

impl Ring for BigInt {
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
}

macro_rules! primitive_ring {
    ($($t:ty),*) => {$(
        impl Ring for $t {
            fn from_i64(n: i64) -> Self {
                n as $t
            }
        }
    )*};
}
primitive_ring!(i64, i128, f32, f64);

impl Field for f32 {}
impl Field for f64 {}
