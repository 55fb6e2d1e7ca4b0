//! Minimal algebraic traits shared by scalars, Grassmann elements and matrices.

use std::fmt::Debug;

use crate::error::Result;
use std::ops::{Add, Mul, Neg, Sub};

/// An associative unital ring. Multiplication need not be commutative.
pub trait Ring:
    Clone + PartialEq + Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;

    fn checked_add(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() + rhs.clone())
    }

    fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() - rhs.clone())
    }

    fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() * rhs.clone())
    }
}

/// A ring in which some elements can be inverted; `try_inv` returns `None`
/// for the ones that cannot.
pub trait DivisionRing: Ring {
    fn try_inv(&self) -> Option<Self>;

    /// Size used to rank pivot candidates. Exact types return 1 for every
    /// invertible element so that the lowest index wins.
    fn pivot_weight(&self) -> f64 {
        if self.try_inv().is_some() {
            1.0
        } else {
            0.0
        }
    }
}
