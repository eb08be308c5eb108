//! Exact arithmetic kernel.
//!
//! Everything above this module is written against the [`Ring`] and
//! [`Field`] traits. [`Ring`] is a blanket trait so that [`Dual`] numbers can
//! flow through the same matrix and trace code as plain scalars; [`Field`] is
//! implemented only for exact types (`BigRational` and [`GaussRat`]).

mod dual;
mod gauss;
mod matrix;
mod poly;
pub mod roots;

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use dual::Dual;
pub use gauss::{GaussRat, ParseScalarError};
pub use matrix::Matrix;
pub use poly::{Polynomial, PolyError};

/// Commutative ring with exact equality.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
        + Send
        + Sync
{
}

/// Exact field. Not implemented for floating point types.
pub trait Field: Ring + Div<Output = Self> {
    fn from_ratio(numer: i64, denom: i64) -> Self;

    fn from_int(value: i64) -> Self {
        Self::from_ratio(value, 1)
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }
}

impl Field for BigRational {
    fn from_ratio(numer: i64, denom: i64) -> Self {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }
}

impl Field for GaussRat {
    fn from_ratio(numer: i64, denom: i64) -> Self {
        GaussRat::real(BigRational::from_ratio(numer, denom))
    }
}
