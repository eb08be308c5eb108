//! Exact noncommutative symplectic calculus for the two-vertex quiver with
//! one loop and the rank-2 Gibbons–Hermsen phase space.
//!
//! The algebra is generic over the scalar ring (see [`exactnum::Ring`] and
//! [`exactnum::Field`]); the aliases below fix the ground field to Q(i).

pub mod autos;
pub mod exactnum;
pub mod hamflows;
pub mod harness;
pub mod nagao;
pub mod pathalg;
pub mod reps;

use num_rational::BigRational;

/// Ground field element, an exact Gaussian rational.
pub type Scalar = exactnum::GaussRat;
/// Exact rational number.
pub type Rational = BigRational;
/// Univariate polynomial over the ground field.
pub type Poly = exactnum::Polynomial<Scalar>;
/// Dense matrix over the ground field.
pub type Mat = exactnum::Matrix<Scalar>;
/// Dual number over the ground field.
pub type DualScalar = exactnum::Dual<Scalar>;
