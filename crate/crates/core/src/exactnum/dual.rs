use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::Ring;

/// `val + der·ε` with `ε² = 0`. Used for exact partial derivatives.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dual<R> {
    pub val: R,
    pub der: R,
}

impl<R: Ring> Dual<R> {
    pub fn new(val: R, der: R) -> Self {
        Dual { val, der }
    }

    pub fn constant(val: R) -> Self {
        Dual { val, der: R::zero() }
    }

    pub fn variable(val: R) -> Self {
        Dual { val, der: R::one() }
    }
}

impl<R: Ring> From<R> for Dual<R> {
    fn from(val: R) -> Self {
        Dual::constant(val)
    }
}

impl<R: Ring> Zero for Dual<R> {
    fn zero() -> Self {
        Dual::constant(R::zero())
    }

    fn is_zero(&self) -> bool {
        self.val.is_zero() && self.der.is_zero()
    }
}

impl<R: Ring> One for Dual<R> {
    fn one() -> Self {
        Dual::constant(R::one())
    }
}

impl<R: Ring> Add for Dual<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Dual::new(self.val + rhs.val, self.der + rhs.der)
    }
}

impl<R: Ring> Sub for Dual<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Dual::new(self.val - rhs.val, self.der - rhs.der)
    }
}

impl<R: Ring> Mul for Dual<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let der = self.val.clone() * rhs.der + self.der * rhs.val.clone();
        Dual::new(self.val * rhs.val, der)
    }
}

impl<R: Ring> Neg for Dual<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual::new(-self.val, -self.der)
    }
}
