use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use super::{Field, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("repeated interpolation abscissa")]
    RepeatedNode,
}

/// Univariate polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> Polynomial<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn constant(c: R) -> Self {
        Polynomial::new(vec![c])
    }

    /// `c·z^k`
    pub fn monomial(c: R, k: usize) -> Self {
        let mut coeffs = vec![R::zero(); k];
        coeffs.push(c);
        Polynomial::new(coeffs)
    }

    /// The indeterminate `z`.
    pub fn z() -> Self {
        Polynomial::monomial(R::one(), 1)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn eval(&self, at: &R) -> R {
        self.eval_in(at.clone())
    }

    /// Horner evaluation in any ring receiving the coefficients.
    pub fn eval_in<S>(&self, at: S) -> S
    where
        S: Ring + From<R>,
    {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at.clone() + S::from(c.clone());
        }
        acc
    }

    pub fn scale(&self, c: &R) -> Self {
        Polynomial::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        let mut k = R::zero();
        for c in &self.coeffs {
            if !k.is_zero() {
                out.push(c.clone() * k.clone());
            }
            k = k + R::one();
        }
        Polynomial::new(out)
    }

    /// `self(inner(z))`
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Polynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Polynomial::constant(c.clone());
        }
        acc
    }
}

impl<F: Field> Polynomial<F> {
    pub fn divmod(&self, g: &Self) -> Result<(Self, Self), PolyError> {
        let lead = g.leading().ok_or(PolyError::DivisionByZero)?.clone();
        let dg = g.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dg {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let mut quot = vec![F::zero(); rem.len() - dg];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dg].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            for (j, gc) in g.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * gc.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dg);
        Ok((Polynomial::new(quot), Polynomial::new(rem)))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, g: &Self) -> Result<Self, PolyError> {
        if self.is_zero() && g.is_zero() {
            return Err(PolyError::BothZero);
        }
        let (mut a, mut b) = (self.clone(), g.clone());
        while !b.is_zero() {
            let (_, r) = a.divmod(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn is_squarefree(&self) -> bool {
        match self.gcd(&self.derivative()) {
            Ok(g) => g.is_constant(),
            Err(_) => false,
        }
    }

    /// Newton divided differences; the unique polynomial of degree below the
    /// node count through all nodes.
    pub fn interpolate(nodes: &[(F, F)]) -> Result<Self, PolyError> {
        let xs: Vec<F> = nodes.iter().map(|(x, _)| x.clone()).collect();
        let mut table: Vec<F> = nodes.iter().map(|(_, y)| y.clone()).collect();
        let n = xs.len();
        for level in 1..n {
            for i in (level..n).rev() {
                let dx = xs[i].clone() - xs[i - level].clone();
                if dx.is_zero() {
                    return Err(PolyError::RepeatedNode);
                }
                table[i] = (table[i].clone() - table[i - 1].clone()) / dx;
            }
        }
        let mut acc = Polynomial::zero();
        for i in (0..n).rev() {
            let lin = Polynomial::new(vec![-xs[i].clone(), F::one()]);
            acc = &(&acc * &lin) + &Polynomial::constant(table[i].clone());
        }
        Ok(acc)
    }
}

impl<R: Ring> Zero for Polynomial<R> {
    fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<R: Ring> One for Polynomial<R> {
    fn one() -> Self {
        Polynomial::constant(R::one())
    }
}

impl<R: Ring> From<R> for Polynomial<R> {
    fn from(c: R) -> Self {
        Polynomial::constant(c)
    }
}

impl<'a, R: Ring> Add<&'a Polynomial<R>> for &'a Polynomial<R> {
    type Output = Polynomial<R>;
    fn add(self, rhs: &Polynomial<R>) -> Polynomial<R> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a, R: Ring> Sub<&'a Polynomial<R>> for &'a Polynomial<R> {
    type Output = Polynomial<R>;
    fn sub(self, rhs: &Polynomial<R>) -> Polynomial<R> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a, R: Ring> Mul<&'a Polynomial<R>> for &'a Polynomial<R> {
    type Output = Polynomial<R>;
    fn mul(self, rhs: &Polynomial<R>) -> Polynomial<R> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<R: Ring> Add for Polynomial<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<R: Ring> Sub for Polynomial<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<R: Ring> Mul for Polynomial<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<R: Ring> Neg for Polynomial<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Polynomial::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Polynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{k}")?,
            }
        }
        Ok(())
    }
}

impl<R: Ring + Serialize> Serialize for Polynomial<R> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl<'de, R: Ring + Deserialize<'de>> Deserialize<'de> for Polynomial<R> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(Polynomial::new(Vec::<R>::deserialize(deserializer)?))
    }
}
