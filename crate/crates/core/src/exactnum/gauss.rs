use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// An element of Q(i): a complex number with arbitrary-precision rational
/// real and imaginary parts. Both parts are always in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussRat(pub Complex<BigRational>);

#[derive(Debug, Error, PartialEq, Eq)]
#[error("malformed scalar {0:?}")]
pub struct ParseScalarError(pub String);

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat(Complex::new(re, im))
    }

    pub fn real(re: BigRational) -> Self {
        GaussRat(Complex::new(re, BigRational::zero()))
    }

    pub fn i() -> Self {
        GaussRat(Complex::new(BigRational::zero(), BigRational::one()))
    }

    pub fn from_parts(re_n: i64, re_d: i64, im_n: i64, im_d: i64) -> Self {
        GaussRat::new(
            BigRational::new(re_n.into(), re_d.into()),
            BigRational::new(im_n.into(), im_d.into()),
        )
    }

    pub fn re(&self) -> &BigRational {
        &self.0.re
    }

    pub fn im(&self) -> &BigRational {
        &self.0.im
    }

    pub fn is_real(&self) -> bool {
        self.0.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat(self.0.conj())
    }

    pub fn norm_sqr(&self) -> BigRational {
        self.0.norm_sqr()
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = GaussRat::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }
}

impl From<i64> for GaussRat {
    fn from(value: i64) -> Self {
        GaussRat::real(BigRational::from_integer(BigInt::from(value)))
    }
}

impl From<BigRational> for GaussRat {
    fn from(value: BigRational) -> Self {
        GaussRat::real(value)
    }
}

impl Zero for GaussRat {
    fn zero() -> Self {
        GaussRat(Complex::zero())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for GaussRat {
    fn one() -> Self {
        GaussRat(Complex::one())
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: GaussRat) -> GaussRat {
        GaussRat(self.0 + rhs.0)
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: GaussRat) -> GaussRat {
        GaussRat(self.0 - rhs.0)
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: GaussRat) -> GaussRat {
        GaussRat(self.0 * rhs.0)
    }
}

impl Div for GaussRat {
    type Output = GaussRat;
    fn div(self, rhs: GaussRat) -> GaussRat {
        assert!(!rhs.is_zero(), "division by zero scalar");
        GaussRat(self.0 / rhs.0)
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat(-self.0)
    }
}

impl<'a> Add<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat(&self.0 + &rhs.0)
    }
}

impl<'a> Mul<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        GaussRat(&self.0 * &rhs.0)
    }
}

/// Text form: `a/b`, `c/d i`, or `a/b+c/d i` (the space before `i` is optional
/// on input and omitted on output).
impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (&self.0.re, &self.0.im);
        if im.is_zero() {
            return write!(f, "{re}");
        }
        let im_text = |v: &BigRational| -> String {
            if v.is_one() {
                "i".to_string()
            } else {
                format!("{v}i")
            }
        };
        if re.is_zero() {
            if im.is_negative() {
                write!(f, "-{}", im_text(&-im.clone()))
            } else {
                write!(f, "{}", im_text(im))
            }
        } else if im.is_negative() {
            write!(f, "{re}-{}", im_text(&-im.clone()))
        } else {
            write!(f, "{re}+{}", im_text(im))
        }
    }
}

fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(text.parse().ok()?)),
    }
}

fn parse_imaginary(body: &str) -> Option<BigRational> {
    // body is the coefficient text without the trailing `i`, sign included
    let body = body.trim().trim_end_matches('*').trim();
    match body {
        "" | "+" => Some(BigRational::one()),
        "-" => Some(-BigRational::one()),
        other => {
            let (sign, rest) = match other.strip_prefix('-') {
                Some(r) => (-1, r),
                None => (1, other.strip_prefix('+').unwrap_or(other)),
            };
            let v = parse_rational(rest)?;
            Some(if sign < 0 { -v } else { v })
        }
    }
}

impl FromStr for GaussRat {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseScalarError(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        if let Some(body) = t.strip_suffix('i') {
            // split at the last sign that is not the leading character
            let split = body
                .char_indices()
                .skip(1)
                .filter(|&(_, c)| c == '+' || c == '-')
                .map(|(idx, _)| idx)
                .last();
            let (re, im) = match split {
                Some(idx) => {
                    let (r, i) = body.split_at(idx);
                    (parse_rational(r).ok_or_else(err)?, i)
                }
                None => (BigRational::zero(), body),
            };
            let im = parse_imaginary(im).ok_or_else(err)?;
            Ok(GaussRat::new(re, im))
        } else {
            let (sign, rest) = match t.strip_prefix('-') {
                Some(r) => (-1, r),
                None => (1, t.strip_prefix('+').unwrap_or(&t)),
            };
            let v = parse_rational(rest).ok_or_else(err)?;
            Ok(GaussRat::real(if sign < 0 { -v } else { v }))
        }
    }
}

impl Serialize for GaussRat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GaussRat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re_n: i64, re_d: i64, im_n: i64, im_d: i64) -> GaussRat {
        GaussRat::from_parts(re_n, re_d, im_n, im_d)
    }

    #[test]
    fn display_forms() {
        assert_eq!(g(3, 1, 0, 1).to_string(), "3");
        assert_eq!(g(-1, 2, 0, 1).to_string(), "-1/2");
        assert_eq!(g(1, 2, 3, 4).to_string(), "1/2+3/4i");
        assert_eq!(g(1, 2, -3, 4).to_string(), "1/2-3/4i");
        assert_eq!(g(0, 1, 1, 1).to_string(), "i");
        assert_eq!(g(0, 1, -1, 1).to_string(), "-i");
        assert_eq!(g(2, 1, -1, 1).to_string(), "2-i");
    }

    #[test]
    fn parse_forms() {
        for text in ["3", "-1/2", "1/2+3/4i", "1/2-3/4i", "i", "-i", "2-i", "-2/3-5i", "7/2i"] {
            let v: GaussRat = text.parse().unwrap();
            assert_eq!(v.to_string(), text);
        }
        assert_eq!("1/2+3/4 i".parse::<GaussRat>().unwrap(), g(1, 2, 3, 4));
        assert_eq!("2/4".parse::<GaussRat>().unwrap(), g(1, 2, 0, 1));
        assert!("1/0".parse::<GaussRat>().is_err());
        assert!("abc".parse::<GaussRat>().is_err());
        assert!("".parse::<GaussRat>().is_err());
    }

    #[test]
    fn field_arithmetic() {
        let a = g(1, 2, 1, 1);
        let b = g(-3, 1, 2, 5);
        assert_eq!((a.clone() * b.clone()) / b.clone(), a);
        assert_eq!(GaussRat::i() * GaussRat::i(), GaussRat::from(-1));
        assert_eq!(a.clone() - a, GaussRat::zero());
    }
}
