//! Roots in Q(i) of polynomials over Q(i), by the rational root theorem in
//! the Gaussian integers.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{GaussRat, Polynomial};

const TRIAL_LIMIT: u64 = 2_000_000;
const CANDIDATE_LIMIT: usize = 400_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("a coefficient norm has a factor too large to split")]
    FactorizationTooHard,
    #[error("too many candidate roots to test")]
    TooManyCandidates,
}

/// Gaussian integer.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct GInt {
    re: BigInt,
    im: BigInt,
}

impl GInt {
    fn new(re: BigInt, im: BigInt) -> Self {
        GInt { re, im }
    }

    fn from_int(v: i64) -> Self {
        GInt::new(v.into(), BigInt::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    fn mul(&self, o: &GInt) -> GInt {
        GInt::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }

    /// Exact quotient if `o` divides `self`.
    fn div_exact(&self, o: &GInt) -> Option<GInt> {
        let n = o.norm();
        let re = &self.re * &o.re + &self.im * &o.im;
        let im = &self.im * &o.re - &self.re * &o.im;
        if (&re % &n).is_zero() && (&im % &n).is_zero() {
            Some(GInt::new(re / &n, im / &n))
        } else {
            None
        }
    }

    fn rem(&self, o: &GInt) -> GInt {
        let n = o.norm();
        let re = &self.re * &o.re + &self.im * &o.im;
        let im = &self.im * &o.re - &self.re * &o.im;
        let round = |x: BigInt| -> BigInt {
            let two_n = &n * 2;
            (x * 2u32 + &n).div_floor(&two_n)
        };
        let q = GInt::new(round(re), round(im));
        let qo = q.mul(o);
        GInt::new(&self.re - qo.re, &self.im - qo.im)
    }

    fn gcd(&self, o: &GInt) -> GInt {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    fn to_gauss(&self) -> GaussRat {
        GaussRat::new(BigRational::from_integer(self.re.clone()), BigRational::from_integer(self.im.clone()))
    }
}

fn mod_pow(base: &BigInt, exp: &BigInt, m: &BigInt) -> BigInt {
    base.modpow(exp, m)
}

fn is_probable_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    let small = [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
    for p in small {
        let p = BigInt::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for a in small {
        let mut x = mod_pow(&BigInt::from(a), &d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = mod_pow(&x, &BigInt::from(2), n);
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization of a positive integer.
fn factor_int(mut n: BigInt) -> Result<Vec<BigInt>, RootError> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        let bp = BigInt::from(p);
        if &bp * &bp > n {
            break;
        }
        while (&n % &bp).is_zero() {
            n /= &bp;
            out.push(bp.clone());
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        if is_probable_prime(&n) {
            out.push(n);
        } else {
            return Err(RootError::FactorizationTooHard);
        }
    }
    Ok(out)
}

/// A Gaussian prime above the rational prime `p` (≡ 1 mod 4).
fn split_prime(p: &BigInt) -> GInt {
    let exp = (p - 1u32) / 4u32;
    let mut c = BigInt::from(2);
    loop {
        let t = mod_pow(&c, &exp, p);
        if (&t * &t + 1u32) % p == BigInt::zero() {
            return GInt::new(p.clone(), BigInt::zero()).gcd(&GInt::new(t, BigInt::one()));
        }
        c += 1u32;
    }
}

/// Gaussian primes dividing `z`, with multiplicity exponents.
fn factor_gint(z: &GInt) -> Result<Vec<(GInt, u32)>, RootError> {
    let mut primes: BTreeSet<BigInt> = BTreeSet::new();
    for p in factor_int(z.norm())? {
        primes.insert(p);
    }
    let mut candidates = Vec::new();
    for p in primes {
        if p == BigInt::from(2) {
            candidates.push(GInt::new(BigInt::one(), BigInt::one()));
        } else if (&p % 4u32) == BigInt::from(3) {
            candidates.push(GInt::new(p, BigInt::zero()));
        } else {
            let pi = split_prime(&p);
            let conj = GInt::new(pi.re.clone(), -pi.im.clone());
            candidates.push(pi);
            candidates.push(conj);
        }
    }
    let mut out = Vec::new();
    let mut rest = z.clone();
    for pi in candidates {
        let mut e = 0;
        while let Some(q) = rest.div_exact(&pi) {
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.push((pi, e));
        }
    }
    Ok(out)
}

fn divisors(z: &GInt) -> Result<Vec<GInt>, RootError> {
    let mut divs = vec![GInt::from_int(1)];
    for (pi, e) in factor_gint(z)? {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..e {
                acc = acc.mul(&pi);
                next.push(acc.clone());
            }
        }
        divs = next;
        if divs.len() > CANDIDATE_LIMIT {
            return Err(RootError::TooManyCandidates);
        }
    }
    Ok(divs)
}

/// Scale to Gaussian-integer coefficients.
fn integral_coeffs(p: &Polynomial<GaussRat>) -> Vec<GInt> {
    let mut den = BigInt::one();
    for c in p.coeffs() {
        den = den.lcm(c.re().denom()).lcm(c.im().denom());
    }
    p.coeffs()
        .iter()
        .map(|c| {
            let re = c.re() * BigRational::from_integer(den.clone());
            let im = c.im() * BigRational::from_integer(den.clone());
            GInt::new(re.to_integer(), im.to_integer())
        })
        .collect()
}

/// Distinct roots of `p` lying in Q(i), sorted for determinism.
pub fn gaussian_roots(p: &Polynomial<GaussRat>) -> Result<Vec<GaussRat>, RootError> {
    let mut roots = Vec::new();
    let mut coeffs = p.coeffs().to_vec();
    let zero_mult = coeffs.iter().take_while(|c| c.is_zero()).count();
    if zero_mult > 0 && zero_mult < coeffs.len() {
        roots.push(GaussRat::zero());
        coeffs.drain(..zero_mult);
    }
    let q = Polynomial::new(coeffs);
    if q.degree().unwrap_or(0) == 0 {
        return Ok(roots);
    }
    let ints = integral_coeffs(&q);
    let a0 = ints.first().expect("nonzero polynomial").clone();
    let an = ints.last().expect("nonzero polynomial").clone();
    let num_divs = divisors(&a0)?;
    let den_divs = divisors(&an)?;
    if num_divs.len() * den_divs.len() * 4 > CANDIDATE_LIMIT {
        return Err(RootError::TooManyCandidates);
    }
    let units = [
        GaussRat::from(1),
        GaussRat::from(-1),
        GaussRat::i(),
        -GaussRat::i(),
    ];
    let mut seen = BTreeSet::new();
    for u in &num_divs {
        let u = u.to_gauss();
        for d in &den_divs {
            let base = u.clone() / d.to_gauss();
            for unit in &units {
                let cand = base.clone() * unit.clone();
                let key = (cand.re().clone(), cand.im().clone());
                if seen.insert(key) && q.eval(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort_by(|a, b| {
        (a.re(), a.im()).partial_cmp(&(b.re(), b.im())).expect("rationals are totally ordered")
    });
    Ok(roots)
}

/// Roots of a squarefree polynomial when it splits completely over Q(i).
pub fn split_roots(p: &Polynomial<GaussRat>) -> Result<Option<Vec<GaussRat>>, RootError> {
    let roots = gaussian_roots(p)?;
    Ok((Some(roots.len()) == p.degree()).then_some(roots))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Field;
    use crate::Scalar;

    fn from_roots(roots: &[Scalar]) -> Polynomial<Scalar> {
        roots.iter().fold(Polynomial::constant(Scalar::from_int(3)), |acc, r| {
            &acc * &Polynomial::new(vec![-r.clone(), Scalar::one()])
        })
    }

    #[test]
    fn rational_and_gaussian_roots() {
        let roots = vec![
            Scalar::from_ratio(-7, 3),
            Scalar::from_int(0),
            Scalar::from_parts(1, 2, 3, 5),
            Scalar::from_parts(2, 1, -1, 1),
            Scalar::i(),
        ];
        let found = gaussian_roots(&from_roots(&roots)).unwrap();
        assert_eq!(found.len(), roots.len());
        for r in &roots {
            assert!(found.contains(r));
        }
        assert!(split_roots(&from_roots(&roots)).unwrap().is_some());
    }

    #[test]
    fn irreducible_quadratic_has_no_roots() {
        let p = Polynomial::new(vec![Scalar::from_int(-2), Scalar::zero(), Scalar::one()]);
        assert!(gaussian_roots(&p).unwrap().is_empty());
        assert!(split_roots(&p).unwrap().is_none());
    }

    #[test]
    fn gaussian_factorization_recovers_number() {
        let z = GInt::new(BigInt::from(-390), BigInt::from(130));
        let mut acc = GInt::from_int(1);
        for (pi, e) in factor_gint(&z).unwrap() {
            for _ in 0..e {
                acc = acc.mul(&pi);
            }
        }
        assert_eq!(acc.norm(), z.norm());
    }
}
