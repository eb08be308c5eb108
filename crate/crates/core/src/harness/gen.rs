//! Seeded random inputs for the verification suites.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::autos::{AffineData, TameGen, TameWord};
use crate::exactnum::{Matrix, Polynomial};
use crate::nagao::{constant_polymat, polymat, GammaElem, PolyMat2};
use crate::pathalg::{Alphabet, Letter, Necklace};
use crate::reps::RepPoint;
use crate::{Mat, Poly, Scalar};

/// Independent stream for one trial of one run.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Small Gaussian rational; imaginary parts appear in about one draw in four.
pub fn scalar<R: Rng>(rng: &mut R) -> Scalar {
    let den = if rng.gen_bool(0.25) { 2 } else { 1 };
    let re = rng.gen_range(-3..=3);
    let im = if rng.gen_bool(0.25) { rng.gen_range(-2..=2) } else { 0 };
    Scalar::from_parts(re, den, im, 1)
}

pub fn nonzero_scalar<R: Rng>(rng: &mut R) -> Scalar {
    loop {
        let s = scalar(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Nonzero small integer, for coefficients that should stay tame.
pub fn small_int<R: Rng>(rng: &mut R) -> Scalar {
    let k = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
    Scalar::from(k)
}

pub fn word<R: Rng>(rng: &mut R, letters: &[Letter], max_len: usize) -> Vec<Letter> {
    let len = rng.gen_range(1..=max_len.max(1));
    (0..len).map(|_| *letters.choose(rng).expect("nonempty alphabet")).collect()
}

fn letters(alpha: Alphabet) -> Vec<Letter> {
    [Letter::A, Letter::B, Letter::AStar, Letter::BStar].into_iter().filter(|l| alpha.contains(*l)).collect()
}

/// Nonzero necklace with at most `max_terms` words of length at most `max_len`.
pub fn necklace<R: Rng>(rng: &mut R, alpha: Alphabet, max_terms: usize, max_len: usize) -> Necklace<Scalar> {
    let ls = letters(alpha);
    loop {
        let k = rng.gen_range(1..=max_terms.max(1));
        let terms: Vec<_> = (0..k).map(|_| (small_int(rng), word(rng, &ls, max_len))).collect();
        let f = Necklace::from_terms(alpha, terms).expect("letters drawn from the alphabet");
        if !f.is_zero() {
            return f;
        }
    }
}

/// Determinant-one 2×2 matrix as a short product of shears.
pub fn sl2<R: Rng>(rng: &mut R) -> Mat {
    let mut m = Mat::identity(2);
    for _ in 0..rng.gen_range(1..=2) {
        let c = scalar(rng);
        let sh = if rng.gen_bool(0.5) {
            Mat::from_vec(2, 2, vec![Scalar::one(), c, Scalar::zero(), Scalar::one()])
        } else {
            Mat::from_vec(2, 2, vec![Scalar::one(), Scalar::zero(), c, Scalar::one()])
        };
        m = &m * &sh;
    }
    m
}

/// Invertible 2×2 matrix.
pub fn gl2<R: Rng>(rng: &mut R) -> Mat {
    let d = Mat::diag(&[nonzero_scalar(rng), nonzero_scalar(rng)]);
    let m = &sl2(rng) * &d;
    if rng.gen_bool(0.3) {
        &m * &Mat::from_vec(2, 2, vec![Scalar::zero(), Scalar::one(), Scalar::one(), Scalar::zero()])
    } else {
        m
    }
}

/// Unimodular `n×n` matrix: unit lower times unit upper, small entries.
pub fn gln<R: Rng>(rng: &mut R, n: usize) -> Mat {
    let lo = Mat::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => Scalar::one(),
        std::cmp::Ordering::Greater => Scalar::from(rng.gen_range(-1..=1)),
        std::cmp::Ordering::Less => Scalar::zero(),
    });
    let up = Mat::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => Scalar::one(),
        std::cmp::Ordering::Less => Scalar::from(rng.gen_range(-1..=1)),
        std::cmp::Ordering::Greater => Scalar::zero(),
    });
    &lo * &up
}

pub fn affine<R: Rng>(rng: &mut R) -> AffineData<Scalar> {
    let t = if rng.gen_bool(0.5) { [scalar(rng), scalar(rng)] } else { [Scalar::zero(), Scalar::zero()] };
    AffineData::new(sl2(rng), t, gl2(rng)).expect("det S = 1 and T invertible")
}

/// Random tame generator; necklace words have length at most `max_len`.
pub fn tame_gen<R: Rng>(rng: &mut R, max_len: usize) -> TameGen<Scalar> {
    match rng.gen_range(0..3) {
        0 => TameGen::Tri(necklace(rng, Alphabet::Unstarred, 2, max_len)),
        1 => TameGen::OpTri(necklace(rng, Alphabet::Starred, 2, max_len)),
        _ => TameGen::Aff(affine(rng)),
    }
}

pub fn tame_word<R: Rng>(rng: &mut R, max_gens: usize, max_len: usize) -> TameWord<Scalar> {
    let k = rng.gen_range(1..=max_gens.max(1));
    (0..k).map(|_| tame_gen(rng, max_len)).collect()
}

/// Pairwise distinct small abscissae.
pub fn distinct_scalars<R: Rng>(rng: &mut R, n: usize) -> Vec<Scalar> {
    let mut out: Vec<Scalar> = Vec::with_capacity(n);
    while out.len() < n {
        let s = scalar(rng);
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

/// Calogero–Moser slice point with random positions and momenta.
pub fn cm_point<R: Rng>(rng: &mut R, n: usize, tau: &Scalar) -> RepPoint<Scalar> {
    let x = distinct_scalars(rng, n);
    let p: Vec<Scalar> = (0..n).map(|_| scalar(rng)).collect();
    RepPoint::cm_point(tau.clone(), &x, &p).expect("distinct abscissae and nonzero tau")
}

/// A point of the moment fiber: a slice point moved by a short tame word
/// and a unimodular change of basis.
pub fn fiber_point<R: Rng>(rng: &mut R, n: usize, tau: &Scalar) -> RepPoint<Scalar> {
    let base = cm_point(rng, n, tau);
    let k = rng.gen_range(1..=2);
    let mut pt = base;
    for _ in 0..k {
        let g = tame_gen(rng, 2).compile().expect("valid generator");
        pt = pt.act_endo(&g).expect("homogeneous images");
    }
    pt.gl_act(&gln(rng, n)).expect("unimodular")
}

/// Fiber point from a 64-bit seed.
pub fn random_fiber_point(n: usize, tau: &Scalar, seed: u64) -> RepPoint<Scalar> {
    fiber_point(&mut ChaCha8Rng::seed_from_u64(seed), n, tau)
}

/// Polynomial of degree at most `deg`, coefficients small integers.
pub fn poly<R: Rng>(rng: &mut R, deg: usize) -> Poly {
    let d = rng.gen_range(0..=deg);
    Polynomial::new((0..=d).map(|_| Scalar::from(rng.gen_range(-2..=2))).collect())
}

/// Polynomial without constant term, degree at most `deg`.
pub fn poly_no_constant<R: Rng>(rng: &mut R, deg: usize) -> Poly {
    let d = rng.gen_range(1..=deg.max(1));
    let mut c: Vec<Scalar> = (0..=d).map(|_| Scalar::from(rng.gen_range(-2..=2))).collect();
    c[0] = Scalar::zero();
    Polynomial::new(c)
}

/// Element of `B2(K)`.
pub fn b2k<R: Rng>(rng: &mut R) -> Mat {
    Mat::from_vec(2, 2, vec![nonzero_scalar(rng), Scalar::zero(), scalar(rng), nonzero_scalar(rng)])
}

/// One generator of `GL2(K[z])`: a constant invertible matrix or a lower
/// unitriangular polynomial matrix.
pub fn polymat_gen<R: Rng>(rng: &mut R, deg: usize) -> PolyMat2<Scalar> {
    if rng.gen_bool(0.4) {
        constant_polymat(&gl2(rng))
    } else {
        polymat([[Poly::one(), Poly::zero()], [poly(rng, deg), Poly::one()]])
    }
}

/// Product of at most `max_gens` generators.
pub fn polymat2<R: Rng>(rng: &mut R, max_gens: usize, deg: usize) -> PolyMat2<Scalar> {
    let k = rng.gen_range(1..=max_gens.max(1));
    (0..k).fold(Matrix::identity(2), |acc, _| &acc * &polymat_gen(rng, deg))
}

pub fn gamma<R: Rng>(rng: &mut R, max_gens: usize, deg: usize) -> GammaElem<Scalar> {
    GammaElem::new(poly_no_constant(rng, deg), polymat2(rng, max_gens, deg)).expect("unit determinant")
}

