//! Moving a point with regular semisimple `X` or `Y` into the slice `M_n`.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::autos::{AffineData, TameGen, TameWord};
use crate::exactnum::roots::split_roots;
use crate::exactnum::Polynomial;
use crate::pathalg::{Alphabet, Letter, Necklace};
use crate::reps::RepPoint;
use crate::{Mat, Poly, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NormalizeError {
    #[error("neither X nor Y is regular semisimple")]
    NotRegularSemisimple,
    #[error("the spectrum does not split over Q(i)")]
    SpectrumNotSplit,
    #[error("point is not in the moment fiber")]
    NotInFiber,
    #[error("normalization failed: {0}")]
    NormalizationFailed(String),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Normalized {
    pub word: TameWord<Scalar>,
    pub gl: Mat,
    pub result: RepPoint<Scalar>,
}

const RETRIES: usize = 8;

/// Eigenvalues if `m` is regular semisimple with spectrum in Q(i).
fn split_spectrum(m: &Mat) -> Result<Vec<Scalar>, NormalizeError> {
    if !m.is_regss() {
        return Err(NormalizeError::NotRegularSemisimple);
    }
    match split_roots(&m.charpoly()) {
        Ok(Some(r)) => Ok(r),
        Ok(None) => Err(NormalizeError::SpectrumNotSplit),
        Err(e) => Err(NormalizeError::NormalizationFailed(e.to_string())),
    }
}

/// `P⁻¹` with `P⁻¹ m P` diagonal in the order of `eig`.
fn diagonalizer(m: &Mat, eig: &[Scalar]) -> Result<Mat, NormalizeError> {
    let n = m.rows();
    let mut p: Option<Mat> = None;
    for l in eig {
        let shifted = m - &Mat::scalar(n, l.clone());
        let vec = shifted.nullspace().into_iter().next().ok_or_else(|| fail("empty eigenspace"))?;
        p = Some(match p {
            None => vec,
            Some(acc) => acc.hstack(&vec),
        });
    }
    p.and_then(|p| p.inverse()).ok_or_else(|| fail("eigenvectors are dependent"))
}

fn fail(msg: &str) -> NormalizeError {
    NormalizeError::NormalizationFailed(msg.into())
}

fn apply(pt: &RepPoint<Scalar>, g: &TameGen<Scalar>) -> Result<RepPoint<Scalar>, NormalizeError> {
    let phi = g.compile().map_err(|e| fail(&e.to_string()))?;
    pt.act_endo(&phi).map_err(|e| fail(&e.to_string()))
}

fn shear(s: Scalar) -> AffineData<Scalar> {
    AffineData::from_t(Mat::from_vec(2, 2, vec![Scalar::one(), s, Scalar::zero(), Scalar::one()])).expect("unimodular")
}

/// `c·p(a)·b` summed over the coefficients of `p`.
pub fn poly_a_b(p: &Poly, c: &Scalar) -> Necklace<Scalar> {
    let terms = p.coeffs().iter().enumerate().map(|(k, x)| {
        let mut w = vec![Letter::A; k];
        w.push(Letter::B);
        (x.clone() * c.clone(), w)
    });
    Necklace::from_terms(Alphabet::Unstarred, terms).expect("unstarred")
}

/// `c·q(a*)·b*`.
pub fn poly_astar_bstar(q: &Poly, c: &Scalar) -> Necklace<Scalar> {
    let terms = q.coeffs().iter().enumerate().map(|(k, x)| {
        let mut w = vec![Letter::AStar; k];
        w.push(Letter::BStar);
        (x.clone() * c.clone(), w)
    });
    Necklace::from_terms(Alphabet::Starred, terms).expect("starred")
}

fn all_letters(f: &Necklace<Scalar>, head: Letter, tail: Letter) -> bool {
    f.terms().all(|(w, _)| {
        let tails = w.iter().filter(|l| **l == tail).count();
        tails == 1 && w.iter().all(|l| *l == head || *l == tail)
    })
}

/// Generators allowed in the normalization: `Λ(p(a)b)`, `Λ′(q(a*)b*)`,
/// `(I, T)` and `F⁻¹`.
pub fn is_p_generator(g: &TameGen<Scalar>) -> bool {
    match g {
        TameGen::Tri(f) => all_letters(f, Letter::A, Letter::B),
        TameGen::OpTri(f) => all_letters(f, Letter::AStar, Letter::BStar),
        TameGen::Aff(d) => {
            let plain = d.s == Mat::identity(2) && d.t.iter().all(Zero::is_zero);
            plain || *d == AffineData::fourier_inv()
        }
    }
}

/// Normalizes `pt`; the result is `pt` acted on by `gl` and then by `word`,
/// and lies in `M_n` and in the moment fiber. Every output is checked.
pub fn normalize_to_mn(pt: &RepPoint<Scalar>) -> Result<Normalized, NormalizeError> {
    if !pt.is_fiber() {
        return Err(NormalizeError::NotInFiber);
    }
    let n = pt.n;
    if pt.in_mn() {
        return Ok(Normalized { word: Vec::new(), gl: Mat::identity(n), result: pt.clone() });
    }
    let mut word: TameWord<Scalar> = Vec::new();
    let mut cur = pt.clone();
    let eig = match split_spectrum(&cur.a) {
        Ok(e) => e,
        Err(ex) => match split_spectrum(&cur.b) {
            Ok(_) => {
                let g = TameGen::Aff(AffineData::fourier_inv());
                cur = apply(&cur, &g)?;
                word.push(g);
                split_spectrum(&cur.a)?
            }
            Err(ey) => {
                return Err(if ex == NormalizeError::SpectrumNotSplit || ey == NormalizeError::SpectrumNotSplit {
                    NormalizeError::SpectrumNotSplit
                } else {
                    ex
                })
            }
        },
    };
    let gl = diagonalizer(&cur.a, &eig)?;
    cur = cur.gl_act(&gl).map_err(|e| fail(&e.to_string()))?;

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut last = String::new();
    for attempt in 0..RETRIES {
        let mut w = word.clone();
        let mut p = cur.clone();
        if attempt > 0 {
            let t = Mat::from_vec(2, 2, vec![
                Scalar::one(),
                Scalar::from(rng.gen_range(-4..=4)),
                Scalar::from(rng.gen_range(-4..=4)),
                Scalar::one(),
            ]);
            if let Ok(d) = AffineData::from_t(t) {
                let g = TameGen::Aff(d);
                p = apply(&p, &g)?;
                w.push(g);
            }
        }
        match slice_steps(&p, &eig, &mut w) {
            Ok(res) => {
                let out = Normalized { word: w, gl: gl.clone(), result: res };
                check(pt, &out)?;
                return Ok(out);
            }
            Err(e) => last = e.to_string(),
        }
    }
    Err(NormalizeError::NormalizationFailed(format!("retries exhausted: {last}")))
}

/// Steps after diagonalization: column mix, kill `v•2`, kill `w2•`.
fn slice_steps(
    pt: &RepPoint<Scalar>,
    eig: &[Scalar],
    word: &mut TameWord<Scalar>,
) -> Result<RepPoint<Scalar>, NormalizeError> {
    let n = pt.n;
    let mut cur = pt.clone();
    let vf = cur.to_vform();
    let s = (0..=2 * n as i64 + 1)
        .map(Scalar::from)
        .find(|s| (0..n).all(|i| !(vf.v[(i, 0)].clone() + s.clone() * vf.v[(i, 1)].clone()).is_zero()))
        .ok_or_else(|| fail("no column mix makes v•1 nonvanishing"))?;
    if !s.is_zero() {
        let g = TameGen::Aff(shear(s));
        cur = apply(&cur, &g)?;
        word.push(g);
    }

    let vf = cur.to_vform();
    let nodes: Vec<(Scalar, Scalar)> =
        (0..n).map(|i| (eig[i].clone(), -(vf.v[(i, 1)].clone() / vf.v[(i, 0)].clone()))).collect();
    let p = Polynomial::interpolate(&nodes).map_err(|e| fail(&e.to_string()))?;
    if !p.is_zero() {
        let g = TameGen::Tri(poly_a_b(&p, &-Scalar::one()));
        cur = apply(&cur, &g)?;
        word.push(g);
    }

    let vf = cur.to_vform();
    let (w1, w2) = (vf.w.row(0), vf.w.row(1));
    let mut krylov: Option<Mat> = None;
    let mut row = w1.clone();
    for _ in 0..n {
        krylov = Some(match krylov {
            None => row.clone(),
            Some(k) => k.vstack(&row),
        });
        row = &row * &vf.y;
    }
    let k = krylov.expect("n ≥ 1");
    let q = k.transpose().solve(&w2.transpose()).ok_or_else(|| fail("Krylov system is singular"))?;
    let q = Polynomial::new(q.data().to_vec());
    if !q.is_zero() {
        let g = TameGen::OpTri(poly_astar_bstar(&q, &-Scalar::one()));
        cur = apply(&cur, &g)?;
        word.push(g);
    }
    Ok(cur)
}

fn check(pt: &RepPoint<Scalar>, out: &Normalized) -> Result<(), NormalizeError> {
    let mut replay = pt.gl_act(&out.gl).map_err(|e| fail(&e.to_string()))?;
    for g in &out.word {
        replay = apply(&replay, g)?;
    }
    if replay != out.result {
        return Err(fail("replayed word disagrees with the result"));
    }
    if !out.result.in_mn() {
        return Err(fail("result is not in M_n"));
    }
    if !out.result.is_fiber() {
        return Err(fail("result left the moment fiber"));
    }
    if !out.word.iter().all(is_p_generator) {
        return Err(fail("word uses a generator outside P"));
    }
    Ok(())
}
