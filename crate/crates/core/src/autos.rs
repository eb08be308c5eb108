//! Tame symplectic automorphisms of the path algebra.

use std::fmt;

use thiserror::Error;

use crate::exactnum::{Field, Matrix, Ring};
use crate::pathalg::{
    necklace_derive, substitute_loops, symplectic_c, Alphabet, Arrow, Letter, LoopMode, NcPoly, Necklace, Path,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutoError {
    #[error("affine data: det S must be 1")]
    DetSNotOne,
    #[error("affine data: T is singular")]
    SingularT,
    #[error("affine data: matrices must be 2x2")]
    BadShape,
    #[error("generator expects a necklace over {expected}, got {got}")]
    WrongAlphabet { expected: Alphabet, got: Alphabet },
}

/// Algebra endomorphism given by the images of the six arrows.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct EndoA<R> {
    images: Vec<NcPoly<R>>,
}

impl<R: Ring> EndoA<R> {
    pub fn identity() -> Self {
        EndoA::from_fn(NcPoly::arrow)
    }

    pub fn from_fn(f: impl Fn(Arrow) -> NcPoly<R>) -> Self {
        EndoA { images: Arrow::ALL.into_iter().map(f).collect() }
    }

    pub fn image(&self, a: Arrow) -> &NcPoly<R> {
        &self.images[a.index()]
    }

    pub fn with_image(mut self, a: Arrow, p: NcPoly<R>) -> Self {
        self.images[a.index()] = p;
        self
    }

    /// Multiplicative and linear extension, fixing `e1` and `e2`.
    pub fn apply(&self, p: &NcPoly<R>) -> NcPoly<R> {
        p.substitute(&|a| self.image(a).clone())
    }

    /// Each image is a combination of paths with the arrow's endpoints.
    pub fn is_homogeneous(&self) -> bool {
        Arrow::ALL.into_iter().all(|a| {
            let img = self.image(a);
            img.is_zero() || img.endpoints() == Some((a.source(), a.target()))
        })
    }

    pub fn is_symplectic(&self) -> bool {
        self.apply(&symplectic_c()) == symplectic_c()
    }

    /// Every arrow multiplied by `c`.
    pub fn scaling(c: R) -> Self {
        EndoA::from_fn(|a| NcPoly::arrow(a).scale(&c))
    }
}

/// `r ↦ φ̂(ψ(r))`.
pub fn compose<R: Ring>(phi: &EndoA<R>, psi: &EndoA<R>) -> EndoA<R> {
    EndoA::from_fn(|a| phi.apply(psi.image(a)))
}

/// Compose a sequence left to right: `g1 ∘ g2 ∘ … ∘ gk`.
pub fn compose_all<'a, R: Ring + 'a>(items: impl IntoIterator<Item = &'a EndoA<R>>) -> EndoA<R> {
    items.into_iter().fold(EndoA::identity(), |acc, g| compose(&acc, g))
}

impl<R: Ring + fmt::Display> fmt::Display for EndoA<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in Arrow::ALL.into_iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{a} -> {}", self.image(a))?;
        }
        Ok(())
    }
}

fn check_alphabet<R: Ring>(f: &Necklace<R>, expected: Alphabet) -> Result<(), AutoError> {
    if f.is_zero() || f.alphabet() == expected {
        Ok(())
    } else {
        Err(AutoError::WrongAlphabet { expected, got: f.alphabet() })
    }
}

fn arrow<R: Ring>(a: Arrow) -> NcPoly<R> {
    NcPoly::arrow(a)
}

/// The strictly triangular automorphism of an element over `{a, b}`, with
/// `b = x·y` substituted.
pub fn lambda_tri<R: Ring>(f: &Necklace<R>) -> Result<EndoA<R>, AutoError> {
    check_alphabet(f, Alphabet::Unstarred)?;
    let da = substitute_loops(&necklace_derive(f, Letter::A), LoopMode::Unstarred).expect("alphabet checked");
    let db = substitute_loops(&necklace_derive(f, Letter::B), LoopMode::Unstarred).expect("alphabet checked");
    Ok(EndoA::identity()
        .with_image(Arrow::AStar, &arrow(Arrow::AStar) + &da)
        .with_image(Arrow::XStar, &arrow(Arrow::XStar) + &(&arrow(Arrow::Y) * &db))
        .with_image(Arrow::YStar, &arrow(Arrow::YStar) + &(&db * &arrow(Arrow::X))))
}

/// The strictly op-triangular automorphism of an element over `{a*, b*}`,
/// with `b* = y*·x*` substituted.
pub fn lambda_op<R: Ring>(f: &Necklace<R>) -> Result<EndoA<R>, AutoError> {
    check_alphabet(f, Alphabet::Starred)?;
    let da = substitute_loops(&necklace_derive(f, Letter::AStar), LoopMode::Starred).expect("alphabet checked");
    let db = substitute_loops(&necklace_derive(f, Letter::BStar), LoopMode::Starred).expect("alphabet checked");
    Ok(EndoA::identity()
        .with_image(Arrow::A, &arrow(Arrow::A) + &da)
        .with_image(Arrow::X, &arrow(Arrow::X) + &(&db * &arrow(Arrow::YStar)))
        .with_image(Arrow::Y, &arrow(Arrow::Y) + &(&arrow(Arrow::XStar) * &db)))
}

/// Affine data: `S ∈ SL2` and translation `t` on the `(a, a*)` plane, and
/// `T ∈ GL2` on the `(x, y*)` and `(x*, y)` pairs.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineData<F> {
    pub s: Matrix<F>,
    pub t: [F; 2],
    pub tm: Matrix<F>,
}

fn mat2<F: Field>(entries: [[i64; 2]; 2]) -> Matrix<F> {
    Matrix::from_fn(2, 2, |i, j| F::from_int(entries[i][j]))
}

impl<F: Field> AffineData<F> {
    pub fn new(s: Matrix<F>, t: [F; 2], tm: Matrix<F>) -> Result<Self, AutoError> {
        let d = AffineData { s, t, tm };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<(), AutoError> {
        if self.s.shape() != (2, 2) || self.tm.shape() != (2, 2) {
            return Err(AutoError::BadShape);
        }
        if self.s.det() != F::one() {
            return Err(AutoError::DetSNotOne);
        }
        if self.tm.det().is_zero() {
            return Err(AutoError::SingularT);
        }
        Ok(())
    }

    /// `(I, T)` with no translation.
    pub fn from_t(tm: Matrix<F>) -> Result<Self, AutoError> {
        AffineData::new(Matrix::identity(2), [F::zero(), F::zero()], tm)
    }

    pub fn identity() -> Self {
        AffineData::from_t(Matrix::identity(2)).expect("identity is valid")
    }

    /// The central scaling `z_λ`.
    pub fn scaling(lambda: F) -> Result<Self, AutoError> {
        AffineData::from_t(Matrix::scalar(2, lambda))
    }

    pub fn fourier() -> Self {
        AffineData::new(mat2([[0, -1], [1, 0]]), [F::zero(), F::zero()], mat2([[0, 1], [-1, 0]]))
            .expect("valid data")
    }

    pub fn fourier_inv() -> Self {
        AffineData::new(mat2([[0, 1], [-1, 0]]), [F::zero(), F::zero()], mat2([[0, -1], [1, 0]]))
            .expect("valid data")
    }

    pub fn inverse(&self) -> Self {
        let s_inv = self.s.inverse().expect("det S = 1");
        let t = Matrix::from_vec(2, 1, self.t.to_vec());
        let t_new = -&(&s_inv * &t);
        AffineData {
            t: [t_new[(0, 0)].clone(), t_new[(1, 0)].clone()],
            s: s_inv,
            tm: self.tm.inverse().expect("T invertible"),
        }
    }
}

pub fn affine_endo<F: Field>(d: &AffineData<F>) -> Result<EndoA<F>, AutoError> {
    d.validate()?;
    let (s, t, tm) = (&d.s, &d.t, &d.tm);
    let ti = tm.inverse().ok_or(AutoError::SingularT)?;
    let lin = |c1: &F, r1: Arrow, c2: &F, r2: Arrow| &arrow(r1).scale(c1) + &arrow(r2).scale(c2);
    let e1 = NcPoly::e1();
    Ok(EndoA::from_fn(|a| match a {
        Arrow::A => &lin(&s[(0, 0)], Arrow::A, &s[(0, 1)], Arrow::AStar) + &e1.scale(&t[0]),
        Arrow::AStar => &lin(&s[(1, 0)], Arrow::A, &s[(1, 1)], Arrow::AStar) + &e1.scale(&t[1]),
        Arrow::X => lin(&tm[(0, 0)], Arrow::X, &-tm[(0, 1)].clone(), Arrow::YStar),
        Arrow::YStar => lin(&-tm[(1, 0)].clone(), Arrow::X, &tm[(1, 1)], Arrow::YStar),
        Arrow::XStar => lin(&ti[(0, 0)], Arrow::XStar, &ti[(1, 0)], Arrow::Y),
        Arrow::Y => lin(&ti[(0, 1)], Arrow::XStar, &ti[(1, 1)], Arrow::Y),
    }))
}

/// `(a, a*, x, x*, y, y*) ↦ (−a*, a, −y*, y, −x*, x)`.
pub fn fourier<F: Field>() -> EndoA<F> {
    affine_endo(&AffineData::fourier()).expect("valid data")
}

pub fn fourier_inv<F: Field>() -> EndoA<F> {
    affine_endo(&AffineData::fourier_inv()).expect("valid data")
}

pub fn z_lambda<F: Field>(lambda: F) -> Result<EndoA<F>, AutoError> {
    affine_endo(&AffineData::scaling(lambda)?)
}

/// The `λ` with `ψ = φ ∘ z_λ`, if one exists.
pub fn ptaut_equal<F: Field>(phi: &EndoA<F>, psi: &EndoA<F>) -> Option<F> {
    let (px, qx) = (phi.image(Arrow::X), psi.image(Arrow::X));
    let (path, c) = px.terms().next()?;
    let lambda = qx.coeff(path) / c.clone();
    let lambda_inv = lambda.inv()?;
    let ok = phi.image(Arrow::A) == psi.image(Arrow::A)
        && phi.image(Arrow::AStar) == psi.image(Arrow::AStar)
        && &px.scale(&lambda) == qx
        && &phi.image(Arrow::YStar).scale(&lambda) == psi.image(Arrow::YStar)
        && &phi.image(Arrow::XStar).scale(&lambda_inv) == psi.image(Arrow::XStar)
        && &phi.image(Arrow::Y).scale(&lambda_inv) == psi.image(Arrow::Y);
    ok.then_some(lambda)
}

/// A tame generator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TameGen<F> {
    Tri(Necklace<F>),
    OpTri(Necklace<F>),
    Aff(AffineData<F>),
}

impl<F: Field> TameGen<F> {
    pub fn compile(&self) -> Result<EndoA<F>, AutoError> {
        match self {
            TameGen::Tri(f) => lambda_tri(f),
            TameGen::OpTri(f) => lambda_op(f),
            TameGen::Aff(d) => affine_endo(d),
        }
    }

    pub fn inverse(&self) -> TameGen<F> {
        match self {
            TameGen::Tri(f) => TameGen::Tri(f.neg()),
            TameGen::OpTri(f) => TameGen::OpTri(f.neg()),
            TameGen::Aff(d) => TameGen::Aff(d.inverse()),
        }
    }
}

pub type TameWord<F> = Vec<TameGen<F>>;

/// `g1 ∘ … ∘ gk`; acting on a point this applies `g1` first.
pub fn compile_word<F: Field>(w: &[TameGen<F>]) -> Result<EndoA<F>, AutoError> {
    let mut acc = EndoA::identity();
    for g in w {
        acc = compose(&acc, &g.compile()?);
    }
    Ok(acc)
}

pub fn invert_word<F: Field>(w: &[TameGen<F>]) -> TameWord<F> {
    w.iter().rev().map(TameGen::inverse).collect()
}

/// Necklace built from unit-coefficient compact words.
pub fn necklace_of<F: Field>(terms: &[(i64, &str)]) -> Necklace<F> {
    terms.iter().fold(Necklace::zero(Alphabet::Unstarred), |acc, (c, w)| {
        let n = Necklace::parse(w).expect("well-formed word").scale(&F::from_int(*c));
        if acc.is_zero() {
            n
        } else {
            acc.add(&n)
        }
    })
}

/// Path from arrow names, for tests and goldens.
pub fn path_of(names: &[&str]) -> Path {
    if names == ["e1"] {
        return Path::e1();
    }
    if names == ["e2"] {
        return Path::e2();
    }
    Path::word(names.iter().map(|n| n.parse().expect("arrow name")).collect()).expect("composable")
}
