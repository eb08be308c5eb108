//! `GL2(K[z])` as an amalgamated product, and the maps into the tame group.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::autos::{affine_endo, compose, lambda_op, AffineData, AutoError, EndoA};
use crate::exactnum::{Field, Matrix, Polynomial};
use crate::pathalg::{Alphabet, Letter, Necklace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NagaoError {
    #[error("expected a 2x2 matrix")]
    BadShape,
    #[error("determinant is not a nonzero constant")]
    NonUnitDeterminant,
    #[error("matrix is not lower triangular with constant invertible diagonal")]
    NotInB2,
    #[error("polynomial has a nonzero constant term")]
    ConstantTerm,
    #[error(transparent)]
    Auto(#[from] AutoError),
}

/// 2×2 matrix over `K[z]`.
pub type PolyMat2<F> = Matrix<Polynomial<F>>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NagaoFactor<F> {
    /// Element of `GL2(K)`.
    C(Matrix<F>),
    /// Element of `B2(K[z])`.
    B(PolyMat2<F>),
}

impl<F: Field> NagaoFactor<F> {
    pub fn to_polymat(&self) -> PolyMat2<F> {
        match self {
            NagaoFactor::C(m) => constant_polymat(m),
            NagaoFactor::B(m) => m.clone(),
        }
    }

    fn is_c(&self) -> bool {
        matches!(self, NagaoFactor::C(_))
    }
}

/// An alternating product of `C` and `B` factors.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct NagaoWord<F> {
    pub factors: Vec<NagaoFactor<F>>,
}

impl<F: Field> NagaoWord<F> {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// No two neighbours share a tag and every `B` factor lies in `B2(K[z])`.
    pub fn is_alternating(&self) -> bool {
        let tags_ok = self.factors.windows(2).all(|w| w[0].is_c() != w[1].is_c());
        let b_ok = self.factors.iter().all(|f| match f {
            NagaoFactor::B(m) => b2_split(m).is_ok(),
            NagaoFactor::C(m) => m.shape() == (2, 2) && !m.det().is_zero(),
        });
        tags_ok && b_ok
    }
}

impl<F: Field + fmt::Display> fmt::Display for NagaoWord<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|x| match x {
                NagaoFactor::C(m) => format!("C{}", show_rows(&m.to_rows())),
                NagaoFactor::B(m) => format!("B{}", show_rows(&m.to_rows())),
            })
            .collect();
        write!(f, "{}", parts.join("·"))
    }
}

fn show_rows<T: fmt::Display>(rows: &[Vec<T>]) -> String {
    let inner: Vec<String> = rows
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", inner.join(", "))
}

pub fn constant_polymat<F: Field>(m: &Matrix<F>) -> PolyMat2<F> {
    m.map(|c| Polynomial::constant(c.clone()))
}

/// `m` as a constant matrix, if all entries are constant.
pub fn as_constant<F: Field>(m: &PolyMat2<F>) -> Option<Matrix<F>> {
    m.data().iter().all(Polynomial::is_constant).then(|| m.map(|p| p.coeff(0)))
}

pub fn polymat<F: Field>(rows: [[Polynomial<F>; 2]; 2]) -> PolyMat2<F> {
    let [[a, b], [c, d]] = rows;
    Matrix::from_vec(2, 2, vec![a, b, c, d])
}

pub fn det2<F: Field>(m: &PolyMat2<F>) -> Polynomial<F> {
    &(&m[(0, 0)] * &m[(1, 1)]) - &(&m[(0, 1)] * &m[(1, 0)])
}

/// Checks the `GL2(K[z])` invariants and returns the determinant.
pub fn check_unit<F: Field>(m: &PolyMat2<F>) -> Result<F, NagaoError> {
    if m.shape() != (2, 2) {
        return Err(NagaoError::BadShape);
    }
    let d = det2(m);
    if !d.is_constant() || d.is_zero() {
        return Err(NagaoError::NonUnitDeterminant);
    }
    Ok(d.coeff(0))
}

fn swap<F: Field>() -> Matrix<F> {
    Matrix::from_vec(2, 2, vec![F::zero(), F::one(), F::one(), F::zero()])
}

fn lower_unit<F: Field>(p: Polynomial<F>) -> PolyMat2<F> {
    polymat([[Polynomial::one(), Polynomial::zero()], [p, Polynomial::one()]])
}

/// Splits `B = [[1,0],[u,1]]·diag(d1,d2)`.
pub fn b2_split<F: Field>(b: &PolyMat2<F>) -> Result<(Polynomial<F>, (F, F)), NagaoError> {
    if b.shape() != (2, 2) {
        return Err(NagaoError::BadShape);
    }
    let (d1, d2) = (&b[(0, 0)], &b[(1, 1)]);
    if !b[(0, 1)].is_zero() || !d1.is_constant() || !d2.is_constant() || d1.is_zero() || d2.is_zero() {
        return Err(NagaoError::NotInB2);
    }
    let (d1, d2) = (d1.coeff(0), d2.coeff(0));
    let u = b[(1, 0)].scale(&d1.inv().expect("nonzero"));
    Ok((u, (d1, d2)))
}

/// Euclidean reduction of the first column, then a normal-form pass that
/// merges neighbours and pushes `B2(K)` pieces into adjacent `B` factors.
pub fn nagao_decompose<F: Field>(m: &PolyMat2<F>) -> Result<NagaoWord<F>, NagaoError> {
    check_unit(m)?;
    // Left factors E with E_k⋯E_1·M = U; M = E_1⁻¹⋯E_k⁻¹·U.
    let mut left: Vec<NagaoFactor<F>> = Vec::new();
    let mut cur = m.clone();
    while !cur[(1, 0)].is_zero() {
        let (top, bot) = (&cur[(0, 0)], &cur[(1, 0)]);
        if top.is_zero() || top.degree() > bot.degree() {
            cur = &constant_polymat(&swap()) * &cur;
            left.push(NagaoFactor::C(swap()));
        } else {
            let (q, _) = bot.divmod(top).expect("nonzero divisor");
            cur = &lower_unit(-q.clone()) * &cur;
            left.push(NagaoFactor::B(lower_unit(q)));
        }
    }
    // cur = [[c, p], [0, d]] with c, d nonzero constants.
    let c = cur[(0, 0)].coeff(0);
    let d = cur[(1, 1)].coeff(0);
    let p = cur[(0, 1)].clone();
    if p.is_constant() {
        left.push(NagaoFactor::C(as_constant(&cur).expect("constant")));
    } else {
        let mid = polymat([[Polynomial::constant(d), Polynomial::zero()], [p, Polynomial::constant(c)]]);
        left.extend([NagaoFactor::C(swap()), NagaoFactor::B(mid), NagaoFactor::C(swap())]);
    }
    let word = NagaoWord { factors: normal_form(left) };
    debug_assert!(reassemble(&word) == *m);
    Ok(word)
}

fn in_b2k<F: Field>(m: &Matrix<F>) -> bool {
    m[(0, 1)].is_zero()
}

fn is_identity<F: Field>(f: &NagaoFactor<F>) -> bool {
    match f {
        NagaoFactor::C(m) => *m == Matrix::identity(2),
        NagaoFactor::B(m) => *m == Matrix::identity(2),
    }
}

/// Rewrites until no rule applies. Each rule shortens the word or turns a
/// constant `B` into a `C`, so the loop terminates.
fn normal_form<F: Field>(mut fs: Vec<NagaoFactor<F>>) -> Vec<NagaoFactor<F>> {
    use NagaoFactor::{B, C};
    loop {
        if let Some(i) = fs.iter().position(is_identity) {
            fs.remove(i);
            continue;
        }
        if let Some(i) = fs.iter().position(|f| matches!(f, B(m) if as_constant(m).is_some())) {
            let B(m) = &fs[i] else { unreachable!() };
            fs[i] = C(as_constant(m).expect("constant"));
            continue;
        }
        if let Some(i) = (1..fs.len()).find(|&i| fs[i - 1].is_c() == fs[i].is_c()) {
            let merged = match (&fs[i - 1], &fs[i]) {
                (C(x), C(y)) => C(x * y),
                (B(x), B(y)) => B(x * y),
                _ => unreachable!(),
            };
            fs.splice(i - 1..=i, [merged]);
            continue;
        }
        let absorb = (0..fs.len()).find_map(|i| match &fs[i] {
            C(m) if in_b2k(m) => {
                if i + 1 < fs.len() && !fs[i + 1].is_c() {
                    Some((i, i + 1))
                } else if i > 0 && !fs[i - 1].is_c() {
                    Some((i - 1, i))
                } else {
                    None
                }
            }
            _ => None,
        });
        if let Some((lo, hi)) = absorb {
            let prod = &fs[lo].to_polymat() * &fs[hi].to_polymat();
            fs.splice(lo..=hi, [B(prod)]);
            continue;
        }
        return fs;
    }
}

/// Ordered product of the factors.
pub fn reassemble<F: Field>(w: &NagaoWord<F>) -> PolyMat2<F> {
    w.factors.iter().fold(Matrix::identity(2), |acc, f| &acc * &f.to_polymat())
}

/// `T ↦ (I, Tᵀ)`; transposing makes the assignment multiplicative under
/// [`compose`].
pub fn j1<F: Field>(t: &Matrix<F>) -> Result<EndoA<F>, NagaoError> {
    if t.shape() != (2, 2) {
        return Err(NagaoError::BadShape);
    }
    Ok(affine_endo(&AffineData::from_t(t.transpose())?)?)
}

/// `p(a*)·b*` as a necklace.
fn poly_astar_bstar<F: Field>(p: &Polynomial<F>) -> Necklace<F> {
    let terms = p.coeffs().iter().enumerate().map(|(k, c)| {
        let mut w = vec![Letter::AStar; k];
        w.push(Letter::BStar);
        (c.clone(), w)
    });
    Necklace::from_terms(Alphabet::Starred, terms).expect("starred letters")
}

pub fn j2<F: Field>(b: &PolyMat2<F>) -> Result<EndoA<F>, NagaoError> {
    let (u, (d1, d2)) = b2_split(b)?;
    let tri = lambda_op(&poly_astar_bstar(&u).neg())?;
    Ok(compose(&tri, &j1(&Matrix::diag(&[d1, d2]))?))
}

/// `Λ′(−p(a*))`: only `a` moves.
pub fn j3<F: Field>(p: &Polynomial<F>) -> Result<EndoA<F>, NagaoError> {
    if !p.coeff(0).is_zero() {
        return Err(NagaoError::ConstantTerm);
    }
    let terms = p.coeffs().iter().enumerate().skip(1).map(|(k, c)| (-c.clone(), vec![Letter::AStar; k]));
    let f = Necklace::from_terms(Alphabet::Starred, terms).expect("starred letters");
    Ok(lambda_op(&f)?)
}

pub fn k_map<F: Field>(m: &PolyMat2<F>) -> Result<EndoA<F>, NagaoError> {
    let w = nagao_decompose(m)?;
    word_image(&w)
}

/// Folds `j1`/`j2` over the factors in order.
pub fn word_image<F: Field>(w: &NagaoWord<F>) -> Result<EndoA<F>, NagaoError> {
    let mut acc = EndoA::identity();
    for f in &w.factors {
        let img = match f {
            NagaoFactor::C(m) => j1(m)?,
            NagaoFactor::B(m) => j2(m)?,
        };
        acc = compose(&acc, &img);
    }
    Ok(acc)
}

/// Element `(p, M)` of the direct product; `M` is kept modulo scalars.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GammaElem<F> {
    p: Polynomial<F>,
    m: PolyMat2<F>,
}

impl<F: Field> GammaElem<F> {
    pub fn new(p: Polynomial<F>, m: PolyMat2<F>) -> Result<Self, NagaoError> {
        if !p.coeff(0).is_zero() {
            return Err(NagaoError::ConstantTerm);
        }
        check_unit(&m)?;
        Ok(GammaElem { p, m: normalize_scalar(&m) })
    }

    pub fn identity() -> Self {
        GammaElem { p: Polynomial::zero(), m: Matrix::identity(2) }
    }

    pub fn p(&self) -> &Polynomial<F> {
        &self.p
    }

    pub fn m(&self) -> &PolyMat2<F> {
        &self.m
    }

    pub fn mul(&self, other: &Self) -> Self {
        GammaElem { p: &self.p + &other.p, m: normalize_scalar(&(&self.m * &other.m)) }
    }
}

/// Scales so the first nonzero entry, scanning row by row, is monic.
pub fn normalize_scalar<F: Field>(m: &PolyMat2<F>) -> PolyMat2<F> {
    match m.data().iter().find(|p| !p.is_zero()) {
        Some(p) => {
            let s = Polynomial::constant(p.leading().expect("nonzero").inv().expect("nonzero"));
            m.map(|x| x * &s)
        }
        None => m.clone(),
    }
}

pub fn i_map<F: Field>(g: &GammaElem<F>) -> Result<EndoA<F>, NagaoError> {
    Ok(compose(&j3(&g.p)?, &k_map(&g.m)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autos::{lambda_op, ptaut_equal, z_lambda};
    use crate::pathalg::{Arrow, NcPoly};
    use crate::{Poly, Scalar};

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d)
    }

    fn pc(c: i64) -> Poly {
        Poly::constant(Scalar::from(c))
    }

    fn cm(e: [[i64; 2]; 2]) -> Matrix<Scalar> {
        Matrix::from_fn(2, 2, |i, j| Scalar::from(e[i][j]))
    }

    fn arrow(a: Arrow) -> NcPoly<Scalar> {
        NcPoly::arrow(a)
    }

    #[test]
    fn b2_split_examples() {
        let m = polymat([[pc(2), pc(0)], [Poly::z(), pc(3)]]);
        let (u, d) = b2_split(&m).unwrap();
        assert_eq!(u, Poly::z().scale(&q(1, 2)));
        assert_eq!(d, (Scalar::from(2), Scalar::from(3)));
        assert_eq!(b2_split(&Matrix::<Poly>::identity(2)).unwrap(), (Poly::zero(), (Scalar::one(), Scalar::one())));
        let p = Poly::new(vec![q(1, 1), q(0, 1), q(-2, 3)]);
        assert_eq!(b2_split(&lower_unit(p.clone())).unwrap().0, p);
        assert_eq!(b2_split(&polymat([[pc(1), Poly::z()], [pc(0), pc(1)]])), Err(NagaoError::NotInB2));
    }

    #[test]
    fn decompose_examples() {
        let c = constant_polymat(&cm([[1, 2], [3, 4]]));
        assert_eq!(nagao_decompose(&c).unwrap().factors, vec![NagaoFactor::C(cm([[1, 2], [3, 4]]))]);
        let b = lower_unit(Poly::z());
        assert_eq!(nagao_decompose(&b).unwrap().factors, vec![NagaoFactor::B(b.clone())]);
        let upper = polymat([[pc(1), Poly::z()], [pc(0), pc(1)]]);
        let w = nagao_decompose(&upper).unwrap();
        assert_eq!(w.factors, vec![NagaoFactor::C(swap()), NagaoFactor::B(b), NagaoFactor::C(swap())]);
        assert_eq!(reassemble(&NagaoWord::<Scalar>::default()), Matrix::identity(2));
        let bad = polymat([[Poly::z(), pc(0)], [pc(0), pc(1)]]);
        assert_eq!(nagao_decompose(&bad), Err(NagaoError::NonUnitDeterminant));
    }

    #[test]
    fn decompose_long_product() {
        let z = Poly::z();
        let mut m = constant_polymat(&cm([[0, 1], [1, 0]]));
        for k in 1..5 {
            let e = polymat([[pc(1), z.clone()], [pc(0), pc(1)]]);
            let f = lower_unit(&(&z * &z) + &pc(k));
            m = &(&m * &e) * &f;
        }
        let w = nagao_decompose(&m).unwrap();
        assert_eq!(reassemble(&w), m);
        assert!(w.is_alternating());
    }

    #[test]
    fn j_maps() {
        assert_eq!(j1(&cm([[1, 0], [0, 1]])).unwrap(), EndoA::identity());
        assert_eq!(j1(&Matrix::scalar(2, Scalar::from(3))).unwrap(), z_lambda(Scalar::from(3)).unwrap());
        let sw = j1(&swap()).unwrap();
        assert_eq!(sw.image(Arrow::X), &-&arrow(Arrow::YStar));
        assert_eq!(sw.image(Arrow::YStar), &-&arrow(Arrow::X));
        assert!(sw.is_symplectic());

        let p = Poly::new(vec![q(0, 1), q(2, 1), q(1, 3)]);
        let expect = lambda_op(&poly_astar_bstar(&p).neg()).unwrap();
        assert_eq!(j2(&lower_unit(p.clone())).unwrap(), expect);
        let d = constant_polymat(&cm([[2, 0], [0, 5]]));
        assert_eq!(j2(&d).unwrap(), affine_endo(&AffineData::from_t(cm([[2, 0], [0, 5]])).unwrap()).unwrap());

        assert_eq!(j3(&Poly::zero()).unwrap(), EndoA::identity());
        let sq = j3(&Poly::monomial(Scalar::one(), 2)).unwrap();
        assert_eq!(sq.image(Arrow::A), &(&arrow(Arrow::A) - &arrow(Arrow::AStar).scale(&Scalar::from(2))));
        let lin = j3(&Poly::z()).unwrap();
        assert_eq!(lin.image(Arrow::A), &(&arrow(Arrow::A) - &NcPoly::e1()));
        assert_eq!(j3(&pc(1)), Err(NagaoError::ConstantTerm));
    }

    #[test]
    fn j2_conjugation() {
        let (al, be) = (Scalar::from(2), Scalar::from(7));
        let d = constant_polymat(&Matrix::diag(&[al.clone(), be.clone()]));
        let di = constant_polymat(&Matrix::diag(&[al.inv().unwrap(), be.inv().unwrap()]));
        let p = Poly::new(vec![q(1, 1), q(-1, 2), q(0, 1), q(3, 1)]);
        let lhs = compose(&compose(&j2(&d).unwrap(), &j2(&lower_unit(p.clone())).unwrap()), &j2(&di).unwrap());
        let rhs = j2(&lower_unit(p.scale(&(be / al)))).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn upper_unitriangular_image() {
        let k = k_map(&polymat([[pc(1), Poly::z()], [pc(0), pc(1)]])).unwrap();
        let (a, astar, x, xs, y, ys) = (
            arrow(Arrow::A),
            arrow(Arrow::AStar),
            arrow(Arrow::X),
            arrow(Arrow::XStar),
            arrow(Arrow::Y),
            arrow(Arrow::YStar),
        );
        assert_eq!(k.image(Arrow::XStar), &(&xs - &(&y * &astar)));
        assert_eq!(k.image(Arrow::YStar), &(&ys - &(&astar * &x)));
        assert_eq!(k.image(Arrow::X), &x);
        assert_eq!(k.image(Arrow::Y), &y);
        assert_eq!(k.image(Arrow::AStar), &astar);
        assert_eq!(k.image(Arrow::A), &(&a + &(&x * &y)));
        assert!(k.is_symplectic());
    }

    #[test]
    fn gamma_normalization() {
        let m = polymat([[pc(0), pc(3)], [pc(-1), Poly::z()]]);
        let g = GammaElem::new(Poly::z(), m).unwrap();
        assert_eq!(g.m()[(0, 1)], pc(1));
        assert!(GammaElem::new(pc(1), Matrix::identity(2)).is_err());
        let id = GammaElem::<Scalar>::identity();
        assert_eq!(i_map(&id).unwrap(), EndoA::identity());
        let raw = i_map(&GammaElem { p: Poly::z(), m: polymat([[pc(0), pc(3)], [pc(-1), Poly::z()]]) }).unwrap();
        assert!(ptaut_equal(&raw, &i_map(&g).unwrap()).is_some());
    }
}
