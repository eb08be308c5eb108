//! Representations of the doubled quiver with dimension vector `(n, 1)`.

use thiserror::Error;

use crate::autos::EndoA;
use crate::exactnum::{Field, Matrix, Ring};
use crate::pathalg::{Arrow, NcPoly, Path, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("element is not endpoint-homogeneous")]
    NotHomogeneous,
    #[error("cannot infer the shape of the zero element")]
    ZeroShape,
    #[error("matrix is singular")]
    Singular,
    #[error("abscissae must be pairwise distinct")]
    RepeatedAbscissa,
    #[error("tau must be nonzero")]
    ZeroTau,
}

/// A point `(A, B, X1, X2, Y1, Y2)` together with the level `τ`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RepPoint<R> {
    pub n: usize,
    pub tau: R,
    pub a: Matrix<R>,
    pub b: Matrix<R>,
    pub x1: Matrix<R>,
    pub x2: Matrix<R>,
    pub y1: Matrix<R>,
    pub y2: Matrix<R>,
}

/// The same point written as `(X, Y, v, w)` with `v` of shape `n×2` and `w`
/// of shape `2×n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VForm<R> {
    pub x: Matrix<R>,
    pub y: Matrix<R>,
    pub v: Matrix<R>,
    pub w: Matrix<R>,
}

fn dim(v: Vertex, n: usize) -> usize {
    match v {
        Vertex::One => n,
        Vertex::Two => 1,
    }
}

impl<R: Ring> RepPoint<R> {
    pub fn new(
        tau: R,
        a: Matrix<R>,
        b: Matrix<R>,
        x1: Matrix<R>,
        x2: Matrix<R>,
        y1: Matrix<R>,
        y2: Matrix<R>,
    ) -> Result<Self, RepError> {
        let n = a.rows();
        let pt = RepPoint { n, tau, a, b, x1, x2, y1, y2 };
        pt.check_shapes()?;
        Ok(pt)
    }

    pub fn check_shapes(&self) -> Result<(), RepError> {
        let n = self.n;
        for (name, m, shape) in [
            ("A", &self.a, (n, n)),
            ("B", &self.b, (n, n)),
            ("X1", &self.x1, (n, 1)),
            ("X2", &self.x2, (n, 1)),
            ("Y1", &self.y1, (1, n)),
            ("Y2", &self.y2, (1, n)),
        ] {
            if m.shape() != shape {
                return Err(RepError::Shape(format!("{name} is {:?}, expected {shape:?}", m.shape())));
            }
        }
        if n == 0 {
            return Err(RepError::Shape("n must be positive".into()));
        }
        Ok(())
    }

    pub fn zero(n: usize, tau: R) -> Self {
        RepPoint {
            n,
            tau,
            a: Matrix::zeros(n, n),
            b: Matrix::zeros(n, n),
            x1: Matrix::zeros(n, 1),
            x2: Matrix::zeros(n, 1),
            y1: Matrix::zeros(1, n),
            y2: Matrix::zeros(1, n),
        }
    }

    pub fn arrow_matrix(&self, a: Arrow) -> &Matrix<R> {
        match a {
            Arrow::A => &self.a,
            Arrow::AStar => &self.b,
            Arrow::X => &self.x1,
            Arrow::YStar => &self.x2,
            Arrow::Y => &self.y1,
            Arrow::XStar => &self.y2,
        }
    }

    pub fn to_vform(&self) -> VForm<R> {
        VForm {
            x: self.a.clone(),
            y: self.b.clone(),
            v: self.x1.hstack(&-&self.x2),
            w: self.y2.vstack(&self.y1),
        }
    }

    pub fn from_vform(vf: &VForm<R>, tau: R) -> Result<Self, RepError> {
        let n = vf.x.rows();
        if vf.v.shape() != (n, 2) || vf.w.shape() != (2, n) {
            return Err(RepError::Shape("v must be n×2 and w must be 2×n".into()));
        }
        RepPoint::new(tau, vf.x.clone(), vf.y.clone(), vf.v.col(0), -&vf.v.col(1), vf.w.row(1), vf.w.row(0))
    }

    /// `([A,B] + X1Y2 − X2Y1, Y1X2 − Y2X1)`.
    pub fn moment_nu(&self) -> (Matrix<R>, R) {
        let first = &(&self.a.commutator(&self.b) + &(&self.x1 * &self.y2)) - &(&self.x2 * &self.y1);
        let second = &(&self.y1 * &self.x2) - &(&self.y2 * &self.x1);
        (first, second[(0, 0)].clone())
    }

    pub fn is_fiber(&self) -> bool {
        let (first, second) = self.moment_nu();
        let n_tau = (0..self.n).fold(R::zero(), |acc, _| acc + self.tau.clone());
        first == Matrix::scalar(self.n, self.tau.clone()) && second == -n_tau
    }

    /// `v•2 = 0` and `w2• = 0`.
    pub fn in_mn(&self) -> bool {
        self.x2.is_zero() && self.y1.is_zero()
    }

    /// Evaluate a combination of paths with the given endpoints.
    pub fn evaluate_at(&self, u: &NcPoly<R>, source: Vertex, target: Vertex) -> Result<Matrix<R>, RepError> {
        let mut acc = Matrix::zeros(dim(target, self.n), dim(source, self.n));
        for (p, c) in u.terms() {
            if p.source() != source || p.target() != target {
                return Err(RepError::NotHomogeneous);
            }
            let m = match p {
                Path::Trivial(v) => Matrix::identity(dim(*v, self.n)),
                Path::Word(w) => {
                    let mut it = w.iter();
                    let first = self.arrow_matrix(*it.next().expect("nonempty word")).clone();
                    it.fold(first, |acc, a| &acc * self.arrow_matrix(*a))
                }
            };
            acc = &acc + &m.scale(c);
        }
        Ok(acc)
    }

    pub fn evaluate(&self, u: &NcPoly<R>) -> Result<Matrix<R>, RepError> {
        if u.is_zero() {
            return Err(RepError::ZeroShape);
        }
        let (s, t) = u.endpoints().ok_or(RepError::NotHomogeneous)?;
        self.evaluate_at(u, s, t)
    }

    /// `φ` sends the point to the evaluations of its arrow images.
    pub fn act_endo(&self, phi: &EndoA<R>) -> Result<Self, RepError> {
        let ev = |a: Arrow| self.evaluate_at(phi.image(a), a.source(), a.target());
        Ok(RepPoint {
            n: self.n,
            tau: self.tau.clone(),
            a: ev(Arrow::A)?,
            b: ev(Arrow::AStar)?,
            x1: ev(Arrow::X)?,
            x2: ev(Arrow::YStar)?,
            y1: ev(Arrow::Y)?,
            y2: ev(Arrow::XStar)?,
        })
    }
}

impl<R: Ring> VForm<R> {
    pub fn n(&self) -> usize {
        self.x.rows()
    }

    /// `v α w` for a `2×2` matrix `α`.
    pub fn v_alpha_w(&self, alpha: &Matrix<R>) -> Matrix<R> {
        &(&self.v * alpha) * &self.w
    }

    /// `v e_ij w = v•i wj•` (indices from zero).
    pub fn v_e_w(&self, i: usize, j: usize) -> Matrix<R> {
        &self.v.col(i) * &self.w.row(j)
    }

    /// `[X,Y] + vw`.
    pub fn moment_mu(&self) -> Matrix<R> {
        &self.x.commutator(&self.y) + &(&self.v * &self.w)
    }
}

impl<F: Field> RepPoint<F> {
    /// `(gAg⁻¹, gBg⁻¹, gX1, gX2, Y1g⁻¹, Y2g⁻¹)`.
    pub fn gl_act(&self, g: &Matrix<F>) -> Result<Self, RepError> {
        if g.shape() != (self.n, self.n) {
            return Err(RepError::Shape("g must be n×n".into()));
        }
        let gi = g.inverse().ok_or(RepError::Singular)?;
        Ok(RepPoint {
            n: self.n,
            tau: self.tau.clone(),
            a: &(g * &self.a) * &gi,
            b: &(g * &self.b) * &gi,
            x1: g * &self.x1,
            x2: g * &self.x2,
            y1: &self.y1 * &gi,
            y2: &self.y2 * &gi,
        })
    }

    /// The point of the slice with `A = diag(x)`, `B_ii = p_i`,
    /// `B_ij = −τ/(x_i − x_j)`, `X1 = 1`, `Y2 = τ`, `X2 = Y1 = 0`.
    pub fn cm_point(tau: F, x: &[F], p: &[F]) -> Result<Self, RepError> {
        let n = x.len();
        if n == 0 || p.len() != n {
            return Err(RepError::Shape("x and p must have the same positive length".into()));
        }
        if tau.is_zero() {
            return Err(RepError::ZeroTau);
        }
        for i in 0..n {
            for j in 0..i {
                if x[i] == x[j] {
                    return Err(RepError::RepeatedAbscissa);
                }
            }
        }
        let b = Matrix::from_fn(n, n, |i, j| {
            if i == j {
                p[i].clone()
            } else {
                -tau.clone() / (x[i].clone() - x[j].clone())
            }
        });
        RepPoint::new(
            tau.clone(),
            Matrix::diag(x),
            b,
            Matrix::from_fn(n, 1, |_, _| F::one()),
            Matrix::zeros(n, 1),
            Matrix::zeros(1, n),
            Matrix::from_fn(1, n, |_, _| tau.clone()),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autos::{fourier, lambda_tri, necklace_of};
    use crate::pathalg::symplectic_c;
    use crate::{Mat, Scalar};

    fn s(c: i64) -> Scalar {
        Scalar::from_int(c)
    }

    fn m(rows: &[&[i64]]) -> Mat {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| s(x)).collect()).collect()).unwrap()
    }

    fn sample() -> RepPoint<Scalar> {
        RepPoint::new(
            s(1),
            m(&[&[1, 2], &[0, -1]]),
            m(&[&[3, 1], &[1, 2]]),
            m(&[&[1], &[2]]),
            m(&[&[-1], &[1]]),
            m(&[&[2, 1]]),
            m(&[&[1, -3]]),
        )
        .unwrap()
    }

    #[test]
    fn vform_examples() {
        let pt = sample();
        let vf = pt.to_vform();
        assert_eq!(RepPoint::from_vform(&vf, pt.tau.clone()).unwrap(), pt);
        let one = RepPoint::new(s(1), m(&[&[0]]), m(&[&[0]]), m(&[&[1]]), m(&[&[2]]), m(&[&[0]]), m(&[&[0]])).unwrap();
        assert_eq!(one.to_vform().v, m(&[&[1, -2]]));
        assert_eq!(vf.w.row(0), pt.y2);
        assert_eq!(vf.w.row(1), pt.y1);
    }

    #[test]
    fn moment_examples() {
        let tau = Scalar::from_ratio(5, 3);
        let vf = VForm {
            x: Matrix::zeros(1, 1),
            y: Matrix::zeros(1, 1),
            v: Matrix::from_rows(vec![vec![s(1), s(0)]]).unwrap(),
            w: Matrix::from_rows(vec![vec![tau.clone()], vec![s(0)]]).unwrap(),
        };
        assert_eq!(vf.moment_mu(), Matrix::scalar(1, tau));
        let pt = sample();
        assert_eq!(pt.to_vform().moment_mu(), pt.moment_nu().0);
        let z = RepPoint::<Scalar>::zero(3, s(1));
        assert_eq!(z.moment_nu(), (Matrix::zeros(3, 3), s(0)));
    }

    #[test]
    fn cm_point_examples() {
        let one = RepPoint::cm_point(s(2), &[s(5)], &[s(7)]).unwrap();
        assert_eq!(one.moment_nu(), (m(&[&[2]]), s(-2)));
        let two = RepPoint::cm_point(s(1), &[s(0), s(1)], &[s(3), s(4)]).unwrap();
        assert_eq!(two.b[(0, 1)], s(1));
        assert_eq!(two.b[(1, 0)], s(-1));
        assert!(two.is_fiber());
        assert!(two.in_mn());
        let xs: Vec<Scalar> = (0..4).map(|i| Scalar::from_ratio(i * i - 3, i + 1)).collect();
        let ps: Vec<Scalar> = (0..4).map(|i| Scalar::from_parts(i, 1, 1 - i, 2)).collect();
        let tau = Scalar::from_parts(2, 3, 1, 1);
        let pt = RepPoint::cm_point(tau.clone(), &xs, &ps).unwrap();
        assert_eq!(pt.to_vform().moment_mu(), Matrix::scalar(4, tau));
        assert!(pt.is_fiber());
        assert_eq!(RepPoint::cm_point(s(1), &[s(1), s(1)], &[s(0), s(0)]), Err(RepError::RepeatedAbscissa));
    }

    #[test]
    fn evaluate_examples() {
        let pt = sample();
        let axy = NcPoly::from_path(Path::word(vec![Arrow::A, Arrow::X, Arrow::Y]).unwrap());
        assert_eq!(pt.evaluate(&axy).unwrap(), &(&pt.a * &pt.x1) * &pt.y1);
        let c = symplectic_c::<Scalar>();
        let e1ce1 = &(&NcPoly::e1() * &c) * &NcPoly::e1();
        assert_eq!(pt.evaluate(&e1ce1).unwrap(), pt.moment_nu().0);
        let e2ce2 = &(&NcPoly::e2() * &c) * &NcPoly::e2();
        assert_eq!(pt.evaluate(&e2ce2).unwrap()[(0, 0)], pt.moment_nu().1);
        assert_eq!(pt.evaluate(&c), Err(RepError::NotHomogeneous));
    }

    #[test]
    fn act_examples() {
        let pt = sample();
        let l = lambda_tri(&necklace_of::<Scalar>(&[(1, "aab")])).unwrap();
        let moved = pt.act_endo(&l).unwrap();
        let (a, x1, y1) = (&pt.a, &pt.x1, &pt.y1);
        assert_eq!(moved.a, pt.a);
        assert_eq!(moved.b, &(&pt.b + &(&(a * x1) * y1)) + &(&(x1 * y1) * a));
        assert_eq!(moved.x2, &pt.x2 + &(&(a * a) * x1));
        assert_eq!(moved.y2, &pt.y2 + &(&(y1 * a) * a));
        assert_eq!(moved.x1, pt.x1);
        assert_eq!(moved.y1, pt.y1);
        assert_eq!(pt.act_endo(&EndoA::identity()).unwrap(), pt);
        let f = pt.act_endo(&fourier()).unwrap();
        assert_eq!((f.a, f.b, f.x1, f.x2, f.y1, f.y2), (-&pt.b, pt.a.clone(), -&pt.x2, pt.x1.clone(), -&pt.y2, pt.y1.clone()));
    }

    #[test]
    fn gl_examples() {
        let pt = RepPoint::cm_point(s(1), &[s(0), s(1)], &[s(2), s(-1)]).unwrap();
        assert_eq!(pt.gl_act(&Matrix::identity(2)).unwrap(), pt);
        let g = m(&[&[2, 0], &[0, 1]]);
        let moved = pt.gl_act(&g).unwrap();
        assert!(moved.is_fiber());
        let g = m(&[&[1, 2], &[3, 5]]);
        let other = sample();
        let moved = other.gl_act(&g).unwrap();
        let gi = g.inverse().unwrap();
        assert_eq!(moved.moment_nu().0, &(&g * &other.moment_nu().0) * &gi);
        assert_eq!(other.gl_act(&m(&[&[1, 1], &[1, 1]])), Err(RepError::Singular));
    }
}
