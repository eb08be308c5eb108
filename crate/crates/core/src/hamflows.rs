//! Gibbons–Hermsen Hamiltonians, exact Poisson brackets and closed-form flows.
//!
//! Bracket convention: with `ẋ = {H, x}` the Hamiltonian vector field is
//! `Ẋ_ij = ∂H/∂Y_ji`, `Ẏ_ij = −∂H/∂X_ji`, `v̇_ia = ∂H/∂w_ai`,
//! `ẇ_ai = −∂H/∂v_ia`. This is the orientation under which
//! `{J(m,α), J(ℓ,β)} = J(m+ℓ, [α,β])` and the closed-form flows below are
//! Hamiltonian.

use thiserror::Error;

use crate::autos::{fourier, fourier_inv, lambda_tri, AutoError};
use crate::exactnum::{Dual, Field, Matrix, Ring};
use crate::pathalg::{necklace_derive, Alphabet, Letter, Necklace};
use crate::reps::{RepError, RepPoint, VForm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HamError {
    #[error("Hamiltonian H expects a necklace over ab, Hp over a*b*")]
    WrongAlphabet,
    #[error("alpha must be 2x2")]
    BadAlpha,
    #[error("no polynomial flow for J with this alpha (only nilpotent or scalar alpha)")]
    NoPolynomialFlow,
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Auto(#[from] AutoError),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum HamSpec<F> {
    /// `tr Y^k v α w`
    J { k: usize, alpha: Matrix<F> },
    /// `tr f(X, v e12 w)`
    H(Necklace<F>),
    /// `tr f(Y, v e21 w)`
    Hp(Necklace<F>),
}

impl<F: Field> HamSpec<F> {
    pub fn validate(&self) -> Result<(), HamError> {
        match self {
            HamSpec::J { alpha, .. } if alpha.shape() != (2, 2) => Err(HamError::BadAlpha),
            HamSpec::H(f) if !f.is_zero() && f.alphabet() != Alphabet::Unstarred => Err(HamError::WrongAlphabet),
            HamSpec::Hp(f) if !f.is_zero() && f.alphabet() != Alphabet::Starred => Err(HamError::WrongAlphabet),
            _ => Ok(()),
        }
    }

    /// Elementary matrix `e_ij` (indices from zero).
    pub fn elementary(i: usize, j: usize) -> Matrix<F> {
        Matrix::from_fn(2, 2, |r, c| if (r, c) == (i, j) { F::one() } else { F::zero() })
    }
}

/// Letter matrices `a ↦ X`, `b ↦ v e12 w`, `a* ↦ Y`, `b* ↦ v e21 w`.
pub fn letter_matrix<R: Ring>(vf: &VForm<R>, l: Letter) -> Matrix<R> {
    match l {
        Letter::A => vf.x.clone(),
        Letter::B => vf.v_e_w(0, 1),
        Letter::AStar => vf.y.clone(),
        Letter::BStar => vf.v_e_w(1, 0),
    }
}

/// Value of a Hamiltonian on a V-form with entries in any ring receiving
/// the coefficients.
pub fn eval_in<F, R>(h: &HamSpec<F>, vf: &VForm<R>) -> R
where
    F: Field,
    R: Ring + From<F>,
{
    let n = vf.n();
    match h {
        HamSpec::J { k, alpha } => (&vf.y.pow(*k) * &vf.v_alpha_w(&alpha.lift())).trace(),
        HamSpec::H(f) | HamSpec::Hp(f) => {
            let (p, q) = (vf.v_e_w(0, 1), vf.v_e_w(1, 0));
            f.trace_eval(n, &|l| match l {
                Letter::A => vf.x.clone(),
                Letter::B => p.clone(),
                Letter::AStar => vf.y.clone(),
                Letter::BStar => q.clone(),
            })
        }
    }
}

pub fn eval_ham<F: Field>(h: &HamSpec<F>, pt: &RepPoint<F>) -> Result<F, HamError> {
    h.validate()?;
    Ok(eval_in(h, &pt.to_vform()))
}

/// `ψ`: a necklace in four letters evaluated as a trace at
/// `(X, Y, v e12 w, v e21 w)`.
pub fn psi_eval<F: Field>(f: &Necklace<F>, pt: &RepPoint<F>) -> F {
    let vf = pt.to_vform();
    f.trace_eval(vf.n(), &|l| letter_matrix(&vf, l))
}

/// Exact partial derivatives of a Hamiltonian in V-form coordinates.
/// Entry `(i, j)` of `dx` is `∂H/∂X_ij`, and likewise for the others.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gradient<F> {
    pub dx: Matrix<F>,
    pub dy: Matrix<F>,
    pub dv: Matrix<F>,
    pub dw: Matrix<F>,
}

/// Closed form for `J`, dual numbers otherwise.
pub fn gradient<F: Field>(h: &HamSpec<F>, pt: &RepPoint<F>) -> Result<Gradient<F>, HamError> {
    h.validate()?;
    match h {
        HamSpec::J { k, alpha } => Ok(gradient_j(*k, alpha, &pt.to_vform())),
        _ => gradient_dual(h, pt),
    }
}

/// `d tr(Y^k v α w)`: `dY = (Σ Y^r vαw Y^(k−1−r))ᵀ`, `dv = (αwY^k)ᵀ`,
/// `dw = (Y^k vα)ᵀ`.
fn gradient_j<F: Field>(k: usize, alpha: &Matrix<F>, vf: &VForm<F>) -> Gradient<F> {
    let n = vf.n();
    let powers: Vec<Matrix<F>> = std::iter::successors(Some(Matrix::identity(n)), |p| Some(p * &vf.y)).take(k + 1).collect();
    let m = vf.v_alpha_w(alpha);
    let mut d = Matrix::zeros(n, n);
    for r in 0..k {
        d = &d + &(&(&powers[r] * &m) * &powers[k - 1 - r]);
    }
    Gradient {
        dx: Matrix::zeros(n, n),
        dy: d.transpose(),
        dv: (&(alpha * &vf.w) * &powers[k]).transpose(),
        dw: (&(&powers[k] * &vf.v) * alpha).transpose(),
    }
}

/// One dual-number evaluation per coordinate.
pub fn gradient_dual<F: Field>(h: &HamSpec<F>, pt: &RepPoint<F>) -> Result<Gradient<F>, HamError> {
    h.validate()?;
    let vf = pt.to_vform();
    let base: VForm<Dual<F>> =
        VForm { x: vf.x.lift(), y: vf.y.lift(), v: vf.v.lift(), w: vf.w.lift() };
    let partial = |which: usize, i: usize, j: usize| -> F {
        let mut d = base.clone();
        let m = match which {
            0 => &mut d.x,
            1 => &mut d.y,
            2 => &mut d.v,
            _ => &mut d.w,
        };
        m[(i, j)] = Dual::variable(m[(i, j)].val.clone());
        eval_in(h, &d).der
    };
    let n = vf.n();
    Ok(Gradient {
        dx: Matrix::from_fn(n, n, |i, j| partial(0, i, j)),
        dy: Matrix::from_fn(n, n, |i, j| partial(1, i, j)),
        dv: Matrix::from_fn(n, 2, |i, j| partial(2, i, j)),
        dw: Matrix::from_fn(2, n, |i, j| partial(3, i, j)),
    })
}

/// `{f, g}` from precomputed gradients.
pub fn bracket_from_gradients<F: Field>(gf: &Gradient<F>, gg: &Gradient<F>) -> F {
    let n = gf.dx.rows();
    let mut acc = F::zero();
    for i in 0..n {
        for j in 0..n {
            acc = acc + gf.dy[(j, i)].clone() * gg.dx[(i, j)].clone()
                - gf.dx[(i, j)].clone() * gg.dy[(j, i)].clone();
        }
        for a in 0..2 {
            acc = acc + gf.dw[(a, i)].clone() * gg.dv[(i, a)].clone()
                - gf.dv[(i, a)].clone() * gg.dw[(a, i)].clone();
        }
    }
    acc
}

pub fn poisson_bracket<F: Field>(h1: &HamSpec<F>, h2: &HamSpec<F>, pt: &RepPoint<F>) -> Result<F, HamError> {
    Ok(bracket_from_gradients(&gradient(h1, pt)?, &gradient(h2, pt)?))
}

/// The Hamiltonian vector field at a point, in V-form.
pub fn vector_field<F: Field>(h: &HamSpec<F>, pt: &RepPoint<F>) -> Result<VForm<F>, HamError> {
    let g = gradient(h, pt)?;
    Ok(VForm { x: g.dy.transpose(), y: -&g.dx.transpose(), v: g.dw.transpose(), w: -&g.dv.transpose() })
}

/// Sum over occurrences of `letter` of the rotated remainders, evaluated.
fn cyclic_partial<F: Field>(f: &Necklace<F>, letter: Letter, n: usize, mats: &impl Fn(Letter) -> Matrix<F>) -> Matrix<F> {
    let mut acc = Matrix::zeros(n, n);
    for (w, c) in f.terms() {
        for i in 0..w.len() {
            if w[i] != letter {
                continue;
            }
            let mut m = Matrix::identity(n);
            for &l in w[i + 1..].iter().chain(&w[..i]) {
                m = &m * &mats(l);
            }
            acc = &acc + &m.scale(c);
        }
    }
    acc
}

/// Flow of `H(f)` for time `t`. `X`, `v•1`, `w2•` are constant and the rest
/// moves linearly: `Y − t·Da`, `v•2 + t·Db·v•1`, `w1• − t·w2•·Db`.
pub fn flow_h<F: Field>(f: &Necklace<F>, t: &F, pt: &RepPoint<F>) -> Result<RepPoint<F>, HamError> {
    HamSpec::H(f.clone()).validate()?;
    let vf = pt.to_vform();
    let n = vf.n();
    let p = vf.v_e_w(0, 1);
    let mats = |l: Letter| if l == Letter::A { vf.x.clone() } else { p.clone() };
    let da = cyclic_partial(f, Letter::A, n, &mats);
    let db = cyclic_partial(f, Letter::B, n, &mats);
    let (v1, v2) = (vf.v.col(0), vf.v.col(1));
    let (w1, w2) = (vf.w.row(0), vf.w.row(1));
    let v2t = &v2 + &(&db * &v1).scale(t);
    let w1t = &w1 - &(&w2 * &db).scale(t);
    let moved = VForm { x: vf.x.clone(), y: &vf.y - &da.scale(t), v: v1.hstack(&v2t), w: w1t.vstack(&w2) };
    Ok(RepPoint::from_vform(&moved, pt.tau.clone())?)
}

/// Flow of `H′(g)` as the Fourier conjugate of an `H` flow: act by `F⁻¹`,
/// flow `H(−g(a,b))`, act by `F`. At unit time this is the action of
/// `F⁻¹ ∘ Λ(g(a,b)) ∘ F = Λ′(−g)`.
pub fn flow_hp<F: Field>(g: &Necklace<F>, t: &F, pt: &RepPoint<F>) -> Result<RepPoint<F>, HamError> {
    HamSpec::Hp(g.clone()).validate()?;
    let there = pt.act_endo(&fourier_inv())?;
    let moved = flow_h(&g.mirror().neg(), t, &there)?;
    Ok(moved.act_endo(&fourier())?)
}

/// Direct formulas for `g = a*^k b*`: `X + tΣ Y^{k−1−i} Q Y^i`,
/// `v•1 + t Y^k v•2`, `w2• − t w1• Y^k`, with `Q = v e21 w`.
pub fn flow_hp_monomial<F: Field>(k: usize, t: &F, pt: &RepPoint<F>) -> Result<RepPoint<F>, HamError> {
    let vf = pt.to_vform();
    let n = vf.n();
    let q = vf.v_e_w(1, 0);
    let mut sum = Matrix::zeros(n, n);
    for i in 0..k {
        sum = &sum + &(&(&vf.y.pow(k - 1 - i) * &q) * &vf.y.pow(i));
    }
    let yk = vf.y.pow(k);
    let (v1, v2) = (vf.v.col(0), vf.v.col(1));
    let (w1, w2) = (vf.w.row(0), vf.w.row(1));
    let moved = VForm {
        x: &vf.x + &sum.scale(t),
        y: vf.y.clone(),
        v: (&v1 + &(&yk * &v2).scale(t)).hstack(&v2),
        w: w1.vstack(&(&w2 - &(&w1 * &yk).scale(t))),
    };
    Ok(RepPoint::from_vform(&moved, pt.tau.clone())?)
}

/// Flow of `J(k, α)` for nilpotent `α` (exact), or scalar `α = λI`, where the
/// flow of `λτ·tr Y^k` is used; the two agree modulo the `GL_n` action on the
/// moment fiber.
pub fn flow_j<F: Field>(k: usize, alpha: &Matrix<F>, t: &F, pt: &RepPoint<F>) -> Result<RepPoint<F>, HamError> {
    if alpha.shape() != (2, 2) {
        return Err(HamError::BadAlpha);
    }
    let vf = pt.to_vform();
    let n = vf.n();
    if (alpha * alpha).is_zero() {
        let vaw = vf.v_alpha_w(alpha);
        let mut sum = Matrix::zeros(n, n);
        for i in 0..k {
            sum = &sum + &(&(&vf.y.pow(k - 1 - i) * &vaw) * &vf.y.pow(i));
        }
        let yk = vf.y.pow(k);
        let moved = VForm {
            x: &vf.x + &sum.scale(t),
            y: vf.y.clone(),
            v: &vf.v + &(&(&yk * &vf.v) * alpha).scale(t),
            w: &vf.w - &(&(alpha * &vf.w) * &yk).scale(t),
        };
        return Ok(RepPoint::from_vform(&moved, pt.tau.clone())?);
    }
    let lambda = alpha[(0, 0)].clone();
    if *alpha == Matrix::scalar(2, lambda.clone()) {
        if k == 0 {
            return Ok(pt.clone());
        }
        let c = F::from_int(k as i64) * lambda * pt.tau.clone() * t.clone();
        let mut moved = pt.clone();
        moved.a = &pt.a + &pt.b.pow(k - 1).scale(&c);
        return Ok(moved);
    }
    Err(HamError::NoPolynomialFlow)
}

pub fn flow<F: Field>(h: &HamSpec<F>, t: &F, pt: &RepPoint<F>) -> Result<RepPoint<F>, HamError> {
    match h {
        HamSpec::J { k, alpha } => flow_j(*k, alpha, t, pt),
        HamSpec::H(f) => flow_h(f, t, pt),
        HamSpec::Hp(g) => flow_hp(g, t, pt),
    }
}

/// `flow_H(f, 1, p) = p · Λ(−f)`.
pub fn verify_flow_theorem<F: Field>(f: &Necklace<F>, pt: &RepPoint<F>) -> Result<bool, HamError> {
    let lhs = flow_h(f, &F::one(), pt)?;
    let rhs = pt.act_endo(&lambda_tri(&f.neg())?)?;
    Ok(lhs == rhs)
}

/// `flow_H′(g, 1, p) = p · Λ′(−g)`.
pub fn verify_flow_theorem_op<F: Field>(g: &Necklace<F>, pt: &RepPoint<F>) -> Result<bool, HamError> {
    let lhs = flow_hp(g, &F::one(), pt)?;
    let rhs = pt.act_endo(&crate::autos::lambda_op(&g.neg())?)?;
    Ok(lhs == rhs)
}

/// Both sides of the literal Lie-morphism statement
/// `{H(f), H′(g)} = ψ([f, g]) + c·n`, where `c` is the dropped constant.
pub fn lie_morphism_literal<F: Field>(f: &Necklace<F>, g: &Necklace<F>, pt: &RepPoint<F>) -> Result<(F, F), HamError> {
    let lhs = poisson_bracket(&HamSpec::H(f.clone()), &HamSpec::Hp(g.clone()), pt)?;
    let (br, dropped) = crate::pathalg::necklace_bracket(f, g);
    let rhs = psi_eval(&br, pt) + dropped * F::from_int(pt.n as i64);
    Ok((lhs, rhs))
}

/// Both sides of the corrected identity: the `a`–`a*` channel goes through
/// `ψ`, while the `b`–`b*` channel couples through `v e11 w` and `v e22 w`:
/// `tr(Db_f · ve11w · Db_g) − tr(Db_f · Db_g · ve22w)`.
pub fn lie_morphism_coupled<F: Field>(f: &Necklace<F>, g: &Necklace<F>, pt: &RepPoint<F>) -> Result<(F, F), HamError> {
    let lhs = poisson_bracket(&HamSpec::H(f.clone()), &HamSpec::Hp(g.clone()), pt)?;
    let vf = pt.to_vform();
    let n = vf.n();
    let mut a_channel = Necklace::zero(Alphabet::Full);
    let mut dropped = F::zero();
    let prod = necklace_derive(f, Letter::A).mul(&necklace_derive(g, Letter::AStar));
    for (w, c) in prod.terms() {
        if w.is_empty() {
            dropped = dropped - c.clone();
        } else {
            let term = Necklace::from_terms(Alphabet::Full, [(-c.clone(), w.clone())]).expect("full alphabet");
            a_channel = a_channel.add(&term);
        }
    }
    let mats = |l: Letter| letter_matrix(&vf, l);
    let dbf = necklace_derive(f, Letter::B).eval_matrix(n, &mats);
    let dbg = necklace_derive(g, Letter::BStar).eval_matrix(n, &mats);
    let (r, s) = (vf.v_e_w(0, 0), vf.v_e_w(1, 1));
    let b_channel = (&(&dbf * &r) * &dbg).trace() - (&(&dbf * &dbg) * &s).trace();
    let rhs = psi_eval(&a_channel, pt) + dropped * F::from_int(n as i64) + b_channel;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autos::{lambda_op, necklace_of};
    use crate::{Mat, Scalar};
    use num_traits::Zero;

    fn s(c: i64) -> Scalar {
        Scalar::from_int(c)
    }

    fn op(w: &str) -> Necklace<Scalar> {
        Necklace::parse(w).unwrap()
    }

    fn fiber_point() -> RepPoint<Scalar> {
        let base = RepPoint::cm_point(s(1), &[s(0), s(1), s(-2)], &[s(1), s(2), s(3)]).unwrap();
        let f = necklace_of::<Scalar>(&[(1, "b"), (2, "ab"), (-1, "aab")]);
        let g = op("a*b*");
        let pt = base.act_endo(&lambda_tri(&f).unwrap()).unwrap();
        let pt = pt.act_endo(&lambda_op(&g).unwrap()).unwrap();
        let g = Mat::from_rows(vec![vec![s(1), s(1), s(0)], vec![s(0), s(1), s(2)], vec![s(1), s(0), s(1)]]).unwrap();
        pt.gl_act(&g).unwrap()
    }

    #[test]
    fn eval_examples() {
        let pt = fiber_point();
        assert!(pt.is_fiber());
        let j0 = HamSpec::J { k: 0, alpha: Matrix::identity(2) };
        assert_eq!(eval_ham(&j0, &pt).unwrap(), s(3));
        let cm = RepPoint::cm_point(s(1), &[s(2), s(5)], &[s(0), s(0)]).unwrap();
        assert_eq!(eval_ham(&HamSpec::H(necklace_of(&[(1, "a")])), &cm).unwrap(), s(7));
        assert_eq!(eval_ham(&HamSpec::H(necklace_of(&[(1, "a")])), &pt).unwrap(), pt.a.trace());
        assert_eq!(eval_ham(&HamSpec::H(necklace_of(&[(1, "b")])), &cm).unwrap(), s(0));
        let vf = pt.to_vform();
        let hb = eval_ham(&HamSpec::H(necklace_of(&[(1, "b")])), &pt).unwrap();
        assert_eq!(hb, (&vf.w.row(1) * &vf.v.col(0))[(0, 0)]);
    }

    #[test]
    fn j_e21_equals_hp() {
        let pt = fiber_point();
        for k in 0..4 {
            let j = HamSpec::J { k, alpha: HamSpec::elementary(1, 0) };
            let word = format!("{}b*", "a*".repeat(k));
            let hp = HamSpec::Hp(op(&word));
            assert_eq!(eval_ham(&j, &pt).unwrap(), eval_ham(&hp, &pt).unwrap());
        }
    }

    #[test]
    fn closed_form_j_gradient() {
        let pt = fiber_point();
        for k in 0..4 {
            for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                let h = HamSpec::J { k, alpha: HamSpec::elementary(i, j) };
                assert_eq!(gradient(&h, &pt).unwrap(), gradient_dual(&h, &pt).unwrap());
            }
        }
    }

    #[test]
    fn bracket_examples() {
        let pt = fiber_point();
        let e = |i, j| HamSpec::<Scalar>::elementary(i, j);
        let lhs = poisson_bracket(&HamSpec::J { k: 1, alpha: e(0, 1) }, &HamSpec::J { k: 1, alpha: e(1, 0) }, &pt).unwrap();
        let rhs = eval_ham(&HamSpec::J { k: 2, alpha: &e(0, 0) - &e(1, 1) }, &pt).unwrap();
        assert_eq!(lhs, rhs);
        // {tr X, tr Y} = −n in this orientation
        let b = poisson_bracket(&HamSpec::H(necklace_of(&[(1, "a")])), &HamSpec::Hp(op("a*")), &pt).unwrap();
        assert_eq!(b, s(-3));
        let h1 = HamSpec::H(necklace_of(&[(1, "aab"), (2, "b")]));
        let h2 = HamSpec::H(necklace_of(&[(1, "abb"), (-1, "aa")]));
        assert!(poisson_bracket(&h1, &h2, &pt).unwrap().is_zero());
    }

    #[test]
    fn necklace_bracket_calibration() {
        let pt = fiber_point();
        let lhs = poisson_bracket(&HamSpec::H(necklace_of(&[(1, "aa")])), &HamSpec::Hp(op("a*a*")), &pt).unwrap();
        let (br, c) = crate::pathalg::necklace_bracket(&necklace_of(&[(1, "aa")]), &op("a*a*"));
        assert!(c.is_zero());
        assert_eq!(lhs, psi_eval(&br, &pt));
        assert_eq!(lhs, (&pt.a * &pt.b).trace() * s(-4));
    }

    #[test]
    fn flow_examples() {
        let pt = fiber_point();
        let t = Scalar::from_ratio(2, 3);
        for k in 1..4 {
            let f = necklace_of(&[(1, &"a".repeat(k))]);
            let moved = flow_h(&f, &t, &pt).unwrap();
            let mut expected = pt.clone();
            expected.b = &pt.b - &pt.a.pow(k - 1).scale(&(t.clone() * s(k as i64)));
            assert_eq!(moved, expected);
        }
        let moved = flow_h(&necklace_of(&[(1, "b")]), &t, &pt).unwrap();
        let (vf, mv) = (pt.to_vform(), moved.to_vform());
        assert_eq!(mv.v.col(1), &vf.v.col(1) + &vf.v.col(0).scale(&t));
        assert_eq!(mv.w.row(0), &vf.w.row(0) - &vf.w.row(1).scale(&t));
        assert_eq!(mv.y, vf.y);
        assert_eq!(flow_h(&necklace_of(&[(1, "aab")]), &Scalar::zero(), &pt).unwrap(), pt);
        assert_eq!(flow_hp(&op("a*a*b*"), &Scalar::zero(), &pt).unwrap(), pt);
        let moved = flow_hp(&op("a*a*"), &t, &pt).unwrap();
        let mut expected = pt.clone();
        expected.a = &pt.a - &pt.b.scale(&(t * s(2)));
        assert_eq!(moved, expected);
    }

    #[test]
    fn flow_matches_vector_field() {
        let pt = fiber_point();
        let f = necklace_of::<Scalar>(&[(1, "aab"), (-2, "abb"), (1, "b")]);
        let t = Scalar::from_ratio(1, 5);
        let moved = flow_h(&f, &t, &pt).unwrap().to_vform();
        let field = vector_field(&HamSpec::H(f), &pt).unwrap();
        let vf = pt.to_vform();
        assert_eq!(moved.x, &vf.x + &field.x.scale(&t));
        assert_eq!(moved.y, &vf.y + &field.y.scale(&t));
        assert_eq!(moved.v, &vf.v + &field.v.scale(&t));
        assert_eq!(moved.w, &vf.w + &field.w.scale(&t));
    }

    #[test]
    fn flow_theorem_examples() {
        let pt = fiber_point();
        assert!(verify_flow_theorem(&necklace_of(&[(1, "aab")]), &pt).unwrap());
        assert!(verify_flow_theorem(&necklace_of(&[(1, "b")]), &pt).unwrap());
        assert!(verify_flow_theorem_op(&op("a*b*"), &pt).unwrap());
        for k in 0..4 {
            let word = format!("{}b*", "a*".repeat(k));
            let t = Scalar::from_ratio(3, 7);
            assert_eq!(flow_hp(&op(&word), &t, &pt).unwrap(), flow_hp_monomial(k, &t, &pt).unwrap());
        }
    }

    #[test]
    fn j_flows() {
        let pt = fiber_point();
        let t = Scalar::from_ratio(-1, 2);
        let e21 = HamSpec::<Scalar>::elementary(1, 0);
        assert_eq!(flow_j(2, &e21, &t, &pt).unwrap(), flow_hp(&op("a*a*b*"), &t, &pt).unwrap());
        let e12 = HamSpec::<Scalar>::elementary(0, 1);
        let moved = flow_j(2, &e12, &t, &pt).unwrap().to_vform();
        let field = vector_field(&HamSpec::J { k: 2, alpha: e12.clone() }, &pt).unwrap();
        let vf = pt.to_vform();
        assert_eq!(moved.x, &vf.x + &field.x.scale(&t));
        assert_eq!(moved.v, &vf.v + &field.v.scale(&t));
        assert!(flow_j(1, &Matrix::diag(&[s(1), s(2)]), &t, &pt).is_err());
        let scalar = flow_j(2, &Matrix::identity(2), &t, &pt).unwrap();
        assert!(scalar.is_fiber());
        assert_eq!(scalar.a, &pt.a + &pt.b.scale(&(t * s(2))));
    }
}
