//! Seeded verification suites, normalization into the slice, and JSON forms.

pub mod gen;
pub mod json;
mod normalize;

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::autos::{compose, fourier, fourier_inv, lambda_op, lambda_tri, ptaut_equal, AffineData, TameGen};
use crate::hamflows::{
    bracket_from_gradients, eval_ham, gradient, lie_morphism_coupled, lie_morphism_literal, poisson_bracket, verify_flow_theorem,
    verify_flow_theorem_op, HamSpec,
};
use crate::nagao::{constant_polymat, i_map, j1, j2, j3, k_map, nagao_decompose, reassemble, polymat};
use crate::pathalg::{necklace_derive, Alphabet, Arrow, FreePoly, Letter, NcPoly, Necklace};
use crate::reps::RepPoint;
use crate::{Mat, Poly, Scalar};

pub use normalize::{is_p_generator, normalize_to_mn, poly_a_b, poly_astar_bstar, NormalizeError, Normalized};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HarnessError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteParams {
    pub n_max: usize,
    pub deg_max: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams { n_max: 4, deg_max: 6, trials: 25, seed: 42 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub trial: u64,
    pub input: String,
    pub expected: String,
    pub actual: String,
}

/// Outcome of one suite. Wall-clock time is reported by the CLI only, so the
/// serialized report depends on nothing but the parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub trials: usize,
    pub seed: u64,
    pub n_max: usize,
    pub deg_max: usize,
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        format!(
            "{:<22} {} ({} trials, {} failures, seed {})",
            self.suite,
            if self.passed() { "PASS" } else { "FAIL" },
            self.trials,
            self.failures.len(),
            self.seed
        )
    }
}

struct Miss {
    input: String,
    expected: String,
    actual: String,
}

type Trial = Result<(), Miss>;
type TrialFn = fn(&mut ChaCha8Rng, &SuiteParams) -> Trial;

fn miss(input: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Miss {
    Miss { input: input.into(), expected: expected.to_string(), actual: actual.to_string() }
}

fn expect(cond: bool, input: impl FnOnce() -> String, expected: &str, actual: &str) -> Trial {
    if cond {
        Ok(())
    } else {
        Err(miss(input(), expected, actual))
    }
}

/// Suite names in execution order for `all`.
pub const SUITES: &[&str] = &[
    "flow_theorem",
    "symplecticity",
    "poisson_structure",
    "h_commute",
    "lie_morphism",
    "lie_morphism_coupled",
    "t_opt",
    "t_opt_conjugate",
    "nagao_roundtrip",
    "amalgamation",
    "i_homomorphism",
    "goldens",
    "normalization",
];

fn lookup(name: &str) -> Option<TrialFn> {
    Some(match name {
        "flow_theorem" => flow_theorem,
        "symplecticity" => symplecticity,
        "poisson_structure" => poisson_structure,
        "h_commute" => h_commute,
        "lie_morphism" => lie_morphism,
        "lie_morphism_coupled" => lie_morphism_coupled_trial,
        "t_opt" => t_opt,
        "t_opt_conjugate" => t_opt_conjugate,
        "nagao_roundtrip" => nagao_roundtrip,
        "amalgamation" => amalgamation,
        "i_homomorphism" => i_homomorphism,
        "normalization" => normalization,
        _ => return None,
    })
}

/// Runs `trials` independent trials; trial `i` draws from stream `i` of the
/// seed, so the report does not depend on scheduling.
pub fn run_suite(name: &str, params: &SuiteParams) -> Result<VerificationReport, HarnessError> {
    if name == "goldens" {
        return Ok(run_goldens(params));
    }
    let f = lookup(name).ok_or_else(|| HarnessError::UnknownSuite(name.to_string()))?;
    let trials = params.trials;
    let mut failures: Vec<Failure> = (0..trials as u64)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = gen::trial_rng(params.seed, i);
            f(&mut rng, params).err().map(|m| Failure { trial: i, input: m.input, expected: m.expected, actual: m.actual })
        })
        .collect();
    failures.sort_by_key(|f| f.trial);
    Ok(VerificationReport {
        suite: name.to_string(),
        trials,
        seed: params.seed,
        n_max: params.n_max,
        deg_max: params.deg_max,
        failures,
    })
}

pub fn run_all(params: &SuiteParams) -> Vec<VerificationReport> {
    SUITES.iter().map(|s| run_suite(s, params).expect("registered suite")).collect()
}

fn dim(rng: &mut ChaCha8Rng, n_max: usize) -> usize {
    rng.gen_range(1..=n_max.max(1))
}

fn tau(rng: &mut ChaCha8Rng) -> Scalar {
    gen::small_int(rng)
}

fn show_point(pt: &RepPoint<Scalar>) -> String {
    json::point_to_json(pt).to_string()
}

fn flow_theorem(rng: &mut ChaCha8Rng, p: &SuiteParams) -> Trial {
    let n = dim(rng, p.n_max);
    let t = tau(rng);
    let f = gen::necklace(rng, Alphabet::Unstarred, 4, p.deg_max.min(6));
    let pt = gen::fiber_point(rng, n, &t);
    let input = || format!("f = {f}; point = {}", show_point(&pt));
    let h = verify_flow_theorem(&f, &pt).map_err(|e| miss(input(), "flow", e))?;
    expect(h, input, "flow_H(f,1,p) = p·Λ(−f)", "differs")?;
    let g = f.mirror();
    let hp = verify_flow_theorem_op(&g, &pt).map_err(|e| miss(input(), "flow", e))?;
    expect(hp, input, "flow_H′(f*,1,p) = p·Λ′(−f*)", "differs")
}

fn symplecticity(rng: &mut ChaCha8Rng, p: &SuiteParams) -> Trial {
    let w = gen::tame_word(rng, 5, p.deg_max.min(2));
    let input = || json::tame_word_to_json(&w).to_string();
    let phi = crate::autos::compile_word(&w).map_err(|e| miss(input(), "compiles", e))?;
    expect(phi.is_symplectic(), input, "φ(c) = c", "φ(c) ≠ c")
}

fn poisson_structure(rng: &mut ChaCha8Rng, p: &SuiteParams) -> Trial {
    let n = dim(rng, p.n_max.min(3));
    let t = tau(rng);
    let pt = gen::fiber_point(rng, n, &t);
    let top = p.deg_max.min(6);
    let basis: Vec<Mat> = (0..4).map(|k| HamSpec::elementary(k / 2, k % 2)).collect();
    // one gradient per (k, α), reused across all pairs
    let grads: Vec<Vec<_>> = (0..=top)
        .map(|k| {
            basis.iter().map(|a| gradient(&HamSpec::J { k, alpha: a.clone() }, &pt).expect("valid spec")).collect()
        })
        .collect();
    for m in 0..=top {
        for l in 0..=top - m {
            for (i, alpha) in basis.iter().enumerate() {
                for (j, beta) in basis.iter().enumerate() {
                    let lhs = bracket_from_gradients(&grads[m][i], &grads[l][j]);
                    let rhs = eval_ham(&HamSpec::J { k: m + l, alpha: alpha.commutator(beta) }, &pt).expect("valid spec");
                    if lhs != rhs {
                        return Err(miss(
                            format!("m = {m}, l = {l}, α = {alpha:?}, β = {beta:?}; point = {}", show_point(&pt)),
                            rhs,
                            lhs,
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

fn h_commute(rng: &mut ChaCha8Rng, p: &SuiteParams) -> Trial {
    let n = dim(rng, p.n_max);
    let t = tau(rng);
    let f1 = gen::necklace(rng, Alphabet::Unstarred, 3, p.deg_max.min(4));
    let f2 = gen::necklace(rng, Alphabet::Unstarred, 3, p.deg_max.min(4));
    let pt = gen::fiber_point(rng, n, &t);
    let b = poisson_bracket(&HamSpec::H(f1.clone()), &HamSpec::H(f2.clone()), &pt).expect("valid specs");
    expect(b.is_zero(), || format!("f1 = {f1}; f2 = {f2}; point = {}", show_point(&pt)), "0", &b.to_string())
}

fn lie_pair(rng: &mut ChaCha8Rng, p: &SuiteParams) -> (Necklace<Scalar>, Necklace<Scalar>, RepPoint<Scalar>) {
    let n = dim(rng, p.n_max.min(3));
    let t = tau(rng);
    let f = gen::necklace(rng, Alphabet::Unstarred, 2, p.deg_max.min(3));
    let g = gen::necklace(rng, Alphabet::Starred, 2, p.deg_max.min(3));
    (f, g, gen::fiber_point(rng, n, &t))
}

fn lie_morphism(rng: &mut ChaCha8Rng, p: &SuiteParams) -> Trial {
    let (f, g, pt) = lie_pair(rng, p);
    let (lhs, rhs) = lie_morphism_literal(&f, &g, &pt).expect("valid specs");
    expect(lhs == rhs, || format!("f = {f}; g = {g}; point = {}", show_point(&pt)), &rhs.to_string(), &lhs.to_string())
}

fn lie_morphism_coupled_trial(rng: &mut ChaCha8Rng, p: &SuiteParams) -> Trial {
    let (f, g, pt) = lie_pair(rng, p);
    let (lhs, rhs) = lie_morphism_coupled(&f, &g, &pt).expect("valid specs");
    expect(lhs == rhs, || format!("f = {f}; g = {g}; point = {}", show_point(&pt)), &rhs.to_string(), &lhs.to_string())
}

fn t_opt_input(rng: &mut ChaCha8Rng, p: &SuiteParams) -> Necklace<Scalar> {
    gen::necklace(rng, Alphabet::Unstarred, 3, p.deg_max.min(4))
}

/// `Λ′(f(a*, b*)) = F ∘ Λ(−f(a, b)) ∘ F⁻¹` with `∘` read as [`compose`].
fn t_opt(rng: &mut ChaCha8Rng, p: &SuiteParams) -> Trial {
    let f = t_opt_input(rng, p);
    let lhs = lambda_op(&f.mirror()).expect("starred");
    let rhs = compose(&fourier(), &compose(&lambda_tri(&f.neg()).expect("unstarred"), &fourier_inv()));
    expect(lhs == rhs, || format!("f = {f}"), &lhs.to_string(), &rhs.to_string())
}

/// The same identity with the conjugation taken in action order.
fn t_opt_conjugate(rng: &mut ChaCha8Rng, p: &SuiteParams) -> Trial {
    let f = t_opt_input(rng, p);
    let lhs = lambda_op(&f.mirror()).expect("starred");
    let rhs = compose(&fourier_inv(), &compose(&lambda_tri(&f.neg()).expect("unstarred"), &fourier()));
    expect(lhs == rhs, || format!("f = {f}"), &lhs.to_string(), &rhs.to_string())
}

fn nagao_roundtrip(rng: &mut ChaCha8Rng, p: &SuiteParams) -> Trial {
    let m = gen::polymat2(rng, 8, p.deg_max.min(5));
    let input = || serde_json::to_string(&m).expect("serializable");
    let w = nagao_decompose(&m).map_err(|e| miss(input(), "decomposes", e))?;
    expect(reassemble(&w) == m, input, "reassemble = M", "differs")?;
    expect(w.is_alternating(), input, "alternating word", &json::nagao_word_to_json(&w).to_string())
}

fn amalgamation(rng: &mut ChaCha8Rng, p: &SuiteParams) -> Trial {
    for _ in 0..2 {
        let b = gen::b2k(rng);
        let ok = j1(&b).expect("invertible") == j2(&constant_polymat(&b)).expect("in B2");
        expect(ok, || format!("b = {}", serde_json::to_string(&b).expect("serializable")), "j1(b) = j2(b)", "differ")?;
    }
    let deg = p.deg_max.min(3);
    let (m1, m2) = (gen::polymat2(rng, 4, deg), gen::polymat2(rng, 4, deg));
    let lhs = k_map(&(&m1 * &m2)).expect("unit determinant");
    let rhs = compose(&k_map(&m1).expect("unit"), &k_map(&m2).expect("unit"));
    expect(
        lhs == rhs,
        || format!("M1 = {}; M2 = {}", serde_json::to_string(&m1).unwrap(), serde_json::to_string(&m2).unwrap()),
        "k(M1 M2) = k(M1)∘k(M2)",
        "differ",
    )
}

fn i_homomorphism(rng: &mut ChaCha8Rng, p: &SuiteParams) -> Trial {
    let deg = p.deg_max.min(3);
    let (g1, g2) = (gen::gamma(rng, 3, deg), gen::gamma(rng, 3, deg));
    let input = || format!("γ1 = {}; γ2 = {}", json::gamma_to_json(&g1), json::gamma_to_json(&g2));
    let lhs = i_map(&g1.mul(&g2)).expect("valid");
    let rhs = compose(&i_map(&g1).expect("valid"), &i_map(&g2).expect("valid"));
    expect(ptaut_equal(&lhs, &rhs).is_some(), input, "i(γ1γ2) ≡ i(γ1)∘i(γ2)", "differ modulo scalings")?;
    let j = j3(g1.p()).expect("no constant term");
    for img in [k_map(g2.m()).expect("unit"), j1(&gen::gl2(rng)).expect("invertible")] {
        expect(compose(&j, &img) == compose(&img, &j), input, "j3(p) commutes with k(M)", "differ")?;
    }
    Ok(())
}

type Golden = (&'static str, fn() -> bool);

const GOLDENS: &[Golden] = &[
    ("Λ(aab) sends B to B + A X1 Y1 + X1 Y1 A", golden_lambda_aab),
    ("∂(aab)/∂a = ab + ba", golden_derivative_aab),
    ("∂(aaab)/∂a = aab + aba + baa", golden_derivative_aaab),
    ("k([[1,z],[0,1]]) sends x* to x* − y a* and y* to y* − a* x", golden_upper_unitriangular),
    ("[[1,z],[0,1]] factors as swap · [[1,0],[z,1]] · swap", golden_upper_factorization),
];

fn golden_point() -> RepPoint<Scalar> {
    let base = RepPoint::cm_point(Scalar::one(), &[Scalar::zero(), Scalar::one(), Scalar::from(-2)], &[
        Scalar::from(1),
        Scalar::from(2),
        Scalar::from(3),
    ])
    .expect("distinct abscissae");
    let g = TameGen::Aff(AffineData::from_t(Mat::from_vec(2, 2, vec![1.into(), 1.into(), 0.into(), 1.into()])).unwrap());
    base.act_endo(&g.compile().expect("valid")).expect("homogeneous")
}

fn golden_lambda_aab() -> bool {
    let pt = golden_point();
    let f = crate::autos::necklace_of::<Scalar>(&[(1, "aab")]);
    let moved = pt.act_endo(&lambda_tri(&f).expect("unstarred")).expect("homogeneous");
    let xy = &pt.x1 * &pt.y1;
    let expected = &(&pt.b + &(&pt.a * &xy)) + &(&xy * &pt.a);
    moved.b == expected && moved.a == pt.a && moved.x1 == pt.x1 && moved.y1 == pt.y1
}

fn free(words: &[&str]) -> FreePoly<Scalar> {
    FreePoly::from_terms(
        words.iter().map(|w| (Scalar::one(), crate::pathalg::parse_word(w).expect("well-formed"))),
    )
}

fn golden_derivative_aab() -> bool {
    necklace_derive(&crate::autos::necklace_of::<Scalar>(&[(1, "aab")]), Letter::A) == free(&["ab", "ba"])
}

fn golden_derivative_aaab() -> bool {
    necklace_derive(&crate::autos::necklace_of::<Scalar>(&[(1, "aaab")]), Letter::A) == free(&["aab", "aba", "baa"])
}

fn golden_upper_unitriangular() -> bool {
    let m = polymat([[Poly::one(), Poly::z()], [Poly::zero(), Poly::one()]]);
    let k = k_map(&m).expect("unit determinant");
    let ar = NcPoly::<Scalar>::arrow;
    let xs = &ar(Arrow::XStar) - &(&ar(Arrow::Y) * &ar(Arrow::AStar));
    let ys = &ar(Arrow::YStar) - &(&ar(Arrow::AStar) * &ar(Arrow::X));
    k.image(Arrow::XStar) == &xs && k.image(Arrow::YStar) == &ys && k.is_symplectic()
}

fn golden_upper_factorization() -> bool {
    use crate::nagao::NagaoFactor;
    let m = polymat([[Poly::one(), Poly::z()], [Poly::zero(), Poly::one()]]);
    let sw = Mat::from_vec(2, 2, vec![0.into(), 1.into(), 1.into(), 0.into()]);
    let low = polymat([[Poly::one(), Poly::zero()], [Poly::z(), Poly::one()]]);
    nagao_decompose(&m).map(|w| w.factors) == Ok(vec![NagaoFactor::C(sw.clone()), NagaoFactor::B(low), NagaoFactor::C(sw)])
}

fn run_goldens(params: &SuiteParams) -> VerificationReport {
    let failures = GOLDENS
        .iter()
        .enumerate()
        .filter(|(_, (_, check))| !check())
        .map(|(i, (name, _))| Failure {
            trial: i as u64,
            input: name.to_string(),
            expected: "match".into(),
            actual: "mismatch".into(),
        })
        .collect();
    VerificationReport {
        suite: "goldens".into(),
        trials: GOLDENS.len(),
        seed: params.seed,
        n_max: params.n_max,
        deg_max: params.deg_max,
        failures,
    }
}

/// A witness-backed scrambled slice point: `cm_point` moved by a word over
/// `Λ(−p(a)b)` and `(I, T)`, optionally followed by `F`, then by `gl`.
pub fn scrambled_slice_point(rng: &mut ChaCha8Rng, n: usize) -> RepPoint<Scalar> {
    let t = tau(rng);
    let mut pt = gen::cm_point(rng, n, &t);
    let len = rng.gen_range(1..=4);
    for _ in 0..len {
        let g = if rng.gen_bool(0.5) {
            let q = gen::poly(rng, n.saturating_sub(1));
            if q.is_zero() {
                continue;
            }
            TameGen::Tri(poly_a_b(&q, &-Scalar::one()))
        } else {
            TameGen::Aff(AffineData::from_t(gen::gl2(rng)).expect("invertible"))
        };
        pt = pt.act_endo(&g.compile().expect("valid")).expect("homogeneous");
    }
    if rng.gen_bool(0.3) {
        pt = pt.act_endo(&fourier()).expect("homogeneous");
    }
    pt.gl_act(&gen::gln(rng, n)).expect("unimodular")
}

fn normalization(rng: &mut ChaCha8Rng, p: &SuiteParams) -> Trial {
    let n = dim(rng, p.n_max.min(4));
    let pt = scrambled_slice_point(rng, n);
    let input = || show_point(&pt);
    let out = normalize_to_mn(&pt).map_err(|e| miss(input(), "normalized point", e))?;
    expect(out.result.in_mn() && out.result.is_fiber(), input, "in M_n and in the fiber", "not")
}
