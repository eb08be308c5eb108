use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use qsymp::autos::{compile_word, compose, fourier, fourier_inv, invert_word, lambda_op, lambda_tri, z_lambda, EndoA};
use qsymp::hamflows::{eval_ham, flow_h, HamSpec};
use qsymp::harness::gen;
use qsymp::harness::{normalize_to_mn, run_suite, scrambled_slice_point, SuiteParams};
use qsymp::nagao::{nagao_decompose, reassemble};
use qsymp::pathalg::Alphabet;
use qsymp::reps::RepPoint;
use qsymp::Scalar;

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cfg(48))]

    #[test]
    fn tame_words_are_symplectic(seed in any::<u64>()) {
        let mut rng = gen::trial_rng(seed, 0);
        let w = gen::tame_word(&mut rng, 4, 2);
        prop_assert!(compile_word(&w).unwrap().is_symplectic());
    }

    #[test]
    fn inverse_word_undoes_word(seed in any::<u64>()) {
        let mut rng = gen::trial_rng(seed, 0);
        let w = gen::tame_word(&mut rng, 2, 2);
        let (phi, inv) = (compile_word(&w).unwrap(), compile_word(&invert_word(&w)).unwrap());
        prop_assert_eq!(compose(&phi, &inv), EndoA::identity());
        prop_assert_eq!(compose(&inv, &phi), EndoA::identity());
    }

    #[test]
    fn compose_is_associative(seed in any::<u64>()) {
        let mut rng = gen::trial_rng(seed, 0);
        let [f, g, h] = [(); 3].map(|_| gen::tame_gen(&mut rng, 2).compile().unwrap());
        prop_assert_eq!(compose(&compose(&f, &g), &h), compose(&f, &compose(&g, &h)));
    }

    #[test]
    fn scalings_are_central(seed in any::<u64>()) {
        let mut rng = gen::trial_rng(seed, 0);
        let z = z_lambda(gen::nonzero_scalar(&mut rng)).unwrap();
        let phi = compile_word(&gen::tame_word(&mut rng, 2, 2)).unwrap();
        prop_assert_eq!(compose(&z, &phi), compose(&phi, &z));
    }

    #[test]
    fn action_on_points_is_a_right_action(seed in any::<u64>()) {
        let mut rng = gen::trial_rng(seed, 0);
        let (n, pt) = point(&mut rng);
        let f = gen::tame_gen(&mut rng, 2).compile().unwrap();
        let g = gen::tame_gen(&mut rng, 2).compile().unwrap();
        let lhs = pt.act_endo(&compose(&f, &g)).unwrap();
        prop_assert_eq!(lhs, pt.act_endo(&f).unwrap().act_endo(&g).unwrap());
    }

    #[test]
    fn tame_action_preserves_the_fiber(seed in any::<u64>()) {
        let mut rng = gen::trial_rng(seed, 0);
        let (n, pt) = point(&mut rng);
        let moved = pt.act_endo(&compile_word(&gen::tame_word(&mut rng, 3, 2)).unwrap()).unwrap();
        prop_assert!(moved.is_fiber());
    }

    #[test]
    fn fourier_conjugates_triangular_to_op_triangular(seed in any::<u64>()) {
        let mut rng = gen::trial_rng(seed, 0);
        let f = gen::necklace(&mut rng, Alphabet::Unstarred, 3, 4);
        let rhs = compose(&fourier_inv(), &compose(&lambda_tri(&f.neg()).unwrap(), &fourier()));
        prop_assert_eq!(lambda_op(&f.mirror()).unwrap(), rhs);
    }

    #[test]
    fn flows_form_a_one_parameter_group(seed in any::<u64>()) {
        let mut rng = gen::trial_rng(seed, 0);
        let (n, pt) = point(&mut rng);
        let f = gen::necklace(&mut rng, Alphabet::Unstarred, 2, 4);
        let (s, t) = (gen::scalar(&mut rng), gen::scalar(&mut rng));
        let two_step = flow_h(&f, &t, &flow_h(&f, &s, &pt).unwrap()).unwrap();
        prop_assert_eq!(two_step, flow_h(&f, &(&s + &t), &pt).unwrap());
    }

    #[test]
    fn hamiltonians_are_gl_invariant(seed in any::<u64>()) {
        let mut rng = gen::trial_rng(seed, 0);
        let (n, pt) = point(&mut rng);
        let h = HamSpec::H(gen::necklace(&mut rng, Alphabet::Unstarred, 3, 4));
        let moved = pt.gl_act(&gen::gln(&mut rng, n)).unwrap();
        prop_assert_eq!(eval_ham(&h, &moved).unwrap(), eval_ham(&h, &pt).unwrap());
    }

    #[test]
    fn nagao_words_reassemble_and_alternate(seed in any::<u64>()) {
        let mut rng = gen::trial_rng(seed, 0);
        let m = gen::polymat2(&mut rng, 6, 4);
        let w = nagao_decompose(&m).unwrap();
        prop_assert!(w.is_alternating());
        prop_assert_eq!(reassemble(&w), m);
    }
}

proptest! {
    #![proptest_config(cfg(16))]

    #[test]
    fn normalization_lands_in_the_slice(seed in any::<u64>()) {
        let mut rng = gen::trial_rng(seed, 0);
        let n = rng_dim(&mut rng);
        let pt = scrambled_slice_point(&mut rng, n);
        let out = normalize_to_mn(&pt).unwrap();
        prop_assert!(out.result.in_mn() && out.result.is_fiber());
    }
}

fn rng_dim(rng: &mut ChaCha8Rng) -> usize {
    rng.gen_range(1..=3)
}

fn point(rng: &mut ChaCha8Rng) -> (usize, RepPoint<Scalar>) {
    let n = rng_dim(rng);
    let tau = gen::small_int(rng);
    (n, gen::fiber_point(rng, n, &tau))
}

#[test]
fn reports_are_deterministic() {
    let p = SuiteParams { trials: 10, ..SuiteParams::default() };
    for name in ["flow_theorem", "t_opt", "nagao_roundtrip"] {
        let a = serde_json::to_string(&run_suite(name, &p).unwrap()).unwrap();
        let b = serde_json::to_string(&run_suite(name, &p).unwrap()).unwrap();
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn odd_fourier_literal_counterexample() {
    // f = a: F∘Λ(−a)∘F⁻¹ sends a to a − 1, while Λ′(a*) sends a to a + 1.
    let f = qsymp::autos::necklace_of::<Scalar>(&[(1, "a")]);
    let literal = compose(&fourier(), &compose(&lambda_tri(&f.neg()).unwrap(), &fourier_inv()));
    assert_ne!(lambda_op(&f.mirror()).unwrap(), literal);
}
