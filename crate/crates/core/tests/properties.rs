use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hopf_gauge::algebra::{GrassmannAlgebra, GrassmannNumber, Parity, Quaternion};
use hopf_gauge::bundle::charts::{chart_for, S4_HYPERSPHERICAL};
use hopf_gauge::bundle::{hopf_project, random_fiber_element, random_total_point, right_action, Case};
use hopf_gauge::forms::{integrate, random_form, volume_form};
use hopf_gauge::gauge::{projector_from_ket, ProjectorCase};
use hopf_gauge::report::{cmd_verify, CaseSelector, RunConfig};
use hopf_gauge::supermatrix::random_uosp;

fn quaternion() -> impl Strategy<Value = Quaternion> {
    prop::array::uniform4(-2.0f64..2.0).prop_map(Quaternion::from_components)
}

/// Sparse elements of `C_4` with small integer coefficients, so products are exact.
fn grassmann() -> impl Strategy<Value = GrassmannNumber> {
    prop::collection::vec((0u32..16, -4i32..=4, -4i32..=4), 0..6).prop_map(|t| {
        GrassmannNumber::from_terms(t.into_iter().map(|(m, re, im)| (m, Complex64::new(re as f64, im as f64))))
    })
}

fn case() -> impl Strategy<Value = Case> {
    prop_oneof![Just(Case::Monopole), Just(Case::Graded), Just(Case::Instanton)]
}

proptest! {
    #[test]
    fn quaternion_ring_axioms(a in quaternion(), b in quaternion(), c in quaternion()) {
        prop_assert!(((a * b) * c - a * (b * c)).max_abs() < 1e-12);
        prop_assert!((a * (b + c) - (a * b + a * c)).max_abs() < 1e-12);
        prop_assert!(((a * b).trace() - (b * a).trace()).norm() < 1e-12);
        prop_assert!(((a * b).conj() - b.conj() * a.conj()).max_abs() < 1e-12);
    }

    #[test]
    fn grassmann_ring_axioms(a in grassmann(), b in grassmann(), c in grassmann()) {
        let (a2, b2, c2) = (a.clone(), b.clone(), c.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!((a2 * b2).body(), a.body() * b.body());
        prop_assert_eq!((a.clone() * c2).involution(), a.involution() * c.involution());
    }

    #[test]
    fn involution_squares_to_parity(seed in any::<u64>(), odd in any::<bool>()) {
        let alg = GrassmannAlgebra::new(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let parity = if odd { Parity::Odd } else { Parity::Even };
        let x = alg.random_homogeneous(&mut rng, parity);
        let expected = if odd { -x.clone() } else { x.clone() };
        prop_assert_eq!(x.involution().involution(), expected);
    }

    #[test]
    fn d_squared_vanishes(seed in any::<u64>()) {
        let alg = GrassmannAlgebra::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_form(&mut rng, &alg, 6);
        prop_assert!(f.d().d().max_abs() < 1e-13);
    }

    #[test]
    fn uosp_unitary_with_unit_berezinian(seed in any::<u64>()) {
        let alg = GrassmannAlgebra::new(2).unwrap();
        let s = random_uosp(&alg, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert!(s.unitarity_residual() < 1e-12);
        let sdet = s.sdet().unwrap() - GrassmannNumber::real(1.0);
        prop_assert!(sdet.max_abs() < 1e-12);
    }

    #[test]
    fn actions_preserve_constraints_and_projectors(case in case(), seed in any::<u64>(), transposed in any::<bool>()) {
        let alg = GrassmannAlgebra::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_total_point(case, &mut rng, &alg);
        let w = random_fiber_element(case, &mut rng, &alg);
        let tw = right_action(&t, &w).unwrap();
        prop_assert!(tw.constraint_residual() < 1e-12);
        let (x, xw) = (hopf_project(&t).unwrap(), hopf_project(&tw).unwrap());
        prop_assert!(x.constraint_residual() < 1e-12);
        let body: Vec<f64> = x.body().iter().zip(xw.body()).map(|(a, b)| (a - b).abs()).collect();
        prop_assert!(body.iter().all(|d| *d < 1e-12));
        let pc = ProjectorCase::new(case, transposed);
        let (p, pw) = (projector_from_ket(pc, &t).unwrap(), projector_from_ket(pc, &tw).unwrap());
        prop_assert!(p.max_abs_diff(&pw) < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn same_config_same_payload(seed in 0u64..1000, samples in 1usize..20) {
        let cfg = RunConfig { case: CaseSelector::Monopole, seed, samples: Some(samples), ..RunConfig::default() };
        let a = cmd_verify(&cfg).unwrap();
        let b = cmd_verify(&cfg).unwrap();
        prop_assert_eq!(a.payload(), b.payload());
    }
}

#[test]
fn s4_volume_converged_beyond_order_24() {
    let chart = chart_for(Case::Instanton, S4_HYPERSPHERICAL).unwrap();
    let vol = volume_form(5);
    let a = integrate(&vol, &chart, 24).unwrap().value;
    let b = integrate(&vol, &chart, 48).unwrap().value;
    assert!((a - b).abs() < 1e-9, "{a} vs {b}");
}
