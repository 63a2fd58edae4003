use std::f64::consts::{FRAC_1_SQRT_2, PI};

use bellkit::bell::{
    bell_parameter, horodecki_max_bell, optimize_bell, psi_family_state, standard_two_qubit_observables,
    xstate_bell_closed_form, xstate_observables, LocalRotationFamily, ObservableFamily, ObservableSet,
    OptimizeConfig, QubitQutritFamilyA, QubitQutritFamilyB, CIRELSON,
};
use bellkit::bipartite::{compose_product, BipartiteState};
use bellkit::dynamics::xstate_p1;
use bellkit::linalg::c;
use bellkit::random::{density_matrix, pure_state, seeded_rng, unitary};
use bellkit::{DensityMatrix, OperatorMatrix, Spin};
use rand::Rng;

fn random_observable<R: Rng>(rng: &mut R, d: usize) -> OperatorMatrix {
    let signs: Vec<f64> = (0..d).map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 }).collect();
    OperatorMatrix::from_real_diagonal(&signs).conjugate_by(&unitary(rng, d))
}

fn random_set<R: Rng>(rng: &mut R, d1: usize, d2: usize) -> ObservableSet {
    ObservableSet::new(
        random_observable(rng, d1),
        random_observable(rng, d1),
        random_observable(rng, d2),
        random_observable(rng, d2),
    )
    .unwrap()
}

fn two_qubit(psi: &[num_complex::Complex64]) -> BipartiteState {
    BipartiteState::from_pure(Spin::HALF, Spin::HALF, psi).unwrap()
}

#[test]
fn cirelson_bound_holds_for_random_trials() {
    let mut rng = seeded_rng(1);
    for (d1, d2) in [(2, 2), (2, 3), (3, 3)] {
        let (s1, s2) = (Spin::from_dim(d1).unwrap(), Spin::from_dim(d2).unwrap());
        for trial in 0..1000 {
            let state = if trial % 2 == 0 {
                BipartiteState::from_pure(s1, s2, &pure_state(&mut rng, d1 * d2)).unwrap()
            } else {
                BipartiteState::new(s1, s2, density_matrix(&mut rng, d1 * d2, 1 + trial % (d1 * d2))).unwrap()
            };
            let f = bell_parameter(&state, &random_set(&mut rng, d1, d2)).unwrap();
            assert!(f <= CIRELSON + 1e-9, "{d1}x{d2} trial {trial}: {f}");
        }
    }
}

#[test]
fn product_states_respect_local_bound() {
    let mut rng = seeded_rng(2);
    let r1 = DensityMatrix::from_pure(&pure_state(&mut rng, 2)).unwrap();
    let r2 = DensityMatrix::from_pure(&pure_state(&mut rng, 3)).unwrap();
    let p = compose_product(&r1, &r2).unwrap();
    let sup = (0..200)
        .map(|_| bell_parameter(&p, &random_set(&mut rng, 2, 3)).unwrap())
        .fold(0.0, f64::max);
    assert!(sup <= 2.0 + 1e-9);
}

#[test]
fn xstate_closed_form_matches_trace() {
    let mut rng = seeded_rng(3);
    let obs = xstate_observables();
    for _ in 0..100 {
        let raw = BipartiteState::new(Spin::HALF, Spin::HALF, density_matrix(&mut rng, 4, 4)).unwrap();
        let x = bellkit::bipartite::x_state_projection(&raw).unwrap();
        let closed = xstate_bell_closed_form(&x).unwrap();
        assert!((closed - bell_parameter(&x, &obs).unwrap()).abs() < 1e-10);
    }
}

#[test]
fn psi_family_closed_form_on_grid() {
    let obs = standard_two_qubit_observables();
    let mut max = (0.0, 0.0, 0.0);
    for i in 0..9 {
        for k in 0..9 {
            let a = -1.0 + i as f64 / 4.0;
            let g = -1.0 + k as f64 / 4.0;
            let rest = 1.0 - a * a - g * g;
            let (b, d) = if rest >= 0.0 { ((rest / 2.0).sqrt(), (rest / 2.0).sqrt()) } else { (0.0, 0.0) };
            let psi = psi_family_state(a, b, g, d);
            let norm = bellkit::linalg::vector_norm(&psi);
            let psi: Vec<_> = psi.iter().map(|z| z / norm).collect();
            let (a, g) = (a / norm, g / norm);
            let f = bell_parameter(&two_qubit(&psi), &obs).unwrap();
            assert!((f - (4.0 * 2f64.sqrt() * a * g).abs()).abs() < 1e-10);
            if f > max.0 {
                max = (f, a, g);
            }
        }
    }
    let (a, g) = (FRAC_1_SQRT_2, FRAC_1_SQRT_2);
    let f = bell_parameter(&two_qubit(&psi_family_state(a, 0.0, g, 0.0)), &obs).unwrap();
    assert!((f - CIRELSON).abs() < 1e-12);
    assert!((max.1 * max.2).abs() <= 0.5 + 1e-12);
}

#[test]
fn rotated_axes_form() {
    let obs = standard_two_qubit_observables();
    let mut rng = seeded_rng(4);
    for _ in 0..50 {
        let v: Vec<f64> = (0..4).map(|_| rng.random_range(-1.0..1.0)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let (a, b, g, d) = (v[0] / n, v[1] / n, v[2] / n, v[3] / n);
        // amplitudes on |++⟩, |−−⟩, |+−⟩, |−+⟩ rewritten in the Bell basis
        let psi = vec![c(a, 0.0), c(g, 0.0), c(d, 0.0), c(b, 0.0)];
        let f = bell_parameter(&two_qubit(&psi), &obs).unwrap();
        let along = (a + b) * FRAC_1_SQRT_2;
        let across = (g - d) * FRAC_1_SQRT_2;
        assert!((f - (4.0 * 2f64.sqrt() * along * across).abs()).abs() < 1e-10);
    }
}

#[test]
fn optimizer_matches_horodecki_on_random_states() {
    let mut rng = seeded_rng(5);
    let fam = LocalRotationFamily;
    for trial in 0..20 {
        let s = BipartiteState::new(Spin::HALF, Spin::HALF, density_matrix(&mut rng, 4, 1 + trial % 4)).unwrap();
        let cfg = OptimizeConfig::new(fam.arity(), 12, 6000, trial as u64);
        let res = optimize_bell(&s, &fam, &cfg).unwrap();
        let oracle = horodecki_max_bell(&s).unwrap();
        assert!((res.f_b - oracle).abs() < 1e-5, "trial {trial}: {} vs {oracle}", res.f_b);
    }
}

#[test]
fn dephased_states_stay_classical() {
    let mut rng = seeded_rng(6);
    let p: Vec<f64> = {
        let raw: Vec<f64> = (0..6).map(|_| rng.random::<f64>()).collect();
        let s: f64 = raw.iter().sum();
        raw.iter().map(|x| x / s).collect()
    };
    let s = BipartiteState::new(Spin::HALF, Spin::ONE, OperatorMatrix::from_real_diagonal(&p)).unwrap();
    for fam in [&QubitQutritFamilyA::default() as &dyn ObservableFamily, &QubitQutritFamilyB::default()] {
        let res = optimize_bell(&s, fam, &OptimizeConfig::new(fam.arity(), 8, 3000, 9)).unwrap();
        assert!(res.f_b <= 2.0 + 1e-9);
    }
}

#[test]
fn family_b_reaches_near_cirelson_on_the_xstate() {
    let fam = QubitQutritFamilyB::default();
    let s = xstate_p1(3.0 * PI / 4.0, 0.0);
    let res = optimize_bell(&s, &fam, &OptimizeConfig::new(8, 64, 4000, 7)).unwrap();
    assert!(res.f_b >= CIRELSON - 1e-3 && res.f_b <= CIRELSON + 1e-9);
}

#[test]
fn optimizer_is_deterministic_across_thread_counts() {
    let s = xstate_p1(3.0 * PI / 4.0, 0.4);
    let fam = QubitQutritFamilyA::default();
    let cfg = OptimizeConfig::new(7, 6, 1500, 42);
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let a = one.install(|| optimize_bell(&s, &fam, &cfg).unwrap());
    let b = four.install(|| optimize_bell(&s, &fam, &cfg).unwrap());
    assert_eq!(a, b);
}
