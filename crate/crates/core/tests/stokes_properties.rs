mod common;

use common::{random_state, random_unit, rng};
use num_complex::Complex64;
use proptest::prelude::*;
use su2limits::fockstate::overlap;
use su2limits::stokes::{
    check_bounds, covariance, directional_variance, principal_variances, stokes_set, stokes_vector,
};
use su2limits::TwoModeState;

#[test]
fn casimir_identity_and_bounds_for_random_states() {
    let mut rng = rng(7);
    for n in 1..=8 {
        let casimir = (n * (n + 2)) as f64;
        for _ in 0..1000 {
            let psi = random_state(&mut rng, n);
            let gamma = covariance(&psi).unwrap();
            let s = stokes_vector(&psi).unwrap();
            let s2: f64 = s.iter().map(|x| x * x).sum();
            assert!((gamma.trace() + s2 - casimir).abs() <= 1e-10 * casimir.max(1.0));

            let pv = principal_variances(&gamma);
            assert!((pv.sum() - gamma.trace()).abs() <= 1e-12 * casimir);
            let report = check_bounds(&pv.lambdas, n);
            assert!(report.all_pass(), "N={n} {:?}", report);
        }
    }
}

#[test]
fn commutators_close_on_the_manifold() {
    let i2 = Complex64::new(0.0, 2.0);
    for n in 1..=8 {
        let set = stokes_set(n).unwrap();
        for (k, l, m) in [(1, 2, 3), (2, 3, 1), (3, 1, 2)] {
            let (a, b) = (set.matrix(k), set.matrix(l));
            let comm = a * b - b * a;
            let want = set.matrix(m) * i2;
            let err = (comm - want).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(err <= 1e-12, "N={n} [{k},{l}]: {err}");
        }
    }
}

#[test]
fn robertson_inequality_for_each_pair() {
    // Var(s_k) Var(s_l) >= <s_m>^2 for every cyclic (k, l, m)
    let mut rng = rng(11);
    for n in 1..=6 {
        for _ in 0..200 {
            let psi = random_state(&mut rng, n);
            let gamma = covariance(&psi).unwrap();
            let s = stokes_vector(&psi).unwrap();
            for (k, l, m) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
                let lhs = gamma.gamma[k][k] * gamma.gamma[l][l];
                assert!(lhs + 1e-9 * (n * n) as f64 >= s[m] * s[m]);
            }
        }
    }
}

#[test]
fn directional_extremes_are_principal_variances() {
    let mut rng = rng(3);
    for n in [2, 3, 5] {
        let psi = random_state(&mut rng, n);
        let pv = principal_variances(&covariance(&psi).unwrap());
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for _ in 0..10_000 {
            let v = directional_variance(&psi, &random_unit(&mut rng)).unwrap();
            lo = lo.min(v);
            hi = hi.max(v);
        }
        assert!(lo >= pv.lambdas[0] - 1e-6 && hi <= pv.lambdas[2] + 1e-6);
        assert!(lo - pv.lambdas[0] < 1e-2 && pv.lambdas[2] - hi < 1e-2);
        for axis in &pv.axes {
            let v = directional_variance(&psi, axis).unwrap();
            assert!(pv.lambdas.iter().any(|l| (l - v).abs() < 1e-9));
        }
    }
}

proptest! {
    #[test]
    fn constructors_are_normalized(n in 1usize..12, theta in 0.0f64..3.2, phi in -7.0f64..7.0) {
        let coherent = TwoModeState::su2_coherent(n, theta, phi).unwrap();
        prop_assert!((coherent.norm() - 1.0).abs() <= 1e-12);
        let s = stokes_vector(&coherent).unwrap();
        let len = s.iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assert!((len - n as f64).abs() <= 1e-10);
        prop_assert!((TwoModeState::noon(n).unwrap().norm() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn overlaps_are_bounded(seed in any::<u64>(), n in 1usize..9) {
        let mut rng = rng(seed);
        let a = random_state(&mut rng, n);
        let b = random_state(&mut rng, n);
        prop_assert!(overlap(&a, &b).unwrap().norm() <= 1.0 + 1e-12);
        prop_assert!((overlap(&a, &a).unwrap().norm() - 1.0).abs() <= 1e-12);
    }
}
