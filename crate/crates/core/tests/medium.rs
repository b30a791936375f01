mod common;

use common::{rel, CANONICAL};
use gapspec::{Branch, Error, MediumParams};
use proptest::prelude::*;

#[test]
fn permittivity_reference_values() {
    let p = MediumParams::canonical();
    assert_eq!(p.permittivity(1.2).unwrap(), 0.0);
    assert!(rel(p.permittivity(1e-9).unwrap(), 1.44) < 1e-12);
    assert!(rel(p.permittivity(1.1).unwrap(), (1.21 - 1.44) / (1.21 - 1.0)) < 1e-14);
    assert!((p.permittivity(1.1).unwrap() + 1.095238).abs() < 1e-6);
    assert!(matches!(p.permittivity(1.0), Err(Error::Pole { .. })));
}

#[test]
fn decay_index_reference_values() {
    let p = MediumParams::canonical();
    assert!((p.gap_decay_index(1.1).unwrap() - 1.046536).abs() < 1e-6);
    assert!(rel(p.gap_decay_index(1.1).unwrap(), CANONICAL.nu(1.1)) < 1e-14);
    assert!(p.gap_decay_index(1.2 - 1e-6).unwrap() < 1e-2);
    // 1e-9 lies inside the default guard of 2e-7
    assert!(p.gap_decay_index(1.0 + 1e-9).is_err());
    let fine = p.with_edge_guard(1e-12).unwrap();
    assert!(fine.gap_decay_index(1.0 + 1e-9).unwrap() > 1e3);
    assert!((p.kappa(1.1).unwrap() - 1.151190).abs() < 1e-6);
}

#[test]
fn gap_functions_reject_propagating_frequencies() {
    let p = MediumParams::canonical();
    for w in [0.5, 1.0, 1.2, 1.5] {
        assert!(p.gap_decay_index(w).is_err());
        assert!(p.kappa(w).is_err());
        assert!(p.kappa_prime(w).is_err());
    }
    assert!(matches!(p.refractive_index(1.1), Err(Error::Domain { .. })));
}

#[test]
fn classification_with_edge_guard() {
    let p = MediumParams::canonical();
    let tau = p.edge_guard();
    assert!((tau - 2e-7).abs() < 1e-20);
    assert_eq!(p.classify(0.5), Branch::Lower);
    assert_eq!(p.classify(1.0 - 0.5 * tau), Branch::Edge);
    assert_eq!(p.classify(1.0 + 2.0 * tau), Branch::Gap);
    assert_eq!(p.classify(1.2 + 0.5 * tau), Branch::Edge);
    assert_eq!(p.classify(1.3), Branch::Upper);
}

#[test]
fn absolute_units_normalize() {
    let p = MediumParams::new(3.0, 3.6, 3.3, 1e-3).unwrap();
    let q = MediumParams::canonical();
    assert!(rel(p.omega_par(), q.omega_par()) < 1e-15);
    assert_eq!(p.scale(), 3.0);
    assert_eq!(p.with_length(10.0).unwrap().length(), Some(30.0));
}

#[test]
fn invalid_configurations_fail() {
    assert!(MediumParams::new(1.2, 1.0, 1.1, 1e-3).is_err());
    assert!(MediumParams::new(1.0, 1.2, 1.1, 0.0).is_err());
    assert!(MediumParams::new(-1.0, 1.2, 1.1, 1e-3).is_err());
    assert!(
        MediumParams::new(1.0, 1.2, 1.1, 0.5)
            .unwrap()
            .warnings()
            .len()
            == 1
    );
}

fn gap_point() -> impl Strategy<Value = f64> {
    (1e-5..1.0 - 1e-5f64).prop_map(|t| 1.0 + 0.2 * t)
}

proptest! {
    #[test]
    fn permittivity_sign_by_region(w in 1e-3..5.0f64) {
        let p = MediumParams::canonical();
        match p.classify(w) {
            Branch::Lower | Branch::Upper => prop_assert!(p.permittivity(w).unwrap() > 0.0),
            Branch::Gap => prop_assert!(p.permittivity(w).unwrap() < 0.0),
            Branch::Edge => {}
        }
    }

    #[test]
    fn kappa_decreasing(x in gap_point(), y in gap_point()) {
        prop_assume!(x < y);
        let p = MediumParams::canonical();
        prop_assert!(p.kappa(x).unwrap() > p.kappa(y).unwrap());
        prop_assert!(p.kappa_prime(x).unwrap() < 0.0);
    }

    #[test]
    fn kappa_matches_oracle(x in gap_point()) {
        let p = MediumParams::canonical();
        prop_assert!(rel(p.kappa(x).unwrap(), CANONICAL.kappa(x)) < 1e-12);
        prop_assert!(rel(p.kappa_prime(x).unwrap(), CANONICAL.kappa_prime(x)) < 1e-10);
    }

    #[test]
    fn derivatives_match_central_differences(x in gap_point(), w in 0.05..0.95f64) {
        let p = MediumParams::canonical();
        let fd = |f: &dyn Fn(f64) -> f64, x: f64| {
            let s = 1e-7 * x;
            (f(x + s) - f(x - s)) / (2.0 * s)
        };
        prop_assert!(rel(p.permittivity_derivative(w).unwrap(), fd(&|t| p.permittivity(t).unwrap(), w)) < 1e-6);
        prop_assert!(rel(p.refractive_index_derivative(w).unwrap(), fd(&|t| p.refractive_index(t).unwrap(), w)) < 1e-6);
        prop_assume!(x > 1.0 + 1e-3 && x < 1.2 - 1e-3);
        prop_assert!(rel(p.gap_decay_index_derivative(x).unwrap(), fd(&|t| p.gap_decay_index(t).unwrap(), x)) < 1e-6);
        prop_assert!(rel(p.kappa_prime(x).unwrap(), fd(&|t| p.kappa(t).unwrap(), x)) < 1e-6);
    }

    #[test]
    fn classification_is_exhaustive(w in 1e-6..10.0f64) {
        let p = MediumParams::canonical();
        let b = p.classify(w);
        let expected = if (w - 1.0).abs() < p.edge_guard() || (w - 1.2).abs() < p.edge_guard() {
            Branch::Edge
        } else if w < 1.0 {
            Branch::Lower
        } else if w < 1.2 {
            Branch::Gap
        } else {
            Branch::Upper
        };
        prop_assert_eq!(b, expected);
    }
}
