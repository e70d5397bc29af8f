mod common;

use std::f64::consts::PI;

use apo_core::chebyshev::omega_set;
use apo_core::families::{Family, FamilySpec};
use apo_core::trig::extract_harmonic_on_grid;

fn branches(family: Family, a: usize, b: usize) -> Vec<FamilySpec> {
    match family {
        Family::MuOne => (1..=a + 1).map(|al| FamilySpec::mu_one(a, al).unwrap()).collect(),
        Family::MuTwo => (1..=a).map(|al| FamilySpec::mu_two(a, al).unwrap()).collect(),
        Family::General => (1..=b).map(|al| FamilySpec::general(a, b, al).unwrap()).collect(),
        Family::MuEqualsN => vec![FamilySpec::mu_equals_n(a).unwrap()],
    }
}

fn all_specs() -> Vec<FamilySpec> {
    let mut v = Vec::new();
    for n in 1..=6 {
        v.extend(branches(Family::MuEqualsN, n, 0));
    }
    for n in 2..=6 {
        v.extend(branches(Family::MuOne, n, 0));
    }
    for s in 2..=5 {
        v.extend(branches(Family::MuTwo, s, 0));
    }
    for mu in 2..=4 {
        for s in 2..=3 {
            v.extend(branches(Family::General, mu, s));
        }
    }
    v
}

#[test]
fn fifty_random_extractions_per_operator() {
    let mut rng = common::rng(2024);
    for spec in all_specs() {
        let op = spec.build().unwrap();
        assert_eq!(op.terms().len(), spec.terms());
        assert_eq!(op.valid_degree(), spec.valid_degree());
        let mut worst: f64 = 0.0;
        for _ in 0..50 {
            let p = common::random_poly(&mut rng, spec.valid_degree());
            worst = worst.max(extract_harmonic_on_grid(&op, &p, 256).unwrap().max_deviation);
        }
        assert!(worst < 1e-9, "{spec:?}: {worst:e}");
    }
}

#[test]
fn omega_lies_in_admissible_set() {
    for spec in all_specs() {
        let op = spec.build().unwrap();
        assert!((op.omega() - spec.omega).abs() < 1e-10, "{spec:?}");
        if matches!(spec.family, Family::MuTwo | Family::General) {
            assert!(omega_set(spec.s).distance(op.omega()) < 1e-10);
        }
        if spec.family == Family::MuOne {
            assert!(omega_set(spec.n + 1).distance(op.omega()) < 1e-10);
        }
    }
}

#[test]
fn branches_have_distinct_omegas() {
    for (family, a, b) in [
        (Family::MuOne, 5, 0),
        (Family::MuTwo, 6, 0),
        (Family::General, 3, 4),
    ] {
        let specs = branches(family, a, b);
        let omegas: Vec<f64> = specs.iter().map(|s| s.build().unwrap().omega()).collect();
        let expected = match family {
            Family::MuOne => a + 1,
            Family::MuTwo => a,
            _ => b,
        };
        assert_eq!(omegas.len(), expected);
        for i in 0..omegas.len() {
            for j in i + 1..omegas.len() {
                assert!((omegas[i] - omegas[j]).abs() > 1e-6);
            }
        }
    }
}

#[test]
fn nodes_are_unimodular_and_conjugation_closed() {
    for spec in all_specs() {
        let nodes = spec.build().unwrap().nodes();
        for z in &nodes {
            assert!((z.norm() - 1.0).abs() < 1e-12);
            assert!(nodes.iter().any(|y| (y - z.conj()).norm() < 1e-9), "{spec:?}");
        }
    }
}

#[test]
fn general_nodes_sum_identity() {
    // the node polynomial has no z^{m−1} term beyond the one fixed by z_k itself
    for mu in 2..=5 {
        for s in 2..=4 {
            for alpha in 1..=s {
                let nodes = apo_core::solve_general(mu, s, alpha).unwrap().nodes();
                let total: num_complex::Complex64 = nodes.iter().sum();
                assert!(total.norm() < 1e-10, "mu={mu} s={s} alpha={alpha}");
                for (k, zk) in nodes.iter().enumerate() {
                    let others: num_complex::Complex64 =
                        nodes.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, z)| z).sum();
                    assert!((-others - zk).norm() < 1e-10);
                }
            }
        }
    }
}

#[test]
fn first_harmonic_amplitudes_match_cosecant_product() {
    for n in 2..=10 {
        for alpha in 1..=n + 1 {
            let op = apo_core::solve_mu_one(n, alpha).unwrap();
            let lam: Vec<f64> = op.terms().iter().map(|t| t.1).collect();
            for (k, &(x, lk)) in op.terms().iter().enumerate() {
                let prod: f64 = lam
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != k)
                    .map(|(_, lj)| ((lj - lk) / 2.0).sin().abs())
                    .product();
                let expect = 1.0 / (2f64.powi(n as i32 - 1) * prod);
                assert!((x.abs() - expect).abs() < 1e-8 * expect, "n={n} alpha={alpha}");
            }
        }
    }
    // the equally spaced first-harmonic set uses the (n+2)-th roots of −1 without e^{±iπn/(n+2)}
    let op = apo_core::solve_mu_one(3, 3).unwrap();
    let mut lam: Vec<f64> = op.terms().iter().map(|t| t.1).collect();
    lam.sort_by(f64::total_cmp);
    let expect = [-PI / 5.0, PI / 5.0, PI];
    for (a, e) in lam.iter().zip(expect) {
        assert!((a - e).abs() < 1e-12);
    }
}
