mod common;

use apo_core::moment::{
    amplitudes_for_delta, generating_poly, generating_poly_raw, multiset_distance, poly_roots, prony_solve,
    regularity_check, vandermonde_solve, vandermonde_solve_lu, MomentData,
};
use apo_core::regularization::nonregular_leading_coefficient;
use num_complex::Complex64;
use proptest::prelude::*;

fn annulus_point() -> impl Strategy<Value = Complex64> {
    (0.55f64..1.45, -std::f64::consts::PI..std::f64::consts::PI)
        .prop_map(|(r, t)| Complex64::from_polar(r, t))
}

fn separated(nodes: &[Complex64], gap: f64) -> bool {
    apo_core::moment::min_pairwise_distance(nodes) > gap
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn delta_weights_agree_with_linear_solve(
        nodes in prop::collection::vec(annulus_point(), 2..7),
        mu_seed in 0usize..100,
    ) {
        prop_assume!(separated(&nodes, 0.2));
        let n = nodes.len();
        let mu = 1 + mu_seed % n;
        let a = amplitudes_for_delta(&nodes, mu, n).unwrap();
        let mut rhs = vec![Complex64::new(0.0, 0.0); n];
        rhs[mu - 1] = Complex64::new(1.0, 0.0);
        let b = vandermonde_solve_lu(&nodes, &rhs).unwrap();
        let c = vandermonde_solve(&nodes, &rhs).unwrap();
        let scale = b.iter().map(|v| v.norm()).fold(1.0, f64::max);
        for ((x, y), z) in a.iter().zip(&b).zip(&c) {
            prop_assert!((x - y).norm() < 1e-10 * scale);
            prop_assert!((z - y).norm() < 1e-10 * scale);
        }
    }

    #[test]
    fn generating_poly_recovers_synthetic_nodes(
        nodes in prop::collection::vec(annulus_point(), 2..7),
        weights in prop::collection::vec(annulus_point(), 6),
    ) {
        prop_assume!(separated(&nodes, 0.2));
        let n = nodes.len();
        let md = MomentData::from_nodes(n, &nodes, &weights[..n]).unwrap();
        // clustered nodes can push the exact determinant under the zero test
        let exact = nonregular_leading_coefficient(n, &nodes, &weights[..n]).norm()
            * apo_core::ComplexPoly::from_roots(&nodes).max_abs();
        prop_assume!(exact > 1e-8 * generating_poly_raw(&md).scale);
        let g = generating_poly(&md);
        prop_assert!(regularity_check(&g, n).is_regular());
        let roots = poly_roots(&g).unwrap();
        prop_assert!(multiset_distance(&roots, &nodes) < 1e-7);
        // proportional to Π(z − z_k)
        let monic = g.scale(g.coeff(n).inv());
        let expect = apo_core::ComplexPoly::from_roots(&nodes);
        for k in 0..=n {
            prop_assert!((monic.coeff(k) - expect.coeff(k)).norm() < 1e-7 * (1.0 + expect.coeff(k).norm()));
        }
        let ns = prony_solve(&md).unwrap();
        prop_assert!(ns.moment_residual(&md) < 1e-8);
    }

    #[test]
    fn delta_generating_poly_is_real(n in 2usize..10, mu_seed in 0usize..100, w in -1.9f64..1.9) {
        let mu = 1 + mu_seed % n;
        let g = generating_poly(&MomentData::delta(n, mu, w).unwrap());
        prop_assert!(g.imag_residue() < 1e-12);
    }
}

/// `(n, μ, ω)` with regular delta data whose roots are unimodular, taken
/// from the closed-form families and the even-case candidates.
fn regular_delta_cases() -> Vec<(usize, usize, f64)> {
    let mut v = vec![(4, 2, 2f64.sqrt()), (4, 2, -(2f64.sqrt())), (8, 2, 0.0)];
    for n in 2..=10 {
        for a in 1..=n + 1 {
            v.push((n, 1, -2.0 * (std::f64::consts::PI * a as f64 / (n + 2) as f64).cos()));
        }
    }
    for n in 1..=10 {
        v.push((n, n, 1.0));
    }
    v
}

#[test]
fn prony_round_trip_and_real_amplitudes() {
    for (n, mu, w) in regular_delta_cases() {
        let md = MomentData::delta(n, mu, w).unwrap();
        let ns = prony_solve(&md).unwrap_or_else(|e| panic!("n={n} mu={mu} w={w}: {e}"));
        assert!(ns.moment_residual(&md) < 1e-8, "n={n} mu={mu} w={w}");
        assert!(ns.is_admissible(&md, 1e-8), "n={n} mu={mu} w={w}");
        for x in ns.amplitudes(n) {
            assert!(x.im.abs() < 1e-9, "n={n} mu={mu} w={w}: {x}");
            assert!(x.norm() > 1e-9);
        }
    }
}

#[test]
fn even_case_candidates_feed_prony() {
    // every admissible solution found this way must also satisfy the moment system
    let mut solved = 0;
    for (n, mu) in [(4, 2), (8, 2), (6, 2), (6, 3), (8, 4)] {
        let c = apo_core::even_case_filter(n, mu).unwrap();
        for w in c.all() {
            let md = MomentData::delta(n, mu, w).unwrap();
            if let Ok(ns) = prony_solve(&md) {
                if ns.is_admissible(&md, 1e-8) {
                    assert!(ns.amplitudes(n).iter().all(|x| x.im.abs() < 1e-9));
                    solved += 1;
                }
            }
        }
    }
    assert!(solved >= 3);
}
