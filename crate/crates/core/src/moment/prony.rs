use super::generating::{generating_poly, regularity_check, Regularity};
use super::poly::poly_roots;
use super::vandermonde::vandermonde_solve;
use super::{Convention, MomentData, NodeSet};
use crate::error::{Error, Result};

/// Nodes as the roots of the generating polynomial, weights from the
/// first `n` moment equations. Weights are returned in the `Z` convention.
pub fn prony_solve(md: &MomentData) -> Result<NodeSet> {
    let n = md.n();
    let g = generating_poly(md);
    if let Regularity::Degenerate(reason) = regularity_check(&g, n) {
        return Err(Error::Degenerate(reason));
    }
    let nodes = poly_roots(&g)?;
    let weights = vandermonde_solve(&nodes, &md.moments()[..n])?;
    Ok(NodeSet {
        convention: Convention::Z,
        nodes,
        weights,
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use num_complex::Complex64;

    use super::*;
    use crate::moment::{multiset_distance, Degeneracy};

    fn phases(ks: &[f64]) -> Vec<Complex64> {
        ks.iter().map(|k| Complex64::from_polar(1.0, k * PI / 8.0)).collect()
    }

    #[test]
    fn symmetric_coefficient_case() {
        // n = 4, μ = 2: g_0 = g_4 at ω = √2 gives z⁴ − √2z² + 1
        let md = MomentData::delta(4, 2, 2f64.sqrt()).unwrap();
        let ns = prony_solve(&md).unwrap();
        assert!(ns.moment_residual(&md) < 1e-12);
        assert!(multiset_distance(&ns.nodes, &phases(&[1.0, -1.0, 7.0, -7.0])) < 1e-10);
        for x in ns.amplitudes(4) {
            assert!((x - Complex64::new(2f64.sqrt() / 4.0, 0.0)).norm() < 1e-10);
        }
        // the mirrored value ω = −√2 puts the nodes at ±3π/8, ±5π/8
        let md = MomentData::delta(4, 2, -(2f64.sqrt())).unwrap();
        let ns = prony_solve(&md).unwrap();
        assert!(multiset_distance(&ns.nodes, &phases(&[3.0, -3.0, 5.0, -5.0])) < 1e-10);
        for x in ns.amplitudes(4) {
            assert!((x + Complex64::new(2f64.sqrt() / 4.0, 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn first_harmonic_pair() {
        let md = MomentData::delta(2, 1, -(2f64.sqrt())).unwrap();
        let ns = prony_solve(&md).unwrap();
        let expect = [
            Complex64::from_polar(1.0, 0.75 * PI),
            Complex64::from_polar(1.0, -0.75 * PI),
        ];
        assert!(multiset_distance(&ns.nodes, &expect) < 1e-12);
        for x in ns.amplitudes(2) {
            assert!((x - Complex64::new(-(2f64.sqrt()) / 2.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn degenerate_data_is_reported() {
        let md = MomentData::delta(3, 2, 1.0).unwrap();
        assert!(matches!(
            prony_solve(&md),
            Err(Error::Degenerate(Degeneracy::ZeroPolynomial))
        ));
    }
}
