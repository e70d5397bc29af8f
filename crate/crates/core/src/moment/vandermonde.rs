use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::poly::min_pairwise_distance;
use crate::error::{Error, Result};

const SINGULAR_NODE_TOL: f64 = 1e-12;

fn check_nodes(nodes: &[Complex64]) -> Result<()> {
    if nodes.is_empty() {
        return Err(Error::InvalidArgument("need at least one node".into()));
    }
    let d = min_pairwise_distance(nodes);
    if d < SINGULAR_NODE_TOL {
        return Err(Error::SingularNodes { min_distance: d });
    }
    Ok(())
}

/// Coefficients of `Π_j (z − z_j)`, constant first.
fn node_polynomial(nodes: &[Complex64]) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for &z in nodes {
        c.push(Complex64::new(0.0, 0.0));
        for i in (1..c.len()).rev() {
            let prev = c[i - 1];
            c[i] = prev - z * c[i];
        }
        c[0] *= -z;
    }
    c
}

/// Row `k` of the inverse Vandermonde matrix: coefficients of
/// `Π_{j≠k}(z − z_j)` (by deflation of the full node polynomial) over
/// `Π_{j≠k}(z_k − z_j)`.
fn lagrange_rows(nodes: &[Complex64]) -> Vec<Vec<Complex64>> {
    let n = nodes.len();
    let full = node_polynomial(nodes);
    nodes
        .iter()
        .enumerate()
        .map(|(k, &zk)| {
            // synthetic division of full by (z − z_k), highest degree first
            let mut q = vec![Complex64::new(0.0, 0.0); n];
            let mut carry = Complex64::new(0.0, 0.0);
            for i in (1..=n).rev() {
                carry = full[i] + carry * zk;
                q[i - 1] = carry;
            }
            let denom: Complex64 = nodes
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, &zj)| zk - zj)
                .product();
            q.into_iter().map(|c| c / denom).collect()
        })
        .collect()
}

/// Solves `Σ_k Y_k z_k^{l−1} = rhs_l`, `l = 1..n`, through the explicit
/// inverse-Vandermonde rows (elementary symmetric functions of the other
/// nodes over the node-difference products).
pub fn vandermonde_solve(nodes: &[Complex64], rhs: &[Complex64]) -> Result<Vec<Complex64>> {
    check_nodes(nodes)?;
    if rhs.len() != nodes.len() {
        return Err(Error::InvalidArgument(format!(
            "{} nodes but {} right-hand sides",
            nodes.len(),
            rhs.len()
        )));
    }
    Ok(lagrange_rows(nodes)
        .into_iter()
        .map(|row| row.iter().zip(rhs).map(|(a, b)| a * b).sum())
        .collect())
}

/// Same system as [`vandermonde_solve`], by LU factorization of the
/// Vandermonde matrix.
pub fn vandermonde_solve_lu(nodes: &[Complex64], rhs: &[Complex64]) -> Result<Vec<Complex64>> {
    check_nodes(nodes)?;
    let n = nodes.len();
    if rhs.len() != n {
        return Err(Error::InvalidArgument("rhs length mismatch".into()));
    }
    let v = DMatrix::from_fn(n, n, |l, k| nodes[k].powu(l as u32));
    let b = DVector::from_column_slice(rhs);
    v.lu()
        .solve(&b)
        .map(|x| x.iter().copied().collect())
        .ok_or(Error::SingularNodes { min_distance: 0.0 })
}

/// Weights `Y_k(μ) = (−1)^{n−μ} ρ^{(k)}_{n−μ} / Π_{j≠k}(z_k − z_j)` for the
/// delta right-hand side `σ_l = δ_{lμ}`, `l = 1..n`.
pub fn amplitudes_for_delta(nodes: &[Complex64], mu: usize, n: usize) -> Result<Vec<Complex64>> {
    check_nodes(nodes)?;
    if nodes.len() != n {
        return Err(Error::InvalidArgument(format!(
            "expected {n} nodes, got {}",
            nodes.len()
        )));
    }
    if mu == 0 || mu > n {
        return Err(Error::InvalidArgument(format!("mu = {mu} outside 1..={n}")));
    }
    Ok(lagrange_rows(nodes).into_iter().map(|row| row[mu - 1]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn roots_of_unity(n: usize) -> Vec<Complex64> {
        (0..n)
            .map(|k| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64))
            .collect()
    }

    #[test]
    fn node_polynomial_expands_product() {
        let p = node_polynomial(&[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]);
        let expect = [-6.0, 11.0, -6.0, 1.0];
        for (a, e) in p.iter().zip(expect) {
            assert!((a - c(e, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn two_by_two() {
        let y = vandermonde_solve(&[c(1.0, 0.0), c(-1.0, 0.0)], &[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!((y[0] - c(0.5, 0.0)).norm() < 1e-15);
        assert!((y[1] - c(-0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn fourth_roots_basis_vector_matches_lu() {
        let nodes = roots_of_unity(4);
        let rhs = [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)];
        let a = vandermonde_solve(&nodes, &rhs).unwrap();
        let b = vandermonde_solve_lu(&nodes, &rhs).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).norm() < 1e-14);
        }
    }

    #[test]
    fn delta_weights_first_harmonic_on_imaginary_pair() {
        let nodes = [c(0.0, 1.0), c(0.0, -1.0)];
        let y = amplitudes_for_delta(&nodes, 1, 2).unwrap();
        let lu = vandermonde_solve_lu(&nodes, &[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        for (a, b) in y.iter().zip(&lu) {
            assert!((a - b).norm() < 1e-15);
        }
        assert!((y[0] - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn delta_weights_on_roots_of_unity_are_uniform_amplitudes() {
        // mu = n: X_k = 1/n on n-th roots of unity
        for n in 1..=8 {
            let nodes = roots_of_unity(n);
            let y = amplitudes_for_delta(&nodes, n, n).unwrap();
            for (yk, zk) in y.iter().zip(&nodes) {
                assert!((yk / zk - c(1.0 / n as f64, 0.0)).norm() < 1e-13);
            }
        }
        let nodes = roots_of_unity(3);
        let y = amplitudes_for_delta(&nodes, 3, 3).unwrap();
        let lu = vandermonde_solve_lu(&nodes, &[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        for (a, b) in y.iter().zip(&lu) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn coincident_nodes_rejected() {
        let err = vandermonde_solve(&[c(1.0, 0.0), c(1.0, 0.0)], &[c(1.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(err, Err(Error::SingularNodes { .. })));
        assert!(matches!(
            amplitudes_for_delta(&[c(1.0, 0.0)], 1, 2),
            Err(Error::InvalidArgument(_))
        ));
    }
}
