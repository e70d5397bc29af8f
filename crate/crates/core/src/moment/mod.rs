//! Discrete moment problems `Σ_k Z_k z_k^l = S_l`, `l = 0..2n−1`.
//!
//! The harmonic-extraction conditions read `σ_{±μ} = 1`, `σ_0 = ω` and all
//! other `σ_l = 0` for `l ∈ [1−n, n]`, with `S_l = σ_{1−n+l}`. The nodes are
//! the simple roots of the bordered Hankel determinant built from the `S_l`
//! (the generating polynomial), after which the weights follow from a
//! Vandermonde solve.

mod generating;
mod poly;
mod prony;
mod structure;
mod vandermonde;

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use generating::{
    bordered_cofactors, corner_cofactor, generating_poly, generating_poly_raw, regularity_check,
    GeneratingRaw, Regularity, ROOT_DISTINCT_TOL, ZERO_POLY_REL,
};
pub use poly::{
    min_pairwise_distance, multiset_distance, poly_roots, sort_roots, ComplexPoly,
    ROOT_MAX_ITERATIONS, ROOT_STEP_TOL, ZERO_COEFF_REL,
};
pub use prony::prony_solve;
pub use structure::{structure_checks, StructureReport};
pub use vandermonde::{amplitudes_for_delta, vandermonde_solve, vandermonde_solve_lu};

/// Right-hand sides of the full moment system.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentData {
    n: usize,
    mu: Option<usize>,
    /// `S_l = σ_{1−n+l}` for `l = 0..2n−1`.
    moments: Vec<Complex64>,
}

impl MomentData {
    /// Delta-type data: `σ_{±μ} = 1`, `σ_0 = ω`, all other `σ = 0`
    /// (`σ_{−μ}` lies outside the window when `μ = n`).
    pub fn delta(n: usize, mu: usize, omega: f64) -> Result<Self> {
        if n == 0 || mu == 0 || mu > n {
            return Err(Error::InvalidArgument(format!(
                "need 1 <= mu <= n, got n = {n}, mu = {mu}"
            )));
        }
        let mut md = Self {
            n,
            mu: Some(mu),
            moments: vec![Complex64::new(0.0, 0.0); 2 * n],
        };
        md.set_sigma(0, Complex64::new(omega, 0.0));
        md.set_sigma(mu as i64, Complex64::new(1.0, 0.0));
        if mu < n {
            md.set_sigma(-(mu as i64), Complex64::new(1.0, 0.0));
        }
        Ok(md)
    }

    /// Arbitrary data from the sequence `S_0 … S_{2n−1}`.
    pub fn from_sequence(moments: Vec<Complex64>) -> Result<Self> {
        if moments.is_empty() || moments.len() % 2 != 0 {
            return Err(Error::InvalidArgument(
                "moment sequence must have even positive length 2n".into(),
            ));
        }
        Ok(Self {
            n: moments.len() / 2,
            mu: None,
            moments,
        })
    }

    /// Exact moments `S_l = Σ_k Z_k z_k^l` of a known node/weight set.
    pub fn from_nodes(n: usize, nodes: &[Complex64], weights: &[Complex64]) -> Result<Self> {
        if nodes.len() != weights.len() {
            return Err(Error::InvalidArgument("nodes and weights differ in length".into()));
        }
        let moments = (0..2 * n)
            .map(|l| {
                nodes
                    .iter()
                    .zip(weights)
                    .map(|(z, w)| w * z.powu(l as u32))
                    .sum()
            })
            .collect();
        Self::from_sequence(moments)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mu(&self) -> Option<usize> {
        self.mu
    }

    /// `ω = σ_0` (real part).
    pub fn omega(&self) -> f64 {
        self.sigma(0).re
    }

    /// `S_0 … S_{2n−1}`.
    pub fn moments(&self) -> &[Complex64] {
        &self.moments
    }

    fn index(&self, l: i64) -> usize {
        let n = self.n as i64;
        assert!((1 - n..=n).contains(&l), "sigma index {l} outside [1-n, n]");
        (l + n - 1) as usize
    }

    pub fn sigma(&self, l: i64) -> Complex64 {
        self.moments[self.index(l)]
    }

    pub fn set_sigma(&mut self, l: i64, value: Complex64) {
        let i = self.index(l);
        self.moments[i] = value;
    }

    pub fn with_sigma(&self, l: i64, value: Complex64) -> Self {
        let mut out = self.clone();
        out.set_sigma(l, value);
        out
    }

    pub fn with_omega(&self, omega: f64) -> Self {
        self.with_sigma(0, Complex64::new(omega, 0.0))
    }

    /// Adds `Σ_k ε_k^l` to every `S_l` (with `ε^0 = 1`).
    pub fn augmented(&self, eps: &[f64]) -> Self {
        let mut out = self.clone();
        for (l, s) in out.moments.iter_mut().enumerate() {
            *s += eps.iter().map(|e| e.powi(l as i32)).sum::<f64>();
        }
        out
    }
}

/// Weight convention of a node set: `Y_k = X_k z_k` (first-harmonic-indexed
/// system) or `Z_k = X_k z_k^{1−n}` (full moment system).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Convention {
    Y,
    Z,
}

/// Nodes with weights in a stated convention.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeSet {
    pub convention: Convention,
    pub nodes: Vec<Complex64>,
    pub weights: Vec<Complex64>,
}

impl NodeSet {
    /// Amplitudes `X_k` for a system of size `n`.
    pub fn amplitudes(&self, n: usize) -> Vec<Complex64> {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&z, &w)| match self.convention {
                Convention::Y => w / z,
                Convention::Z => w * z.powi(n as i32 - 1),
            })
            .collect()
    }

    /// Re-expresses the weights in the other convention (system size `n`).
    pub fn to_convention(&self, convention: Convention, n: usize) -> NodeSet {
        if convention == self.convention {
            return self.clone();
        }
        let x = self.amplitudes(n);
        let weights = self
            .nodes
            .iter()
            .zip(&x)
            .map(|(&z, &a)| match convention {
                Convention::Y => a * z,
                Convention::Z => a * z.powi(1 - n as i32),
            })
            .collect();
        NodeSet {
            convention,
            nodes: self.nodes.clone(),
            weights,
        }
    }

    /// Largest `|Σ_k Z_k z_k^l − S_l|` over `l = 0..2n−1`, relative to
    /// `max(1, max|S_l|)`.
    pub fn moment_residual(&self, md: &MomentData) -> f64 {
        let n = md.n();
        let z = self.to_convention(Convention::Z, n);
        let scale = md
            .moments()
            .iter()
            .map(|s| s.norm())
            .fold(1.0, f64::max);
        md.moments()
            .iter()
            .enumerate()
            .map(|(l, s)| {
                let v: Complex64 = z
                    .nodes
                    .iter()
                    .zip(&z.weights)
                    .map(|(zk, wk)| wk * zk.powu(l as u32))
                    .sum();
                (v - s).norm() / scale
            })
            .fold(0.0, f64::max)
    }

    /// Whether the set satisfies the unimodular, distinct-node side
    /// conditions and reproduces the data to `tol`.
    pub fn is_admissible(&self, md: &MomentData, tol: f64) -> bool {
        !self.nodes.is_empty()
            && self.nodes.iter().all(|z| (z.norm() - 1.0).abs() < tol.max(1e-10))
            && min_pairwise_distance(&self.nodes) > ROOT_DISTINCT_TOL
            && self.moment_residual(md) < tol
    }
}

/// Why a generating polynomial fails the regularity criterion.
#[derive(Debug, Clone, PartialEq)]
pub enum Degeneracy {
    ZeroPolynomial,
    DegreeDrop { degree: usize, expected: usize },
    RepeatedRoots { min_distance: f64 },
}

impl fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degeneracy::ZeroPolynomial => write!(f, "zero_polynomial"),
            Degeneracy::DegreeDrop { degree, expected } => {
                write!(f, "degree_drop (degree {degree}, expected {expected})")
            }
            Degeneracy::RepeatedRoots { min_distance } => {
                write!(f, "repeated_roots (min distance {min_distance:e})")
            }
        }
    }
}
