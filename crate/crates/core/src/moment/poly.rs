//! Dense complex polynomials and a simultaneous-iteration root finder.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients below this fraction of the largest one count as zero when
/// deciding degree and structure.
pub const ZERO_COEFF_REL: f64 = 1e-10;

pub const ROOT_MAX_ITERATIONS: usize = 2000;
pub const ROOT_STEP_TOL: f64 = 1e-13;

/// Polynomial `c_0 + c_1 z + … + c_d z^d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexPoly {
    coeffs: Vec<Complex64>,
}

impl ComplexPoly {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        assert!(
            coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite()),
            "polynomial coefficients must be finite"
        );
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// The zero polynomial stored with `len` coefficient slots.
    pub fn zero(len: usize) -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0); len.max(1)],
        }
    }

    /// `Π (z − r_k)`.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut c = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
            for (i, &ci) in c.iter().enumerate() {
                next[i + 1] += ci;
                next[i] -= ci * r;
            }
            c = next;
        }
        Self { coeffs: c }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.max_abs() == 0.0
    }

    /// Index of the last coefficient above `ZERO_COEFF_REL × max|c|`;
    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let floor = ZERO_COEFF_REL * self.max_abs();
        if self.is_zero() {
            return None;
        }
        self.coeffs.iter().rposition(|c| c.norm() > floor)
    }

    /// Copy with coefficients below the zero threshold set to exactly zero
    /// and trailing zeros removed.
    pub fn trimmed(&self) -> ComplexPoly {
        let floor = ZERO_COEFF_REL * self.max_abs();
        match self.degree() {
            None => ComplexPoly::zero(1),
            Some(d) => ComplexPoly {
                coeffs: self.coeffs[..=d]
                    .iter()
                    .map(|&c| if c.norm() > floor { c } else { Complex64::new(0.0, 0.0) })
                    .collect(),
            },
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `Σ |c_k| |z|^k`, the natural scale for residuals at `z`.
    pub fn abs_eval(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn scale(&self, factor: Complex64) -> ComplexPoly {
        ComplexPoly {
            coeffs: self.coeffs.iter().map(|&c| c * factor).collect(),
        }
    }

    /// Drops the lowest `k` coefficients (division by `z^k`, discarding the remainder).
    pub fn shift_down(&self, k: usize) -> ComplexPoly {
        let rest: Vec<Complex64> = self.coeffs.iter().skip(k).copied().collect();
        if rest.is_empty() {
            ComplexPoly::zero(1)
        } else {
            ComplexPoly { coeffs: rest }
        }
    }

    /// Largest imaginary part relative to the largest coefficient.
    pub fn imag_residue(&self) -> f64 {
        let m = self.max_abs();
        if m == 0.0 {
            return 0.0;
        }
        self.coeffs.iter().map(|c| c.im.abs()).fold(0.0, f64::max) / m
    }
}

/// All roots of `p` by Weierstrass (Durand–Kerner) simultaneous iteration.
///
/// Starting points sit on radii 0.9 and 1.1 times the geometric-mean root
/// modulus at angles offset by an irrational fraction of a turn. Iteration
/// stops when the largest correction drops below `1e−13` or every residual
/// reaches the rounding floor `|p(z)| ≤ 64ε Σ|c_k||z|^k`.
pub fn poly_roots(p: &ComplexPoly) -> Result<Vec<Complex64>> {
    let p = p.trimmed();
    let d = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => {
            return Err(Error::InvalidArgument(
                "root finding needs degree >= 1".into(),
            ))
        }
    };
    let lead = p.coeff(d);
    let monic = p.scale(lead.inv());
    if d == 1 {
        return Ok(vec![-monic.coeff(0)]);
    }

    let c0 = monic.coeff(0).norm();
    let radius = if c0 > 0.0 {
        c0.powf(1.0 / d as f64).clamp(0.5, 2.0)
    } else {
        0.5
    };
    let offset = 0.5 * (5f64.sqrt() - 1.0);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let r = if k % 2 == 0 { 0.9 } else { 1.1 } * radius;
            Complex64::from_polar(r, TAU * (k as f64 + offset) / d as f64)
        })
        .collect();

    let floor = 64.0 * f64::EPSILON;
    let mut last_step = f64::INFINITY;
    for _ in 0..ROOT_MAX_ITERATIONS {
        let mut max_step: f64 = 0.0;
        for i in 0..d {
            let num = monic.eval(z[i]);
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if j != i {
                    den *= z[i] - z[j];
                }
            }
            if den.norm() == 0.0 {
                den = Complex64::new(f64::EPSILON, 0.0);
            }
            let step = num / den;
            z[i] -= step;
            max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
        }
        last_step = max_step;
        if !max_step.is_finite() {
            break;
        }
        let at_floor = z
            .iter()
            .all(|&zi| monic.eval(zi).norm() <= floor * monic.abs_eval(zi));
        if max_step < ROOT_STEP_TOL || at_floor {
            sort_roots(&mut z);
            return Ok(z);
        }
    }
    Err(Error::NoConvergence {
        iterations: ROOT_MAX_ITERATIONS,
        last_step,
    })
}

/// Orders roots by argument in `(−π, π]`, then by modulus.
pub fn sort_roots(roots: &mut [Complex64]) {
    roots.sort_by(|a, b| {
        a.arg()
            .partial_cmp(&b.arg())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.norm().partial_cmp(&b.norm()).unwrap_or(std::cmp::Ordering::Equal))
    });
}

/// Smallest pairwise distance in a point set (infinite for fewer than two points).
pub fn min_pairwise_distance(points: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            best = best.min((points[i] - points[j]).norm());
        }
    }
    best
}

/// Greedy nearest-neighbour matching of two point multisets; returns the
/// largest matched distance, or infinity when the sizes differ.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in a {
        let mut best = (f64::INFINITY, usize::MAX);
        for (j, y) in b.iter().enumerate() {
            if !used[j] {
                let d = (x - y).norm();
                if d < best.0 {
                    best = (d, j);
                }
            }
        }
        used[best.1] = true;
        worst = worst.max(best.0);
    }
    worst
}
