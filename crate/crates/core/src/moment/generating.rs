use nalgebra::DMatrix;
use num_complex::Complex64;

use super::poly::{min_pairwise_distance, poly_roots, ComplexPoly};
use super::{Degeneracy, MomentData};

/// A generating polynomial counts as identically zero when every
/// coefficient is below this fraction of the Hadamard bound of its rows.
pub const ZERO_POLY_REL: f64 = 1e-10;

/// Roots closer than this (relative to `max(1, |z|)`) are treated as repeated.
pub const ROOT_DISTINCT_TOL: f64 = 1e-6;

/// Cofactor expansion along a bordering row `[1, z, …, z^r]`: for `r`
/// rows of length `r+1`, `c_k = (−1)^k det(rows with column k removed)`.
pub fn bordered_cofactors(rows: &[Vec<Complex64>]) -> Vec<Complex64> {
    let r = rows.len();
    assert!(rows.iter().all(|row| row.len() == r + 1), "rows must have length r+1");
    if r == 0 {
        return vec![Complex64::new(1.0, 0.0)];
    }
    (0..=r)
        .map(|k| {
            let minor = DMatrix::from_fn(r, r, |i, j| rows[i][if j < k { j } else { j + 1 }]);
            let det = minor.lu().determinant();
            if k % 2 == 0 {
                det
            } else {
                -det
            }
        })
        .collect()
}

fn moment_rows(md: &MomentData, count: usize, width: usize) -> Vec<Vec<Complex64>> {
    let s = md.moments();
    (0..count)
        .map(|j| (0..width).map(|c| s[j + c]).collect())
        .collect()
}

fn hadamard_bound(rows: &[Vec<Complex64>]) -> f64 {
    rows.iter()
        .map(|row| row.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt())
        .product()
}

/// Unthresholded generating polynomial with the Hadamard bound of its
/// moment rows.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratingRaw {
    pub poly: ComplexPoly,
    pub scale: f64,
}

impl GeneratingRaw {
    pub fn is_numerically_zero(&self) -> bool {
        self.poly.max_abs() <= ZERO_POLY_REL * self.scale
    }
}

pub fn generating_poly_raw(md: &MomentData) -> GeneratingRaw {
    let n = md.n();
    let rows = moment_rows(md, n, n + 1);
    GeneratingRaw {
        poly: ComplexPoly::new(bordered_cofactors(&rows)),
        scale: hadamard_bound(&rows),
    }
}

/// `G_n(z) = det[[1, z, …, z^n], [S_{j−1+c}]_{j=1..n, c=0..n}]`, returned
/// as the exact zero polynomial when it is numerically zero.
pub fn generating_poly(md: &MomentData) -> ComplexPoly {
    let raw = generating_poly_raw(md);
    if raw.is_numerically_zero() {
        ComplexPoly::zero(md.n() + 1)
    } else {
        raw.poly
    }
}

/// Cofactor of the corner moment `S_{2n−1}`: the first `n−1` moment rows,
/// truncated to `n` columns and bordered by `[1, z, …, z^{n−1}]`.
pub fn corner_cofactor(md: &MomentData) -> ComplexPoly {
    let n = md.n();
    let rows = moment_rows(md, n - 1, n);
    ComplexPoly::new(bordered_cofactors(&rows))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Regularity {
    Regular,
    Degenerate(Degeneracy),
}

impl Regularity {
    pub fn is_regular(&self) -> bool {
        matches!(self, Regularity::Regular)
    }
}

/// Regular iff `deg g = n` and the roots are pairwise distinct.
pub fn regularity_check(g: &ComplexPoly, n: usize) -> Regularity {
    let degree = match g.degree() {
        None => return Regularity::Degenerate(Degeneracy::ZeroPolynomial),
        Some(d) => d,
    };
    if degree < n {
        return Regularity::Degenerate(Degeneracy::DegreeDrop {
            degree,
            expected: n,
        });
    }
    if degree < 2 {
        return Regularity::Regular;
    }
    let roots = match poly_roots(g) {
        Ok(r) => r,
        Err(_) => {
            return Regularity::Degenerate(Degeneracy::RepeatedRoots { min_distance: 0.0 })
        }
    };
    let scaled: Vec<Complex64> = roots.iter().map(|z| z / z.norm().max(1.0)).collect();
    let d = min_pairwise_distance(&scaled);
    if d < ROOT_DISTINCT_TOL {
        Regularity::Degenerate(Degeneracy::RepeatedRoots { min_distance: d })
    } else {
        Regularity::Regular
    }
}
