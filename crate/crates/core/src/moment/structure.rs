//! Coefficient identities of the generating polynomial under delta data.

use serde::Serialize;

use super::generating::{generating_poly, regularity_check};
use super::poly::ComplexPoly;
use super::prony::prony_solve;
use super::{Convention, MomentData};
use crate::chebyshev::{chebyshev_u, r_eval};

const FLAG_TOL: f64 = 1e-9;

/// `g_k = sign · g_{n−k}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Symmetry {
    pub sign: i8,
    pub max_deviation: f64,
}

/// For `n = sμ−1`: coefficients off the `μk−1` lattice vanish and the
/// lattice coefficients follow `g_{μk−1} = g_{μ−1} r_{k−1}(ω)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LatticeCheck {
    pub s: usize,
    pub off_lattice_max: f64,
    pub chain_max: f64,
    pub g_mu_minus_1: f64,
}

/// For `μ = 2`, `n = 2s−1`: `g_1 = (−1)^{s+1} r_s(ω)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LowCoefficientCheck {
    pub s: usize,
    pub actual: f64,
    pub expected: f64,
    pub deviation: f64,
}

/// For even `n − μs`, `s = ⌊n/μ⌋`: regular solvability needs `U_s(ω/2) = ±1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvenCaseCheck {
    pub s: usize,
    pub u_value: f64,
    pub plus: bool,
    pub minus: bool,
}

/// Leading coefficient against `(−1)^n ΠZ_k Π_{k<j}(z_k − z_j)²`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeadingCheck {
    pub actual: f64,
    pub expected: f64,
    pub deviation: f64,
}

/// Relative deviations are measured against `max|g_k|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructureReport {
    pub n: usize,
    pub mu: usize,
    pub omega: f64,
    pub coeffs: Vec<f64>,
    pub imag_residue: f64,
    pub zero_polynomial: bool,
    pub symmetry: Option<Symmetry>,
    pub lattice: Option<LatticeCheck>,
    pub low_coefficient: Option<LowCoefficientCheck>,
    pub even_case: Option<EvenCaseCheck>,
    pub leading: Option<LeadingCheck>,
}

impl StructureReport {
    /// Whether every identity that applies holds to `tol`.
    pub fn holds(&self, tol: f64) -> bool {
        self.lattice
            .as_ref()
            .is_none_or(|l| l.off_lattice_max < tol && l.chain_max < tol)
            && self.low_coefficient.as_ref().is_none_or(|l| l.deviation < tol)
            && self.leading.as_ref().is_none_or(|l| l.deviation < tol)
    }
}

fn symmetry(g: &[f64], scale: f64) -> Option<Symmetry> {
    if scale == 0.0 {
        return None;
    }
    let n = g.len() - 1;
    let dev = |sign: f64| {
        (0..=n)
            .map(|k| (g[k] - sign * g[n - k]).abs() / scale)
            .fold(0.0, f64::max)
    };
    let (plus, minus) = (dev(1.0), dev(-1.0));
    Some(if plus <= minus {
        Symmetry { sign: 1, max_deviation: plus }
    } else {
        Symmetry { sign: -1, max_deviation: minus }
    })
}

fn lattice(g: &[f64], n: usize, mu: usize, omega: f64, scale: f64) -> Option<LatticeCheck> {
    if (n + 1) % mu != 0 {
        return None;
    }
    let s = (n + 1) / mu;
    let norm = if scale == 0.0 { 1.0 } else { scale };
    let off_lattice_max = (0..=n)
        .filter(|i| i % mu != mu - 1)
        .map(|i| g[i].abs() / norm)
        .fold(0.0, f64::max);
    let base = g[mu - 1];
    let chain_max = (1..=s)
        .map(|k| (g[mu * k - 1] - base * r_eval(k as i64 - 1, omega)).abs() / norm)
        .fold(0.0, f64::max);
    Some(LatticeCheck {
        s,
        off_lattice_max,
        chain_max,
        g_mu_minus_1: base,
    })
}

fn leading(md: &MomentData, g: &ComplexPoly, scale: f64) -> Option<LeadingCheck> {
    let n = md.n();
    if !regularity_check(g, n).is_regular() {
        return None;
    }
    let ns = prony_solve(md).ok()?.to_convention(Convention::Z, n);
    let mut expected = ns.weights.iter().product::<num_complex::Complex64>();
    for i in 0..n {
        for j in i + 1..n {
            let d = ns.nodes[i] - ns.nodes[j];
            expected *= d * d;
        }
    }
    if n % 2 == 1 {
        expected = -expected;
    }
    let actual = g.coeff(n);
    Some(LeadingCheck {
        actual: actual.re,
        expected: expected.re,
        deviation: (actual - expected).norm() / scale,
    })
}

pub fn structure_checks(md: &MomentData) -> StructureReport {
    let n = md.n();
    let mu = md.mu().unwrap_or(1);
    let omega = md.omega();
    let gp = generating_poly(md);
    let g: Vec<f64> = gp.coeffs().iter().map(|c| c.re).collect();
    let scale = gp.max_abs();

    let low_coefficient = (mu == 2 && n % 2 == 1).then(|| {
        let s = (n + 1) / 2;
        let sign = if s % 2 == 1 { 1.0 } else { -1.0 };
        let expected = sign * r_eval(s as i64, omega);
        let actual = g[1];
        LowCoefficientCheck {
            s,
            actual,
            expected,
            deviation: (actual - expected).abs() / scale.max(expected.abs()).max(f64::MIN_POSITIVE),
        }
    });

    let s_floor = n / mu;
    let even_case = ((n - mu * s_floor) % 2 == 0).then(|| {
        let u = chebyshev_u(s_floor, omega / 2.0);
        EvenCaseCheck {
            s: s_floor,
            u_value: u,
            plus: (u - 1.0).abs() < FLAG_TOL,
            minus: (u + 1.0).abs() < FLAG_TOL,
        }
    });

    StructureReport {
        n,
        mu,
        omega,
        imag_residue: gp.imag_residue(),
        zero_polynomial: gp.is_zero(),
        symmetry: symmetry(&g, scale),
        lattice: lattice(&g, n, mu, omega, scale),
        low_coefficient,
        even_case,
        leading: if scale > 0.0 { leading(md, &gp, scale) } else { None },
        coeffs: g,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_for_mu_two() {
        let r = structure_checks(&MomentData::delta(7, 2, 0.9).unwrap());
        let l = r.lattice.unwrap();
        assert_eq!(l.s, 4);
        assert!(l.off_lattice_max < 1e-10);
        assert!(l.chain_max < 1e-9);
        assert!(r.low_coefficient.unwrap().deviation < 1e-9);
    }

    #[test]
    fn low_coefficients_vanish_for_mu_three() {
        let r = structure_checks(&MomentData::delta(5, 3, 1.1).unwrap());
        assert!(r.coeffs[0].abs() < 1e-10 && r.coeffs[1].abs() < 1e-10);
        assert!(r.lattice.unwrap().off_lattice_max < 1e-10);
        assert!(r.even_case.is_some());
    }

    #[test]
    fn even_case_flag_example_three() {
        let r = structure_checks(&MomentData::delta(8, 2, 0.0).unwrap());
        let e = r.even_case.unwrap();
        assert_eq!(e.s, 4);
        assert!(e.plus && !e.minus);
        let sym = r.symmetry.unwrap();
        assert_eq!(sym.sign, 1);
        assert!(sym.max_deviation < 1e-12);
        assert!(r.leading.unwrap().deviation < 1e-9);
    }
}
