//! Closed-form operator families.
//!
//! | family      | target | degree       | terms      | ω              |
//! |-------------|--------|--------------|------------|----------------|
//! | `MuEqualsN` | n      | n            | n          | 1              |
//! | `MuOne`     | 1      | n            | n          | −2cos(πα/(n+2)) |
//! | `MuTwo`     | 2      | 2s−1         | 2s−2       | 2cos(πα/(s+1))  |
//! | `General`   | μ      | sμ−2         | (s−1)μ     | −2cos(πα/(s+1)) |

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chebyshev::{chebyshev_u, lifted_root_set, phi, R_root_set};
use crate::error::{Error, Result};
use crate::moment::amplitudes_for_delta;
use crate::trig::{Apo, SpectrumMask};

/// Amplitudes whose imaginary part exceeds this are rejected.
pub const REALNESS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    MuEqualsN,
    MuOne,
    MuTwo,
    General,
}

/// Parameters of one operator in a family. For `MuTwo` and `General`,
/// `n = sμ − 1`; for `MuOne`, `s = n + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub mu: usize,
    pub s: usize,
    pub n: usize,
    pub alpha: usize,
    pub omega: f64,
}

impl FamilySpec {
    pub fn mu_equals_n(n: usize) -> Result<Self> {
        let spec = FamilySpec {
            family: Family::MuEqualsN,
            mu: n,
            s: 1,
            n,
            alpha: 1,
            omega: 1.0,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn mu_one(n: usize, alpha: usize) -> Result<Self> {
        let spec = FamilySpec {
            family: Family::MuOne,
            mu: 1,
            s: n + 1,
            n,
            alpha,
            omega: -2.0 * phi(n + 1, alpha).cos(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn mu_two(s: usize, alpha: usize) -> Result<Self> {
        let spec = FamilySpec {
            family: Family::MuTwo,
            mu: 2,
            s,
            n: (2 * s).saturating_sub(1),
            alpha,
            omega: 2.0 * phi(s, alpha).cos(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn general(mu: usize, s: usize, alpha: usize) -> Result<Self> {
        let spec = FamilySpec {
            family: Family::General,
            mu,
            s,
            n: (s * mu).saturating_sub(1),
            alpha,
            omega: -2.0 * phi(s, alpha).cos(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        match self.family {
            Family::MuEqualsN => {
                if self.n == 0 || self.mu != self.n {
                    return bad(format!("mu = n >= 1 required, got mu = {}, n = {}", self.mu, self.n));
                }
            }
            Family::MuOne => {
                if self.mu != 1 || self.n < 2 || self.s != self.n + 1 {
                    return bad(format!("first-harmonic family needs n >= 2, got n = {}", self.n));
                }
                if !(1..=self.n + 1).contains(&self.alpha) {
                    return bad(format!("alpha must lie in 1..={}, got {}", self.n + 1, self.alpha));
                }
            }
            Family::MuTwo | Family::General => {
                if self.mu < 2 || (self.family == Family::MuTwo && self.mu != 2) {
                    return bad(format!("invalid mu = {} for {:?}", self.mu, self.family));
                }
                if self.s < 2 || self.n + 1 != self.s * self.mu {
                    return bad(format!("need s >= 2 and n = s*mu - 1, got s = {}", self.s));
                }
                if !(1..=self.s).contains(&self.alpha) {
                    return bad(format!("alpha must lie in 1..={}, got {}", self.s, self.alpha));
                }
            }
        }
        Ok(())
    }

    /// Largest degree on which the operator is exact.
    pub fn valid_degree(&self) -> usize {
        match self.family {
            Family::General => self.n - 1,
            _ => self.n,
        }
    }

    /// Number of terms of the operator.
    pub fn terms(&self) -> usize {
        match self.family {
            Family::MuEqualsN | Family::MuOne => self.n,
            Family::MuTwo => self.n - 1,
            Family::General => self.n - self.mu + 1,
        }
    }

    pub fn mask(&self) -> SpectrumMask {
        match self.family {
            Family::MuEqualsN => SpectrumMask::Periodic { n: self.n },
            Family::MuOne => SpectrumMask::MuOne { n: self.n },
            Family::MuTwo | Family::General => SpectrumMask::Windowed {
                mu: self.mu,
                n: self.n,
            },
        }
    }

    pub fn build(&self) -> Result<Apo> {
        self.validate()?;
        match self.family {
            Family::MuEqualsN => solve_mu_equals_n(self.n),
            Family::MuOne => solve_mu_one(self.n, self.alpha),
            Family::MuTwo => solve_mu_two(self.s, self.alpha),
            Family::General => solve_general(self.mu, self.s, self.alpha),
        }
    }
}

/// Converts nodes `z_k = e^{−iλ_k}` and complex amplitudes into an operator,
/// rejecting amplitudes that are not real to `REALNESS_TOL`.
pub fn apo_from_nodes(
    mu: usize,
    valid_degree: usize,
    nodes: &[Complex64],
    amplitudes: &[Complex64],
) -> Result<Apo> {
    if nodes.len() != amplitudes.len() {
        return Err(Error::InvalidArgument("nodes and amplitudes differ in length".into()));
    }
    let residue = amplitudes.iter().map(|x| x.im.abs()).fold(0.0, f64::max);
    if residue > REALNESS_TOL {
        return Err(Error::NonRealAmplitude { residue });
    }
    let terms = nodes
        .iter()
        .zip(amplitudes)
        .map(|(z, x)| (x.re, -z.arg()))
        .collect();
    Apo::new(mu, valid_degree, terms)
}

/// Equally spaced phases `2π(k−1)/n`, amplitudes `1/n`.
pub fn solve_mu_equals_n(n: usize) -> Result<Apo> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let x = 1.0 / n as f64;
    let terms = (0..n).map(|k| (x, TAU * k as f64 / n as f64)).collect();
    Apo::new(n, n, terms)
}

/// First-harmonic operator on the `(n+2)`-th roots of `(−1)^α` without
/// `e^{±iφ_α}`, `φ_α = πα/(n+2)`.
pub fn solve_mu_one(n: usize, alpha: usize) -> Result<Apo> {
    let spec = FamilySpec::mu_one(n, alpha)?;
    let f = phi(spec.s, alpha);
    let sign = ((n + 1) as f64 * f).sin().signum();
    let c = -sign / (n + 2) as f64;
    let nodes = R_root_set(spec.s, alpha);
    let amps: Vec<Complex64> = nodes
        .iter()
        .map(|&z| c * (z * z - 2.0 * f.cos() * z + 1.0) / z.powu(n as u32 + 3))
        .collect();
    apo_from_nodes(1, n, &nodes, &amps)
}

/// Second-harmonic operator: nodes are the roots of `R_{s−1}(ω; z²)` at
/// `ω = 2cos φ_α`, weights from the first `2s−2` moment equations.
pub fn solve_mu_two(s: usize, alpha: usize) -> Result<Apo> {
    let spec = FamilySpec::mu_two(s, alpha)?;
    let nodes = lifted_root_set(s, s + 1 - alpha, 2);
    let m = nodes.len();
    let y = amplitudes_for_delta(&nodes, 2, m)?;
    let amps: Vec<Complex64> = y.iter().zip(&nodes).map(|(y, z)| y / z).collect();
    apo_from_nodes(2, spec.n, &nodes, &amps)
}

/// General operator for `n = sμ−1`: nodes are the `(s+1)μ`-th roots of
/// `(−1)^α` minus the μ-th roots of `e^{±iφ_α}`, with
/// `Z_k = z_k / Π_{j≠k}(z_k − z_j)` and `X_k = Z_k z_k^{n−1}`.
pub fn solve_general(mu: usize, s: usize, alpha: usize) -> Result<Apo> {
    let spec = FamilySpec::general(mu, s, alpha)?;
    let nodes = lifted_root_set(s, alpha, mu);
    let amps: Vec<Complex64> = nodes
        .iter()
        .enumerate()
        .map(|(k, &zk)| {
            let denom: Complex64 = nodes
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, &zj)| zk - zj)
                .product();
            zk / denom * zk.powu(spec.n as u32 - 1)
        })
        .collect();
    apo_from_nodes(mu, spec.valid_degree(), &nodes, &amps)
}

/// Values of `ω` allowed by `U_s(ω/2) = ±1`, `s = ⌊n/μ⌋`, split by sign.
/// Each list holds all `s` roots with multiplicity, in decreasing order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvenCaseCandidates {
    pub s: usize,
    pub plus: Vec<f64>,
    pub minus: Vec<f64>,
}

impl EvenCaseCandidates {
    /// Both branches merged, duplicates removed, decreasing.
    pub fn all(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.plus.iter().chain(&self.minus).copied().collect();
        v.sort_by(|a, b| b.total_cmp(a));
        v.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        v
    }

    pub fn plus_distinct(&self) -> Vec<f64> {
        let mut v = self.plus.clone();
        v.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        v
    }
}

/// With `ω = 2cos θ`, `U_s(cos θ) = sin((s+1)θ)/sin θ`, and
/// `U_s = 1` ⇔ `cos((s+2)θ/2) = 0` or `sin(sθ/2) = 0`,
/// `U_s = −1` ⇔ `sin((s+2)θ/2) = 0` or `cos(sθ/2) = 0`, for `θ ∈ (0, π)`.
pub fn even_case_filter(n: usize, mu: usize) -> Result<EvenCaseCandidates> {
    if mu == 0 || n < mu {
        return Err(Error::InvalidArgument(format!("need 1 <= mu <= n, got n = {n}, mu = {mu}")));
    }
    let s = n / mu;
    let remainder = n - mu * s;
    if remainder % 2 == 1 {
        return Err(Error::NotEvenCase { remainder });
    }
    let angles = |num_step: usize, offset: usize, den: usize| -> Vec<f64> {
        // θ = (num_step·j + offset)π/den inside (0, π)
        (0..)
            .map(move |j| (num_step * j + offset) as f64 / den as f64)
            .skip_while(|t| *t <= 0.0)
            .take_while(|t| *t < 1.0)
            .map(|t| 2.0 * (PI * t).cos())
            .collect()
    };
    let mut plus = angles(2, 1, s + 2);
    plus.extend(angles(2, 0, s));
    let mut minus = angles(2, 0, s + 2);
    minus.extend(angles(2, 1, s));
    for v in [&mut plus, &mut minus] {
        for w in v.iter_mut() {
            if w.abs() < 1e-15 {
                *w = 0.0;
            }
        }
        v.sort_by(|a, b| b.total_cmp(a));
    }
    debug_assert!(plus.iter().all(|w| (chebyshev_u(s, w / 2.0) - 1.0).abs() < 1e-8));
    Ok(EvenCaseCandidates { s, plus, minus })
}
