//! Real trigonometric polynomials and amplitude-phase operators.
//!
//! An amplitude-phase operator (APO) is a finite list of terms `(X_j, λ_j)`
//! acting on a signal `T` as `H(x) = Σ_j X_j · T(x − λ_j)`. Writing
//! `z_j = e^{−iλ_j}`, the k-th harmonic of `T` is multiplied by the power sum
//! `Σ_j X_j z_j^k`, so an operator returns the μ-th harmonic exactly when
//! those sums form a Kronecker delta on `1..=n`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of uniform grid points on `[0, 2π)` used for extraction checks.
pub const DEFAULT_GRID_POINTS: usize = 4096;

/// Absolute tolerance for extraction error on unit-scale coefficients.
pub const DEFAULT_EXTRACTION_TOL: f64 = 1e-9;

/// Tolerance below which a power sum counts as zero in spectrum checks.
pub const DEFAULT_SPECTRUM_TOL: f64 = 1e-10;

/// `a0 + Σ_{k=1}^{n} (a_k cos kx + b_k sin kx)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPolynomial")]
pub struct TrigPolynomial {
    n: usize,
    a0: f64,
    coeffs: Vec<(f64, f64)>,
}

#[derive(Deserialize)]
struct RawPolynomial {
    n: usize,
    #[serde(default)]
    a0: f64,
    coeffs: Vec<(f64, f64)>,
}

impl TryFrom<RawPolynomial> for TrigPolynomial {
    type Error = Error;

    fn try_from(raw: RawPolynomial) -> Result<Self> {
        if raw.coeffs.len() != raw.n {
            return Err(Error::InvalidArgument(format!(
                "polynomial declares n = {} but has {} coefficient pairs",
                raw.n,
                raw.coeffs.len()
            )));
        }
        TrigPolynomial::with_constant(raw.a0, raw.coeffs)
    }
}

impl TrigPolynomial {
    /// Polynomial without constant term; `coeffs[k-1] = (a_k, b_k)`.
    pub fn new(coeffs: Vec<(f64, f64)>) -> Result<Self> {
        Self::with_constant(0.0, coeffs)
    }

    pub fn with_constant(a0: f64, coeffs: Vec<(f64, f64)>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("degree must be positive".into()));
        }
        if !a0.is_finite() || coeffs.iter().any(|(a, b)| !a.is_finite() || !b.is_finite()) {
            return Err(Error::InvalidArgument("coefficients must be finite".into()));
        }
        Ok(Self {
            n: coeffs.len(),
            a0,
            coeffs,
        })
    }

    /// Single harmonic `a cos(kx) + b sin(kx)` padded to degree `n`.
    pub fn basis(n: usize, k: usize, a: f64, b: f64) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidArgument(format!("harmonic {k} outside 1..={n}")));
        }
        let mut coeffs = vec![(0.0, 0.0); n];
        coeffs[k - 1] = (a, b);
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    pub fn coeffs(&self) -> &[(f64, f64)] {
        &self.coeffs
    }

    /// `(a_k, b_k)`, zero outside `1..=n`.
    pub fn coeff(&self, k: usize) -> (f64, f64) {
        if k == 0 || k > self.n {
            (0.0, 0.0)
        } else {
            self.coeffs[k - 1]
        }
    }

    pub fn harmonic(&self, mu: usize) -> Harmonic {
        let (a, b) = self.coeff(mu);
        Harmonic { mu, a, b }
    }

    pub fn eval(&self, x: f64) -> f64 {
        eval_poly(self, x)
    }

    /// `α·self + other`, padding the shorter one with zeros.
    pub fn axpy(&self, alpha: f64, other: &TrigPolynomial) -> TrigPolynomial {
        let n = self.n.max(other.n);
        let coeffs = (1..=n)
            .map(|k| {
                let (a, b) = self.coeff(k);
                let (c, d) = other.coeff(k);
                (alpha * a + c, alpha * b + d)
            })
            .collect();
        TrigPolynomial {
            n,
            a0: alpha * self.a0 + other.a0,
            coeffs,
        }
    }
}

/// The component `a cos(μx) + b sin(μx)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Harmonic {
    pub mu: usize,
    pub a: f64,
    pub b: f64,
}

impl Harmonic {
    pub fn eval(&self, x: f64) -> f64 {
        let (s, c) = (self.mu as f64 * x).sin_cos();
        self.a * c + self.b * s
    }
}

/// Evaluates `a0 + Σ a_k cos kx + b_k sin kx`.
///
/// Powers of `e^{ix}` are accumulated by multiplication, which costs one
/// `sin_cos` per call and keeps the error at `O(n·ε)`.
pub fn eval_poly(p: &TrigPolynomial, x: f64) -> f64 {
    let (s, c) = x.sin_cos();
    let step = Complex64::new(c, s);
    let mut w = step;
    let mut acc = p.a0;
    for &(a, b) in &p.coeffs {
        acc += a * w.re + b * w.im;
        w *= step;
    }
    acc
}

/// Wraps an angle into `(−π, π]`.
pub fn normalize_phase(lambda: f64) -> f64 {
    let mut t = lambda.rem_euclid(TAU);
    if t > PI {
        t -= TAU;
    }
    t
}

/// Amplitude-phase operator `H(x) = Σ_j X_j T(x − λ_j)` targeting harmonic `mu`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawApo")]
pub struct Apo {
    mu: usize,
    valid_degree: usize,
    terms: Vec<(f64, f64)>,
}

#[derive(Deserialize)]
struct RawApo {
    mu: usize,
    valid_degree: usize,
    terms: Vec<(f64, f64)>,
}

impl TryFrom<RawApo> for Apo {
    type Error = Error;

    fn try_from(raw: RawApo) -> Result<Self> {
        Apo::new(raw.mu, raw.valid_degree, raw.terms)
    }
}

impl Apo {
    /// Builds an operator from `(amplitude, phase)` terms; phases are wrapped
    /// into `(−π, π]`.
    pub fn new(mu: usize, valid_degree: usize, terms: Vec<(f64, f64)>) -> Result<Self> {
        if mu == 0 || valid_degree == 0 {
            return Err(Error::InvalidArgument("mu and valid_degree must be positive".into()));
        }
        if terms.is_empty() {
            return Err(Error::InvalidArgument("operator needs at least one term".into()));
        }
        if terms.iter().any(|(x, l)| !x.is_finite() || !l.is_finite()) {
            return Err(Error::InvalidArgument("amplitudes and phases must be finite".into()));
        }
        let terms = terms
            .into_iter()
            .map(|(x, l)| (x, normalize_phase(l)))
            .collect();
        Ok(Self {
            mu,
            valid_degree,
            terms,
        })
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn valid_degree(&self) -> usize {
        self.valid_degree
    }

    pub fn terms(&self) -> &[(f64, f64)] {
        &self.terms
    }

    pub fn amplitudes(&self) -> impl Iterator<Item = f64> + '_ {
        self.terms.iter().map(|t| t.0)
    }

    /// `z_j = e^{−iλ_j}`.
    pub fn nodes(&self) -> Vec<Complex64> {
        self.terms
            .iter()
            .map(|&(_, l)| Complex64::from_polar(1.0, -l))
            .collect()
    }

    /// `ω = Σ X_j`.
    pub fn omega(&self) -> f64 {
        self.amplitudes().sum()
    }

    /// Number of nonzero terms with pairwise-distinct `e^{iλ_j}`.
    pub fn order(&self) -> usize {
        let mut distinct: Vec<Complex64> = Vec::new();
        for (x, z) in self.amplitudes().zip(self.nodes()) {
            if x != 0.0 && distinct.iter().all(|d| (d - z).norm() > 1e-12) {
                distinct.push(z);
            }
        }
        distinct.len()
    }

    pub fn with_amplitude(&self, index: usize, amplitude: f64) -> Apo {
        let mut out = self.clone();
        out.terms[index].0 = amplitude;
        out
    }
}

/// `Σ_j X_j · p(x − λ_j)`.
pub fn apply_apo(op: &Apo, p: &TrigPolynomial, x: f64) -> f64 {
    op.terms.iter().map(|&(amp, lam)| amp * eval_poly(p, x - lam)).sum()
}

/// Outcome of an extraction on a uniform grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtractionReport {
    pub harmonic: Harmonic,
    /// `ω = Σ X_j`.
    pub omega: f64,
    /// Constant `a0·ω` carried through by the operator.
    pub offset: f64,
    /// `max_x |H(x) − (a0·ω + τ_μ(x))|` over the grid.
    pub max_deviation: f64,
    pub grid_points: usize,
}

/// Reads τ_μ off `p` and measures how closely the operator reproduces
/// `a0·ω + τ_μ` on the default 4096-point grid.
pub fn extract_harmonic(op: &Apo, p: &TrigPolynomial) -> Result<ExtractionReport> {
    extract_harmonic_on_grid(op, p, DEFAULT_GRID_POINTS)
}

pub fn extract_harmonic_on_grid(
    op: &Apo,
    p: &TrigPolynomial,
    grid_points: usize,
) -> Result<ExtractionReport> {
    if p.degree() > op.valid_degree() {
        return Err(Error::DegreeExceeded {
            degree: p.degree(),
            valid: op.valid_degree(),
        });
    }
    if grid_points == 0 {
        return Err(Error::InvalidArgument("grid needs at least one point".into()));
    }
    let harmonic = p.harmonic(op.mu());
    let omega = op.omega();
    let offset = p.a0() * omega;
    let h = TAU / grid_points as f64;
    let max_deviation = (0..grid_points)
        .map(|i| {
            let x = i as f64 * h;
            (apply_apo(op, p, x) - offset - harmonic.eval(x)).abs()
        })
        .fold(0.0, f64::max);
    Ok(ExtractionReport {
        harmonic,
        omega,
        offset,
        max_deviation,
        grid_points,
    })
}

/// `Σ_j X_j z_j^β` with `z_j = e^{−iλ_j}`.
pub fn power_sum(op: &Apo, beta: usize) -> Complex64 {
    let b = beta as f64;
    op.terms
        .iter()
        .map(|&(amp, lam)| Complex64::from_polar(amp, -lam * b))
        .sum()
}

/// Power sums for `β = 0..=beta_max`.
pub fn power_spectrum(op: &Apo, beta_max: usize) -> Vec<Complex64> {
    (0..=beta_max).map(|b| power_sum(op, b)).collect()
}

/// Which power-sum orders may be nonzero for a family of operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumMask {
    /// Nodes are all n-th roots of unity: only multiples of `n`.
    Periodic { n: usize },
    /// First-harmonic operators with `z^{n+2} = ±1`: `β ≡ 0, ±1 (mod n+2)`.
    MuOne { n: usize },
    /// `z^τ = ±1` with `τ = n+μ+1`: `β = μ + τk` or `n+τk ≤ β ≤ τ+τk`.
    Windowed { mu: usize, n: usize },
}

impl SpectrumMask {
    pub fn allows(&self, beta: usize) -> bool {
        match *self {
            SpectrumMask::Periodic { n } => beta % n == 0,
            SpectrumMask::MuOne { n } => {
                let r = beta % (n + 2);
                r == 0 || r == 1 || r == n + 1
            }
            SpectrumMask::Windowed { mu, n } => {
                let tau = n + mu + 1;
                let r = beta % tau;
                r == mu || r == 0 || r >= n
            }
        }
    }

    /// Period `τ` of the node set under the mask.
    pub fn period(&self) -> usize {
        match *self {
            SpectrumMask::Periodic { n } => n,
            SpectrumMask::MuOne { n } => n + 2,
            SpectrumMask::Windowed { mu, n } => n + mu + 1,
        }
    }

    /// Infers the mask of an operator produced by one of the family
    /// constructors, from its JSON-visible data only.
    pub fn infer(op: &Apo) -> SpectrumMask {
        let m = op.terms().len();
        let mu = op.mu();
        if mu == op.valid_degree()
            && mu == m
            && op
                .nodes()
                .iter()
                .all(|z| (z.powu(m as u32) - 1.0).norm() < 1e-9)
        {
            SpectrumMask::Periodic { n: m }
        } else if mu == 1 {
            SpectrumMask::MuOne { n: op.valid_degree() }
        } else {
            SpectrumMask::Windowed { mu, n: m + mu - 1 }
        }
    }
}

/// Full power-sum spectrum together with the mask verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub mask: SpectrumMask,
    /// Entry `β` holds `Σ X_j z_j^β`, `β = 0..=beta_max`.
    pub sums: Vec<Complex64>,
    /// Orders outside the mask whose sum exceeded the tolerance.
    pub violations: Vec<usize>,
    /// Largest `|sum|` among the orders the mask requires to vanish.
    pub max_masked: f64,
}

impl SpectrumReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Spectrum of `op` up to `beta_max`, without failing on violations.
pub fn spectrum_report(op: &Apo, mask: SpectrumMask, beta_max: usize, tol: f64) -> SpectrumReport {
    let sums = power_spectrum(op, beta_max);
    let mut violations = Vec::new();
    let mut max_masked: f64 = 0.0;
    for (beta, s) in sums.iter().enumerate().skip(1) {
        if mask.allows(beta) {
            continue;
        }
        max_masked = max_masked.max(s.norm());
        if s.norm() >= tol {
            violations.push(beta);
        }
    }
    SpectrumReport {
        mask,
        sums,
        violations,
        max_masked,
    }
}

/// Checks that every power sum outside the mask vanishes for `β = 1..=beta_max`.
pub fn series_mask_check(
    op: &Apo,
    mask: SpectrumMask,
    beta_max: usize,
    tol: f64,
) -> Result<SpectrumReport> {
    let report = spectrum_report(op, mask, beta_max, tol);
    if report.passed() {
        Ok(report)
    } else {
        Err(Error::MaskViolation {
            offending: report.violations,
        })
    }
}
