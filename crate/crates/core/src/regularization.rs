//! Degenerate moment systems.
//!
//! When the generating polynomial vanishes identically, the data are
//! augmented by the power sums of a few small auxiliary nodes `ε_k`. The
//! augmented polynomial, divided by the squared Vandermonde product of the
//! `ε_k`, has a finite limit as the `ε_k` shrink; its nonzero roots are the
//! nodes of the degenerate system. Two perturbation routes for the
//! second-harmonic and general families are provided as numerical checks.

use num_complex::Complex64;
use serde::Serialize;

use crate::chebyshev::{lifted_root_set, phi, r_eval, R_coeffs};
use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::moment::{
    corner_cofactor, generating_poly, generating_poly_raw, multiset_distance, poly_roots,
    prony_solve, ComplexPoly, Convention, MomentData,
};

/// Largest relative disagreement between the last two extrapolated
/// estimates before the limit is declared unstable.
pub const EXTRAPOLATION_TOL: f64 = 1e-4;

/// Auxiliary nodes must stay below this.
pub const MAX_AUX_NODE: f64 = 0.1;

/// A moment system augmented by the power sums of auxiliary nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct AugmentedMoments {
    base: MomentData,
    eps_nodes: Vec<f64>,
}

impl AugmentedMoments {
    pub fn new(base: MomentData, eps_nodes: Vec<f64>) -> Result<Self> {
        if eps_nodes.iter().any(|&e| !(e > 0.0 && e < MAX_AUX_NODE)) {
            return Err(Error::InvalidArgument(format!(
                "auxiliary nodes must lie in (0, {MAX_AUX_NODE})"
            )));
        }
        for i in 0..eps_nodes.len() {
            for j in i + 1..eps_nodes.len() {
                if eps_nodes[i] == eps_nodes[j] {
                    return Err(Error::InvalidArgument("auxiliary nodes must be distinct".into()));
                }
            }
        }
        Ok(Self { base, eps_nodes })
    }

    /// `ε_k = k·ε₀`, `k = 1..=s_aug`.
    pub fn uniform(base: MomentData, s_aug: usize, eps0: f64) -> Result<Self> {
        Self::new(base, (1..=s_aug).map(|k| k as f64 * eps0).collect())
    }

    pub fn base(&self) -> &MomentData {
        &self.base
    }

    pub fn eps_nodes(&self) -> &[f64] {
        &self.eps_nodes
    }

    pub fn s_aug(&self) -> usize {
        self.eps_nodes.len()
    }

    pub fn moments(&self) -> MomentData {
        self.base.augmented(&self.eps_nodes)
    }

    /// `Π_{k<j}(ε_k − ε_j)²`.
    pub fn vandermonde_square(&self) -> f64 {
        let e = &self.eps_nodes;
        let mut p = 1.0;
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                p *= (e[i] - e[j]).powi(2);
            }
        }
        p
    }

    /// Generating polynomial of the augmented data divided by
    /// `Π_{k<j}(ε_k − ε_j)²`.
    pub fn normalized_generating_poly(&self) -> ComplexPoly {
        let raw = generating_poly_raw(&self.moments());
        raw.poly.scale(Complex64::new(1.0 / self.vandermonde_square(), 0.0))
    }
}

/// One `ε₀` level of the extrapolation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtrapolationLevel {
    pub eps0: f64,
    pub coeffs: Vec<Complex64>,
}

/// The limit polynomial `G*` with its diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NonRegularReport {
    pub poly: ComplexPoly,
    pub s_aug: usize,
    pub levels: Vec<ExtrapolationLevel>,
    /// Relative gap between the full extrapolation and the one that
    /// omits the coarsest level.
    pub disagreement: f64,
    /// Roots of `G*` after removing the factor `z^{s_aug}`.
    pub roots: Vec<Complex64>,
}

/// `ε₀` levels used for a given number of auxiliary nodes, coarsest first:
/// six levels in ratio 1.6 starting at `0.09/(s_aug+1)`.
pub fn eps_levels(s_aug: usize) -> Vec<f64> {
    let start = 0.9 * MAX_AUX_NODE / (s_aug + 1) as f64;
    (0..6).map(|i| start / 1.6f64.powi(i)).collect()
}

/// Values at 0 of the interpolant through all points and of the one
/// through all but the first.
fn neville_at_zero(x: &[f64], y: &[Complex64]) -> (Complex64, Complex64) {
    let n = x.len();
    let mut p = y.to_vec();
    // after step `d`, p[i] holds the interpolant through points i..=i+d at 0
    for d in 1..n {
        for i in 0..n - d {
            let (xi, xj) = (x[i], x[i + d]);
            p[i] = (p[i] * (-xj) + p[i + 1] * xi) / (xi - xj);
        }
    }
    let full = p[0];
    // interpolant through the finer points 1..n
    let mut q = y[1..].to_vec();
    let xs = &x[1..];
    for d in 1..xs.len() {
        for i in 0..xs.len() - d {
            let (xi, xj) = (xs[i], xs[i + d]);
            q[i] = (q[i] * (-xj) + q[i + 1] * xi) / (xi - xj);
        }
    }
    (full, q[0])
}

/// Limit of the normalized augmented generating polynomial as `ε₀ → 0`,
/// for data whose own generating polynomial vanishes.
pub fn nonregular_generating_poly(md: &MomentData) -> Result<NonRegularReport> {
    let n = md.n();
    if !generating_poly_raw(md).is_numerically_zero() {
        return Err(Error::NotDegenerate);
    }
    let s_aug = (1..n)
        .find(|&s| {
            let eps0 = eps_levels(s)[0];
            AugmentedMoments::uniform(md.clone(), s, eps0)
                .map(|a| !generating_poly_raw(&a.moments()).is_numerically_zero())
                .unwrap_or(false)
        })
        .ok_or_else(|| {
            Error::InvalidArgument(format!(
                "no augmentation with fewer than {n} auxiliary nodes gives a numerically \
                 nonzero generating polynomial (inconsistent data, or more auxiliary nodes \
                 than double precision resolves)"
            ))
        })?;

    let eps = eps_levels(s_aug);
    let levels: Vec<ExtrapolationLevel> = eps
        .iter()
        .map(|&e0| {
            let aug = AugmentedMoments::uniform(md.clone(), s_aug, e0)?;
            Ok(ExtrapolationLevel {
                eps0: e0,
                coeffs: aug.normalized_generating_poly().coeffs().to_vec(),
            })
        })
        .collect::<Result<_>>()?;

    let mut limit = Vec::with_capacity(n + 1);
    let mut finer = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let y: Vec<Complex64> = levels.iter().map(|l| l.coeffs[k]).collect();
        let (full, fine) = neville_at_zero(&eps, &y);
        limit.push(full);
        finer.push(fine);
    }
    let scale = limit.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let disagreement = limit
        .iter()
        .zip(&finer)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
        / scale;
    if !(disagreement <= EXTRAPOLATION_TOL) {
        return Err(Error::ExtrapolationUnstable { disagreement });
    }
    let poly = ComplexPoly::new(limit);
    let reduced = poly.shift_down(s_aug);
    let roots = if reduced.degree().unwrap_or(0) >= 1 {
        poly_roots(&reduced)?
    } else {
        Vec::new()
    };
    Ok(NonRegularReport {
        poly,
        s_aug,
        levels,
        disagreement,
        roots,
    })
}

/// Expected leading coefficient of `G*` for a system with `m` nodes
/// `z_k` and weights `Z_k` (`Z` convention) of size `n`:
/// `(−1)^n ΠZ_k Π_{k<j}(z_k − z_j)² Π z_k^{2(n−m)}`.
pub fn nonregular_leading_coefficient(n: usize, nodes: &[Complex64], weights: &[Complex64]) -> Complex64 {
    let m = nodes.len();
    let mut c: Complex64 = weights.iter().product();
    for i in 0..m {
        for j in i + 1..m {
            let d = nodes[i] - nodes[j];
            c *= d * d;
        }
        c *= nodes[i].powu(2 * (n - m) as u32);
    }
    if n % 2 == 1 {
        -c
    } else {
        c
    }
}

/// One `ε` level of the `ω`-perturbation experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OmegaPerturbLevel {
    pub eps: f64,
    /// Modulus of the root that tends to zero.
    pub zero_root: f64,
    /// `|Z_1(ε)|`: weight of that root.
    pub vanishing_weight: f64,
    pub weight_ratio: f64,
    /// Largest distance of the remaining roots from the closed-form nodes.
    pub node_drift: f64,
    pub nodes: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OmegaPerturbReport {
    pub s: usize,
    pub alpha: usize,
    pub omega: f64,
    /// Whether the unperturbed data are reported degenerate.
    pub exact_degenerate: bool,
    pub levels: Vec<OmegaPerturbLevel>,
    /// `max/min` of `|Z_1(ε)|/ε` over the schedule.
    pub ratio_spread: f64,
    /// `max` of `drift/ε` over the schedule.
    pub max_drift_ratio: f64,
    /// Nodes extrapolated linearly to `ε = 0` from the two smallest `ε`.
    pub limit_nodes: Vec<Complex64>,
    pub closed_form_nodes: Vec<Complex64>,
}

/// Pairs each point of `b` with its nearest unused point of `a`; returns
/// `b` reordered to follow `a`.
fn align(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut used = vec![false; b.len()];
    a.iter()
        .map(|x| {
            let (j, _) = b
                .iter()
                .enumerate()
                .filter(|(j, _)| !used[*j])
                .min_by(|(_, p), (_, q)| (*p - x).norm().total_cmp(&(*q - x).norm()))
                .expect("equal lengths");
            used[j] = true;
            b[j]
        })
        .collect()
}

/// Replaces `ω` by `ω + ε` in the second-harmonic family and follows the
/// regular solutions as `ε → 0`.
pub fn omega_perturb_validate(s: usize, alpha: usize, eps_schedule: &[f64]) -> Result<OmegaPerturbReport> {
    let spec = FamilySpec::mu_two(s, alpha)?;
    if eps_schedule.len() < 2 {
        return Err(Error::InvalidArgument("need at least two epsilon levels".into()));
    }
    let n = spec.n;
    let closed = lifted_root_set(s, s + 1 - alpha, 2);
    let exact_degenerate = matches!(
        prony_solve(&MomentData::delta(n, 2, spec.omega)?),
        Err(Error::Degenerate(_))
    );

    let mut levels = Vec::with_capacity(eps_schedule.len());
    for &eps in eps_schedule {
        let md = MomentData::delta(n, 2, spec.omega + eps)?;
        let ns = prony_solve(&md)?.to_convention(Convention::Z, n);
        let (iz, _) = ns
            .nodes
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
            .expect("nonempty");
        let rest: Vec<Complex64> = ns
            .nodes
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != iz)
            .map(|(_, z)| *z)
            .collect();
        let w = ns.weights[iz].norm();
        levels.push(OmegaPerturbLevel {
            eps,
            zero_root: ns.nodes[iz].norm(),
            vanishing_weight: w,
            weight_ratio: w / eps.abs(),
            node_drift: multiset_distance(&rest, &closed),
            nodes: align(&closed, &rest),
        });
    }

    let ratios: Vec<f64> = levels.iter().map(|l| l.weight_ratio).collect();
    let ratio_spread = ratios.iter().copied().fold(0.0, f64::max)
        / ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let max_drift_ratio = levels
        .iter()
        .map(|l| l.node_drift / l.eps.abs())
        .fold(0.0, f64::max);

    let mut order: Vec<usize> = (0..levels.len()).collect();
    order.sort_by(|&a, &b| levels[a].eps.abs().total_cmp(&levels[b].eps.abs()));
    let (fine, coarse) = (&levels[order[0]], &levels[order[1]]);
    let (ea, eb) = (fine.eps, coarse.eps);
    let limit_nodes = fine
        .nodes
        .iter()
        .zip(&coarse.nodes)
        .map(|(a, b)| (a * eb - b * ea) / (eb - ea))
        .collect();

    Ok(OmegaPerturbReport {
        s,
        alpha,
        omega: spec.omega,
        exact_degenerate,
        levels,
        ratio_spread,
        max_drift_ratio,
        limit_nodes,
        closed_form_nodes: closed,
    })
}

/// Generating polynomial with the corner moment perturbed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailPerturbation {
    pub eps: Complex64,
    /// `G + ε·𝒯`.
    pub perturbed: ComplexPoly,
    /// `𝒯`, the cofactor of the corner moment (degree ≤ n−1).
    pub corner_cofactor: ComplexPoly,
    /// `G` of the unperturbed data.
    pub base: ComplexPoly,
}

/// `Ĝ = G + ε·𝒯` for data with `n = sμ − 1`.
pub fn tail_perturb_poly(md: &MomentData, eps: Complex64) -> Result<TailPerturbation> {
    let n = md.n();
    let mu = md
        .mu()
        .ok_or_else(|| Error::InvalidArgument("tail perturbation needs delta data".into()))?;
    if (n + 1) % mu != 0 || n < 2 {
        return Err(Error::InvalidArgument(format!(
            "n + 1 = {} is not a multiple of mu = {mu}",
            n + 1
        )));
    }
    let base = generating_poly(md);
    let t = corner_cofactor(md);
    let perturbed = ComplexPoly::new(
        (0..=n)
            .map(|k| base.coeff(k) + eps * t.coeff(k))
            .collect(),
    );
    Ok(TailPerturbation {
        eps,
        perturbed,
        corner_cofactor: t,
        base,
    })
}

/// The perturbation size singled out by the general-family construction:
/// at `ω' = ω_α + δ`, `ε = −½ g_{μ−1}(ω') r_{s−1}(ω') / A(ω')`, where `A`
/// is the coefficient of `z^{(s−1)μ}` in `𝒯`. Returns the data at `ω'` and `ε`.
pub fn normalized_tail_eps(mu: usize, s: usize, alpha: usize, delta: f64) -> Result<(MomentData, f64)> {
    let spec = FamilySpec::general(mu, s, alpha)?;
    let w = spec.omega + delta;
    let md = MomentData::delta(spec.n, mu, w)?;
    let g = generating_poly_raw(&md).poly;
    let a = corner_cofactor(&md).coeff((s - 1) * mu).re;
    if a == 0.0 {
        return Err(Error::InvalidArgument("corner cofactor has no z^{(s-1)mu} term".into()));
    }
    let eps = -0.5 * g.coeff(mu - 1).re * r_eval(s as i64 - 1, w) / a;
    Ok((md, eps))
}

/// Roots of `R_{s−1}(ω; z^μ)`, found numerically.
pub fn lifted_r_roots(s: usize, mu: usize, omega: f64) -> Result<Vec<Complex64>> {
    let r = R_coeffs(s, omega);
    let mut c = vec![Complex64::new(0.0, 0.0); (s - 1) * mu + 1];
    for (k, v) in r.iter().enumerate() {
        c[k * mu] = Complex64::new(*v, 0.0);
    }
    poly_roots(&ComplexPoly::new(c))
}

/// `ω` of branch `α` in the general family, `−2cos(πα/(s+1))`.
pub fn general_branch_omega(s: usize, alpha: usize) -> f64 {
    -2.0 * phi(s, alpha).cos()
}
