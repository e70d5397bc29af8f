//! The recurrence polynomials `r_k(ω) = U_k(−ω/2)` and the auxiliary
//! polynomial `R_{s−1}(ω; t) = Σ_{k<s} r_k(ω) t^k`.
//!
//! `r_{−1} = 0`, `r_0 = 1`, `r_k = −ω r_{k−1} − r_{k−2}`. For `ω` in the set
//! `Ω_s = {2cos(πα/(s+1))}` the roots of `R_{s−1}` are distinct and unimodular.

use std::f64::consts::PI;

use num_complex::Complex64;

/// `r_k(ω)` by the three-term recurrence; `k = −1` yields 0.
pub fn r_eval(k: i64, omega: f64) -> f64 {
    assert!(k >= -1, "r_k is defined for k >= -1");
    if k == -1 {
        return 0.0;
    }
    let (mut prev, mut cur) = (0.0, 1.0);
    for _ in 0..k {
        let next = -omega * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `r_0(ω), …, r_{count−1}(ω)`.
pub fn r_sequence(count: usize, omega: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    let (mut prev, mut cur) = (0.0, 1.0);
    for _ in 0..count {
        out.push(cur);
        let next = -omega * cur - prev;
        prev = cur;
        cur = next;
    }
    out
}

fn binomial(n: u64, k: u64) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Coefficients of `r_k`, constant term first, from the closed binomial form
/// `r_k(ω) = (−1)^k Σ_j (−1)^j C(k−j, j) ω^{k−2j}`.
pub fn r_coeffs(k: usize) -> Vec<f64> {
    let mut c = vec![0.0; k + 1];
    for j in 0..=k / 2 {
        let sign = if (k + j) % 2 == 0 { 1.0 } else { -1.0 };
        c[k - 2 * j] = sign * binomial((k - j) as u64, j as u64);
    }
    c
}

/// Evaluates a real coefficient vector (constant first) by Horner's rule.
pub fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// `U_s(x) = sin((s+1)θ)/sin θ`, `x = cos θ`, through `r_s(−2x)`.
pub fn chebyshev_u(s: usize, x: f64) -> f64 {
    r_eval(s as i64, -2.0 * x)
}

/// `φ_α = πα/(s+1)`.
pub fn phi(s: usize, alpha: usize) -> f64 {
    PI * alpha as f64 / (s + 1) as f64
}

/// The admissible parameter set `Ω_s`.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaSet {
    pub s: usize,
    /// `(α, 2cos(πα/(s+1)))` for `α = 1..=s`, decreasing in value.
    pub values: Vec<(usize, f64)>,
}

impl OmegaSet {
    pub fn get(&self, alpha: usize) -> Option<f64> {
        self.values.iter().find(|(a, _)| *a == alpha).map(|v| v.1)
    }

    pub fn contains(&self, omega: f64, tol: f64) -> bool {
        self.values.iter().any(|(_, w)| (w - omega).abs() <= tol)
    }

    /// Distance from `omega` to the nearest member.
    pub fn distance(&self, omega: f64) -> f64 {
        self.values
            .iter()
            .map(|(_, w)| (w - omega).abs())
            .fold(f64::INFINITY, f64::min)
    }
}

/// `Ω_s`, generated from the cosine formula (no root finding).
pub fn omega_set(s: usize) -> OmegaSet {
    assert!(s >= 1, "omega_set needs s >= 1");
    OmegaSet {
        s,
        values: (1..=s).map(|a| (a, 2.0 * phi(s, a).cos())).collect(),
    }
}

/// Coefficients `[r_0(ω), …, r_{s−1}(ω)]` of `R_{s−1}(ω; t)`.
#[allow(non_snake_case)]
pub fn R_coeffs(s: usize, omega: f64) -> Vec<f64> {
    assert!(s >= 1, "R_{{s-1}} needs s >= 1");
    r_sequence(s, omega)
}

/// Roots of `R_{s−1}(ω; t)` at `ω = −2cos φ_α`: the `(s+1)`-th roots of
/// `(−1)^α` with `e^{±iφ_α}` removed, in increasing angle order.
#[allow(non_snake_case)]
pub fn R_root_set(s: usize, alpha: usize) -> Vec<Complex64> {
    assert!(s >= 1 && (1..=s).contains(&alpha), "alpha must lie in 1..=s");
    // Root j is e^{iπ(2j+α)/(s+1)}; j = 0 and j = s+1−α are e^{±iφ_α}.
    (1..=s)
        .filter(|&j| j != s + 1 - alpha)
        .map(|j| Complex64::from_polar(1.0, PI * (2 * j + alpha) as f64 / (s + 1) as f64))
        .collect()
}

/// Roots of `R_{s−1}(ω; z^μ)` at `ω = −2cos φ_α`: the `(s+1)μ`-th roots of
/// `(−1)^α` minus the μ-th roots of `e^{±iφ_α}`.
pub fn lifted_root_set(s: usize, alpha: usize, mu: usize) -> Vec<Complex64> {
    assert!(s >= 1 && (1..=s).contains(&alpha), "alpha must lie in 1..=s");
    assert!(mu >= 1);
    let period = s + 1;
    let total = period * mu;
    let excluded = period - alpha;
    (0..total)
        .filter(|j| j % period != 0 && j % period != excluded)
        .map(|j| Complex64::from_polar(1.0, PI * (2 * j + alpha) as f64 / total as f64))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn recurrence_base_cases() {
        assert_eq!(r_eval(-1, 0.3), 0.0);
        assert_eq!(r_eval(0, 123.0), 1.0);
        assert_eq!(r_eval(1, 2.5), -2.5);
        assert_abs_diff_eq!(r_eval(2, 2.5), 5.25, epsilon = 1e-15);
    }

    #[test]
    fn closed_form_small_orders() {
        assert_eq!(r_coeffs(0), vec![1.0]);
        assert_eq!(r_coeffs(2), vec![-1.0, 0.0, 1.0]);
        assert_eq!(r_coeffs(4), vec![1.0, 0.0, -3.0, 0.0, 1.0]);
    }

    #[test]
    fn closed_form_matches_recurrence() {
        for k in 0..=12 {
            let c = r_coeffs(k);
            for i in 0..=40 {
                let w = -2.0 + 0.1 * i as f64;
                assert_abs_diff_eq!(horner(&c, w), r_eval(k as i64, w), epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn omega_sets() {
        let o = omega_set(2);
        assert_abs_diff_eq!(o.get(1).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(o.get(2).unwrap(), -1.0, epsilon = 1e-15);
        let o = omega_set(3);
        assert_abs_diff_eq!(o.get(1).unwrap(), 2f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(o.get(2).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(o.get(3).unwrap(), -(2f64.sqrt()), epsilon = 1e-15);
    }

    #[test]
    fn omega_set_four_is_golden() {
        let o = omega_set(4);
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        let expect = [golden, golden - 1.0, 1.0 - golden, -golden];
        for ((_, w), e) in o.values.iter().zip(expect) {
            assert_abs_diff_eq!(*w, e, epsilon = 1e-12);
            assert!(r_eval(4, *w).abs() < 1e-12);
        }
    }

    #[test]
    fn small_root_sets() {
        let r = R_root_set(2, 1);
        assert_eq!(r.len(), 1);
        assert_abs_diff_eq!(r[0].re, -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r[0].im, 0.0, epsilon = 1e-15);

        let mut r = R_root_set(3, 2);
        r.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert_abs_diff_eq!(r[0].re, -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r[1].re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn root_sets_annihilate_r_polynomial() {
        for s in 1..=10 {
            for alpha in 1..=s {
                let omega = -2.0 * phi(s, alpha).cos();
                let c = R_coeffs(s, omega);
                let set = R_root_set(s, alpha);
                assert_eq!(set.len(), s - 1);
                for t in set {
                    let v = c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &ck| acc * t + ck);
                    assert!(v.norm() < 1e-10, "s={s} alpha={alpha} residual {}", v.norm());
                }
            }
        }
    }

    #[test]
    fn lifted_roots_are_mu_th_roots_of_base_roots() {
        for mu in 1..=5 {
            for s in 2..=5 {
                for alpha in 1..=s {
                    let lifted = lifted_root_set(s, alpha, mu);
                    assert_eq!(lifted.len(), (s - 1) * mu);
                    let base = R_root_set(s, alpha);
                    for z in &lifted {
                        let zm = z.powu(mu as u32);
                        assert!(base.iter().any(|t| (t - zm).norm() < 1e-12));
                    }
                }
            }
        }
        // mu = 1 reproduces the base set
        assert_eq!(lifted_root_set(4, 1, 1).len(), R_root_set(4, 1).len());
    }
}
