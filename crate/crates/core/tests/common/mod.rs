#![allow(dead_code)]

use apo_core::TrigPolynomial;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Degree-`n` polynomial with every coefficient uniform in [−1, 1].
pub fn random_poly(rng: &mut impl Rng, n: usize) -> TrigPolynomial {
    let coeffs = (0..n)
        .map(|_| (rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)))
        .collect();
    TrigPolynomial::with_constant(rng.gen_range(-1.0..=1.0), coeffs).unwrap()
}

/// Same, without a constant term.
pub fn random_poly_zero_mean(rng: &mut impl Rng, n: usize) -> TrigPolynomial {
    let coeffs = (0..n)
        .map(|_| (rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)))
        .collect();
    TrigPolynomial::new(coeffs).unwrap()
}

/// `m` unimodular nodes closed under conjugation (`m` even), with phases
/// at least `gap` apart and away from 0 and π.
pub fn conjugate_nodes(rng: &mut impl Rng, m: usize, gap: f64) -> Vec<Complex64> {
    assert!(m % 2 == 0);
    loop {
        let mut t: Vec<f64> = (0..m / 2)
            .map(|_| rng.gen_range(gap..std::f64::consts::PI - gap))
            .collect();
        t.sort_by(f64::total_cmp);
        if t.windows(2).all(|w| w[1] - w[0] > gap) {
            return t
                .iter()
                .flat_map(|&a| [Complex64::from_polar(1.0, a), Complex64::from_polar(1.0, -a)])
                .collect();
        }
    }
}

/// Weights in conjugate pairs matching [`conjugate_nodes`], moduli in [0.5, 1.5].
pub fn conjugate_weights(rng: &mut impl Rng, m: usize) -> Vec<Complex64> {
    (0..m / 2)
        .flat_map(|_| {
            let w = Complex64::from_polar(
                rng.gen_range(0.5..1.5),
                rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI),
            );
            [w, w.conj()]
        })
        .collect()
}
