//! Amplitude-phase operators: finite sums `Σ X_j T(x − λ_j)` with real
//! amplitudes and phases that return one harmonic of any trigonometric
//! polynomial `T` up to a given degree.
//!
//! * [`trig`]: polynomials, operators, extraction and power-sum spectra.
//! * [`chebyshev`]: the `r_k` recurrence, admissible `ω` sets and root sets.
//! * [`moment`]: moment systems, generating polynomials, Prony solve.
//! * [`families`]: closed-form operator constructors.
//! * [`regularization`]: limits for degenerate moment systems.

pub mod chebyshev;
pub mod error;
pub mod families;
pub mod moment;
pub mod regularization;
pub mod trig;

pub use error::{Error, Result};
pub use families::{
    even_case_filter, solve_general, solve_mu_equals_n, solve_mu_one, solve_mu_two, Family,
    FamilySpec,
};
pub use moment::{ComplexPoly, MomentData, NodeSet};
pub use trig::{apply_apo, eval_poly, extract_harmonic, power_sum, Apo, Harmonic, TrigPolynomial};
