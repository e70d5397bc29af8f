use thiserror::Error;

use crate::moment::Degeneracy;

/// Errors produced by the operator and moment-system routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("polynomial degree {degree} exceeds operator valid degree {valid}")]
    DegreeExceeded { degree: usize, valid: usize },

    #[error("power sums violate the series mask at beta = {offending:?}")]
    MaskViolation { offending: Vec<usize> },

    #[error("nodes are not pairwise distinct (min distance {min_distance:e})")]
    SingularNodes { min_distance: f64 },

    #[error("root finder did not converge after {iterations} iterations (last step {last_step:e})")]
    NoConvergence { iterations: usize, last_step: f64 },

    #[error("moment system is degenerate: {0}")]
    Degenerate(Degeneracy),

    #[error("generating polynomial is not identically zero")]
    NotDegenerate,

    #[error("epsilon extrapolation unstable (relative disagreement {disagreement:e})")]
    ExtrapolationUnstable { disagreement: f64 },

    #[error("n - mu*s = {remainder} is odd; Chebyshev candidate filter does not apply")]
    NotEvenCase { remainder: usize },

    #[error("amplitude imaginary residue {residue:e} exceeds realness threshold")]
    NonRealAmplitude { residue: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
