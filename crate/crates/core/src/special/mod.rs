//! Numeric kernels: elliptic functions, Gamma, Gauss hypergeometric.

mod elliptic;
mod gamma;
mod hypergeometric;

pub use elliptic::{complete_k, jacobi, EllipticModulus, JacobiTriple};
pub use gamma::{gamma, rgamma};
pub use hypergeometric::{hyp2f1, hyp2f1_tilde};

/// Iteration cap for the AGM.
pub const MAX_AGM_STEPS: usize = 64;
/// Iteration cap for any hypergeometric series.
pub const MAX_SERIES_TERMS: usize = 10_000;

/// `Some(n)` when `x` is within `1e-12` of the non-positive integer `-n`.
pub(crate) fn nonpositive_integer(x: f64) -> Option<u64> {
    let r = x.round();
    if r <= 0.0 && (x - r).abs() <= 1e-12 {
        Some((-r) as u64)
    } else {
        None
    }
}
