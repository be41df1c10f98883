use thiserror::Error;

use crate::ring::RingAmplitudes;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A 2×2 matrix had a determinant too small to invert reliably.
    #[error("singular matrix (|det| = {det:.3e})")]
    SingularMatrix { det: f64 },

    /// The ring resolvent `I₂ − s·s̃` (or an equivalent denominator) vanishes:
    /// an internal wire is decoupled at this wavenumber.
    #[error("degenerate ring: {what} vanishes (|value| = {magnitude:.3e})")]
    DegenerateRing { what: &'static str, magnitude: f64 },

    #[error("series not converged after {terms} terms (remainder bound {bound:.3e})")]
    NotConverged {
        partial: Box<RingAmplitudes>,
        bound: f64,
        terms: usize,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
