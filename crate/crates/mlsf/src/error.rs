use thiserror::Error;

/// Errors surfaced by the library.
///
/// Budget exhaustion in quadrature or series summation is not an error:
/// those paths return an [`Estimate`](crate::quad::Estimate) with
/// `converged = false` so the best available value is still reported.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input outside the domain where the operation is defined or the
    /// defining integral/series converges.
    #[error("domain error: {0}")]
    Domain(String),
    /// Gamma function pole at a non-positive integer.
    #[error("gamma pole at x = {0}")]
    Pole(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
