//! Mittag-Leffler-generalized gamma, beta and hypergeometric functions.
//!
//! The crate evaluates the three-parameter (Prabhakar) Mittag-Leffler
//! function on the real line and builds on it the ML-generalized gamma,
//! beta, Gauss hypergeometric and confluent hypergeometric functions,
//! together with a catalog of numerically checkable identities
//! (functional relations, summations, integral representations, Mellin
//! transforms, differentiation and transformation formulas).
//!
//! The `mlsf` binary exposes point evaluation (`eval`), parameter sweeps
//! (`table`) and the identity suite (`verify`).

pub mod classical;
pub mod cli;
pub mod error;
pub mod gamma_beta;
pub mod hyp;
pub mod ml;
pub mod plan;
pub mod quad;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use quad::{Estimate, QuadratureConfig};
