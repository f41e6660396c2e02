//! Error type shared by all numeric modules.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum DunklError {
    #[error("argument must be finite, got {value}")]
    NonFinite { value: f64 },

    #[error("k must be positive, got {k}")]
    InvalidMultiplicity { k: f64 },

    #[error("Bessel order must exceed -1/2, got {alpha}")]
    InvalidBesselOrder { alpha: f64 },

    #[error("spectral point outside the open chamber: {reason}")]
    ChamberViolation { reason: String },

    #[error("non-integrable endpoint exponent {exponent} (must exceed -1)")]
    NonIntegrableEndpoint { exponent: f64 },

    #[error("invalid integration interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },

    #[error("quadrature rule needs at least one node, got {n}")]
    EmptyRule { n: usize },

    #[error("integrand evaluated to a non-finite value at node {node}")]
    NonFiniteIntegrand { node: f64 },

    #[error("point ({nu1}, {nu2}) lies outside the open integration box")]
    OutsideBox { nu1: f64, nu2: f64 },

    #[error("eigenvalue iteration failed to converge")]
    EigenFailure,
}

pub type Result<T> = std::result::Result<T, DunklError>;
