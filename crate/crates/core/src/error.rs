use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid order: {0}")]
    InvalidOrder(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("series did not converge within {terms} terms ({context})")]
    NonConvergence { terms: usize, context: String },

    #[error("accuracy loss: {0}")]
    AccuracyLoss(String),

    #[error("pole in Kilbas-Saigo coefficient at i = {index}")]
    PoleInCoefficient { index: usize },

    #[error("argument outside the domain: {0}")]
    DomainError(String),

    #[error("pole: {0}")]
    PoleError(String),

    #[error("integrand is not integrable: {0}")]
    NonIntegrable(String),

    #[error("quadrature tolerance not met (error estimate {estimate:e})")]
    ToleranceNotMet { estimate: f64 },

    #[error("kernel evaluation failed: {0}")]
    SingularKernel(String),

    #[error("ill-conditioned step equation at step {step} (diagonal {diagonal:e})")]
    IllConditioned { step: usize, diagonal: f64 },

    #[error("grid too coarse: {steps} steps, at least {min} required")]
    GridTooCoarse { steps: usize, min: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
