//! Classical and fractional dielectric relaxation: Mittag-Leffler-family
//! special functions, memory kernels, relaxation functions and complex
//! susceptibilities for the Debye, Cole-Cole, Cole-Davidson and
//! Havriliak-Negami laws, together with independent numerical oracles
//! (Talbot inversion, forward Laplace quadrature, a product-integration
//! Volterra solver) and a Levenberg-Marquardt spectrum fitter.

// `!(x > 0.0)` style checks are intended: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![cfg_attr(test, allow(clippy::excessive_precision))]

pub mod error;
pub mod fitting;
pub mod grid;
pub mod kernels;
pub mod kinetic_solver;
pub mod laplace_oracle;
pub mod mlcore;
pub mod model;
pub mod quad;
pub mod relaxation;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
pub use mlcore::{kilbas_saigo, ml1, ml2, ml3, EvalOptions, KSArgs, MLArgs};
pub use model::{ModelKind, ModelParams};
pub use relaxation::{PermittivityScale, SampledFunction, Values};

pub use num_complex::Complex64;
