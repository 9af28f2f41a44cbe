//! Mollified uniform distributions and the regression models built on
//! their distribution functions.
//!
//! A mollified uniform is the sum of a uniform(0,1) variate and an
//! independent centered smoothing variable (normal, logistic, or
//! Laplace). The crate provides
//!
//! - the continuous distribution: density, distribution and quantile
//!   functions, moments, kurtosis, and sampling ([`MollifiedUniform`]);
//! - its integer sibling, a discrete uniform smoothed by a symmetric
//!   Skellam variable ([`DiscreteMollifiedUniform`]);
//! - the soft clipping function, the logistic case's distribution
//!   function, with its exact inverse ([`SoftClip`]);
//! - a binomial regression model using soft clipping as the response
//!   function, with simulation, least-squares and maximum-likelihood
//!   fitting ([`glm`]);
//! - a bounded-count autoregressive model analyzed exactly as a finite
//!   Markov chain ([`ar1`]);
//! - the numerical kernels behind all of the above ([`numerics`]).
//!
//! Everything randomized draws from seeded, stream-split generators
//! ([`stream`]), so results are reproducible bit for bit, including under
//! parallel execution.

// numeric constants keep their published or generator digits
#![allow(clippy::excessive_precision)]

pub mod ar1;
pub mod continuous;
pub mod discrete;
pub mod error;
pub mod glm;
pub mod mollifier;
pub mod numerics;
pub mod report;
pub mod softclip;
pub mod stream;

pub use continuous::{kurtosis_curve, kurtosis_from_mollifier_variance, MollifiedUniform};
pub use discrete::{DiscreteMollifiedUniform, Skellam};
pub use error::{Error, Result};
pub use mollifier::Mollifier;
pub use softclip::{crelu, SoftClip};
