//! Cardinal interpolation with Gaussian-type kernels on the integer lattice.
//!
//! Every lattice sum is truncated at a certified radius, and evaluations
//! return an error budget alongside the value. All numerics are generic over
//! [`Real`], implemented for `f64` and the 40-digit [`Extended`] type.

pub mod cardinal;
pub mod error;
pub mod fft;
pub mod grid;
pub mod kernel;
pub mod oracle;
pub mod poly;
pub mod real;
pub mod spectral;

pub use cardinal::{CardinalCoefficients, CardinalInterpolant, Evaluation, IdentityCheck, Route};
pub use error::{Error, Result};
pub use grid::{GridInterpolant, GridSamples};
pub use kernel::{discrete_moment, truncation_radius, CertifiedMoment, Kernel, MomentTable};
pub use oracle::{adjudicate, solve_toeplitz, CoefficientSequence, ToeplitzProblem};
pub use poly::Polynomial;
pub use num_traits::{Float, FloatConst};
pub use real::{Extended, Precision, Real};
pub use spectral::{spectral_interpolate, verify_poisson, PeriodizedSymbol, ReciprocalCoefficients};
