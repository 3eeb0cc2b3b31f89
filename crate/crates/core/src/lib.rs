//! Constructive approximation of smooth functions by shallow ReLU^k networks.
//!
//! The pipeline goes target function -> Radon profiles (via the Fourier slice
//! identity) -> filtered back-projection -> Peano-kernel ridge density ->
//! finite network, with mollification and error metrics for rate studies.
//!
//! The crate is `no_std` and only needs `alloc`. Everything that touches the
//! filesystem or the command line lives in the `ridgelab` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

mod error;
pub mod fft;
pub mod fourier_radon;
pub mod gauss;
pub mod interp;
pub mod math;
pub mod metrics;
pub mod mollify;
pub mod network;
pub mod polynomial;
pub mod quadrature;
pub mod radial;
pub mod ridge_density;
pub mod targets;

pub use error::{Error, Result};
pub use fourier_radon::{ProfileKind, RidgeProfile, SpectralOptions};
pub use metrics::{ErrorSeries, RateFit};
pub use network::{Neuron, ShallowNetwork};
pub use polynomial::PolynomialPart;
pub use quadrature::{BallSampler, LineGrid, SampleMode, SphereGrid};
pub use targets::{GaussianSpec, TargetFunction};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
