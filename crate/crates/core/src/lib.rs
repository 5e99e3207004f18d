//! Continuum single-photon pulses on a sinc-basis frequency grid.
//!
//! A photon with spectral amplitude `σ(ω)` is sampled at `k·ω_s` and stored as
//! dimensionless bin amplitudes `c_k = σ(kω_s)·√ω_s`. On top of that
//! representation the crate computes
//!
//! * Mach-Zehnder output probabilities for frequency-dependent phase modulators
//!   ([`interference::mzi_probabilities`]),
//! * Hong-Ou-Mandel coincidence probabilities for a frequency-dependent beam
//!   splitter ([`interference::hom_coincidence`]),
//! * the cheat-detection probability of the Lo-Chau bit-commitment protocol
//!   run with a spectrally entangled biphoton ([`qbc::cheat_error_probability`]),
//!
//! and checks each closed form against a brute-force Fock-space simulator
//! ([`oracle`]).

pub mod config;
pub mod devices;
mod error;
pub mod interference;
pub mod oracle;
pub mod qbc;
pub mod run;
pub mod spectral;

pub use devices::FrequencyResponse;
pub use error::{Error, ErrorClass, Result};
pub use spectral::{FrequencyGrid, SpectralAmplitude, SpectralShape};

pub use num_complex::Complex64;

/// Construction-time tolerance on `Σ|c_k|² = 1`.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// Truncated probability mass above which a discretization is reported as truncated.
pub const TRUNCATION_WARNING: f64 = 1e-6;
