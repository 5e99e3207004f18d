//! Discretized continuum spectral amplitudes.
//!
//! A continuum amplitude `σ(ω)` is represented by its samples on a uniform
//! grid `k·ω_s`, `k = 1..=N`, expanded in the shifted-sinc basis. Bin
//! amplitudes are stored in the dimensionless form `c_k = σ(kω_s)·√ω_s`, so that
//! normalization reads `Σ|c_k|² = 1` independently of the spacing.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result, NORMALIZATION_TOLERANCE, TRUNCATION_WARNING};

/// Uniform angular-frequency grid. Bin `k` (1-based) sits at `k·omega_s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGrid")]
pub struct FrequencyGrid {
    omega_s: f64,
    n_bins: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    omega_s: f64,
    n_bins: usize,
}

impl TryFrom<RawGrid> for FrequencyGrid {
    type Error = Error;

    fn try_from(raw: RawGrid) -> Result<Self> {
        FrequencyGrid::new(raw.omega_s, raw.n_bins)
    }
}

impl FrequencyGrid {
    pub fn new(omega_s: f64, n_bins: usize) -> Result<Self> {
        if !(omega_s.is_finite() && omega_s > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "omega_s must be positive and finite, got {omega_s}"
            )));
        }
        if n_bins == 0 {
            return Err(Error::InvalidGrid("n_bins must be at least 1".into()));
        }
        Ok(Self { omega_s, n_bins })
    }

    /// Grid with `n_bins` bins whose last bin sits at `span`.
    pub fn spanning(span: f64, n_bins: usize) -> Result<Self> {
        if n_bins == 0 {
            return Err(Error::InvalidGrid("n_bins must be at least 1".into()));
        }
        Self::new(span / n_bins as f64, n_bins)
    }

    pub fn omega_s(&self) -> f64 {
        self.omega_s
    }

    pub fn n_bins(&self) -> usize {
        self.n_bins
    }

    /// Absolute frequency of bin `k` (1-based).
    pub fn bin_frequency(&self, k: usize) -> f64 {
        k as f64 * self.omega_s
    }

    /// Iterator over `(k, k·ω_s)` for every bin.
    pub fn bins(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        (1..=self.n_bins).map(move |k| (k, self.bin_frequency(k)))
    }

    /// Bin whose frequency is closest to `omega`, clamped into `1..=N`.
    pub fn nearest_bin(&self, omega: f64) -> usize {
        let k = (omega / self.omega_s).round();
        if k < 1.0 {
            1
        } else if k >= self.n_bins as f64 {
            self.n_bins
        } else {
            k as usize
        }
    }
}

/// Normalized single-photon amplitudes on a [`FrequencyGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralAmplitude {
    grid: FrequencyGrid,
    amplitudes: Vec<Complex64>,
}

impl SpectralAmplitude {
    /// Wraps already-normalized bin amplitudes, checking length and norm.
    pub fn new(grid: FrequencyGrid, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != grid.n_bins() {
            return Err(Error::LengthMismatch {
                expected: grid.n_bins(),
                found: amplitudes.len(),
            });
        }
        let norm = squared_norm(&amplitudes);
        // NaN norms must be rejected too
        if norm.is_nan() || (norm - 1.0).abs() >= NORMALIZATION_TOLERANCE {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { grid, amplitudes })
    }

    /// Rescales arbitrary bin amplitudes to unit norm.
    pub fn normalized(grid: FrequencyGrid, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != grid.n_bins() {
            return Err(Error::LengthMismatch {
                expected: grid.n_bins(),
                found: amplitudes.len(),
            });
        }
        let norm = squared_norm(&amplitudes);
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::EmptySpectrum);
        }
        let scale = norm.sqrt().recip();
        amplitudes.iter_mut().for_each(|c| *c *= scale);
        Ok(Self { grid, amplitudes })
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    /// Bin amplitudes `c_1..c_N`; index 0 holds bin 1.
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Amplitude of bin `k` (1-based).
    pub fn bin(&self, k: usize) -> Complex64 {
        self.amplitudes[k - 1]
    }

    /// Sample `σ(kω_s) = c_k / √ω_s`.
    pub fn sample(&self, k: usize) -> Complex64 {
        self.bin(k) / self.grid.omega_s().sqrt()
    }

    /// Per-bin probabilities `|c_k|²`.
    pub fn weights(&self) -> impl Iterator<Item = f64> + '_ {
        self.amplitudes.iter().map(|c| c.norm_sqr())
    }

    fn same_grid(&self, other: &Self) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }
}

fn squared_norm(amplitudes: &[Complex64]) -> f64 {
    amplitudes.iter().map(|c| c.norm_sqr()).sum()
}

/// Analytic families of continuum spectral amplitudes `σ(ω)`.
///
/// The parametric shapes are real and unit-normalized over the real line, so
/// the mass captured by a grid directly measures truncation. `std` and
/// `half_width` describe the intensity profile `|σ(ω)|²`.
#[derive(Debug, Clone, PartialEq)]
pub enum SpectralShape {
    Gaussian {
        center: f64,
        std: f64,
    },
    Lorentzian {
        center: f64,
        half_width: f64,
    },
    /// Flat amplitude on the closed interval `[low, high]`.
    Rectangular {
        low: f64,
        high: f64,
    },
    /// Complex samples `(ω, σ(ω))`, linearly interpolated, zero outside the table.
    Table(Vec<(f64, Complex64)>),
}

impl SpectralShape {
    /// Checks parameter ranges. Frequencies may be negative here, which is
    /// what detuning-domain shapes need; see [`SpectralShape::validate_absolute`].
    pub fn validate(&self) -> Result<()> {
        let finite = |name: &str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidShape(format!(
                    "{name} must be finite, got {v}"
                )))
            }
        };
        match self {
            SpectralShape::Gaussian { center, std } => {
                finite("center", *center)?;
                finite("std", *std)?;
                if *std <= 0.0 {
                    return Err(Error::InvalidShape(format!(
                        "std must be positive, got {std}"
                    )));
                }
            }
            SpectralShape::Lorentzian { center, half_width } => {
                finite("center", *center)?;
                finite("half_width", *half_width)?;
                if *half_width <= 0.0 {
                    return Err(Error::InvalidShape(format!(
                        "half_width must be positive, got {half_width}"
                    )));
                }
            }
            SpectralShape::Rectangular { low, high } => {
                finite("low", *low)?;
                finite("high", *high)?;
                if low >= high {
                    return Err(Error::InvalidShape(format!(
                        "rectangular shape needs low < high, got [{low}, {high}]"
                    )));
                }
            }
            SpectralShape::Table(samples) => {
                if samples.is_empty() {
                    return Err(Error::InvalidShape("table has no samples".into()));
                }
                for (w, v) in samples {
                    finite("table frequency", *w)?;
                    finite("table value", v.re)?;
                    finite("table value", v.im)?;
                }
                if samples.windows(2).any(|p| p[0].0 >= p[1].0) {
                    return Err(Error::InvalidShape(
                        "table frequencies must be strictly increasing".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// As [`SpectralShape::validate`], additionally requiring every frequency
    /// parameter to be positive (absolute optical frequencies).
    pub fn validate_absolute(&self) -> Result<()> {
        self.validate()?;
        let positive = |name: &str, v: f64| {
            if v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidShape(format!(
                    "{name} must be positive, got {v}"
                )))
            }
        };
        match self {
            SpectralShape::Gaussian { center, .. } | SpectralShape::Lorentzian { center, .. } => {
                positive("center", *center)
            }
            SpectralShape::Rectangular { low, .. } => positive("low", *low),
            SpectralShape::Table(samples) => positive("table frequency", samples[0].0),
        }
    }

    /// Evaluates `σ(ω)`.
    pub fn evaluate(&self, omega: f64) -> Complex64 {
        match self {
            SpectralShape::Gaussian { center, std } => {
                let x = omega - center;
                let norm = (2.0 * PI * std * std).powf(-0.25);
                Complex64::new(norm * (-x * x / (4.0 * std * std)).exp(), 0.0)
            }
            SpectralShape::Lorentzian { center, half_width } => {
                let x = omega - center;
                let density = half_width / (PI * (x * x + half_width * half_width));
                Complex64::new(density.sqrt(), 0.0)
            }
            SpectralShape::Rectangular { low, high } => {
                if omega >= *low && omega <= *high {
                    Complex64::new((high - low).sqrt().recip(), 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
            SpectralShape::Table(samples) => interpolate_table(samples, omega),
        }
    }
}

fn interpolate_table(samples: &[(f64, Complex64)], omega: f64) -> Complex64 {
    let zero = Complex64::new(0.0, 0.0);
    let (first, last) = match (samples.first(), samples.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return zero,
    };
    if omega < first.0 || omega > last.0 {
        return zero;
    }
    // first index with frequency > omega
    let hi = samples.partition_point(|(w, _)| *w <= omega);
    if hi == 0 {
        return first.1;
    }
    if hi == samples.len() {
        return last.1;
    }
    let (w0, v0) = samples[hi - 1];
    let (w1, v1) = samples[hi];
    let t = (omega - w0) / (w1 - w0);
    v0 + (v1 - v0) * t
}

/// Result of sampling a shape onto a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Discretization {
    pub amplitude: SpectralAmplitude,
    /// `Σ|σ(kω_s)|²·ω_s` before renormalization.
    pub sampled_mass: f64,
}

impl Discretization {
    /// Mass lost relative to a unit-normalized continuum shape.
    pub fn truncated_mass(&self) -> f64 {
        (1.0 - self.sampled_mass).abs()
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated_mass() > TRUNCATION_WARNING
    }
}

/// Samples `shape` at every bin, `c_k ∝ σ(kω_s)·√ω_s`, and renormalizes.
pub fn discretize(shape: &SpectralShape, grid: &FrequencyGrid) -> Result<Discretization> {
    shape.validate_absolute()?;
    let root = grid.omega_s().sqrt();
    let raw: Vec<Complex64> = grid.bins().map(|(_, w)| shape.evaluate(w) * root).collect();
    let sampled_mass = squared_norm(&raw);
    let amplitude = SpectralAmplitude::normalized(*grid, raw)?;
    Ok(Discretization {
        amplitude,
        sampled_mass,
    })
}

/// `Σ|c_k|²`.
pub fn check_normalization(s: &SpectralAmplitude) -> f64 {
    squared_norm(&s.amplitudes)
}

/// Normalized sinc, `sin(πx)/(πx)`.
pub fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        sin_pi(x) / (PI * x)
    }
}

// sin(πx) with argument reduction to [-1/2, 1/2] so integer x gives exact zeros.
fn sin_pi(x: f64) -> f64 {
    let n = x.round();
    let r = x - n;
    let s = (PI * r).sin();
    if n.rem_euclid(2.0) == 0.0 {
        s
    } else {
        -s
    }
}

/// Sinc-series value `Σ_k σ(kω_s)·sinc((ω − kω_s)/ω_s)` at an arbitrary `omega`.
pub fn reconstruct(s: &SpectralAmplitude, omega: f64) -> Complex64 {
    let grid = s.grid();
    let t = omega / grid.omega_s();
    let nearest = t.round();
    if nearest >= 1.0
        && nearest <= grid.n_bins() as f64
        && (t - nearest).abs() <= 4.0 * f64::EPSILON * nearest
    {
        return s.sample(nearest as usize);
    }
    // sinc(t - k) = (-1)^k sin(πt) / (π (t - k))
    let sin_t = sin_pi(t);
    let root = grid.omega_s().sqrt();
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, c) in s.amplitudes().iter().enumerate() {
        let k = (i + 1) as f64;
        let sign = if (i + 1) % 2 == 0 { 1.0 } else { -1.0 };
        acc += c * (sign * sin_t / (PI * (t - k)));
    }
    acc / root
}

/// Inner product `Σ_k conj(c_k)·d_k`.
pub fn overlap(s: &SpectralAmplitude, t: &SpectralAmplitude) -> Result<Complex64> {
    s.same_grid(t)?;
    Ok(s.amplitudes
        .iter()
        .zip(&t.amplitudes)
        .map(|(c, d)| c.conj() * d)
        .sum())
}

/// Same-bin overlap `Σ_k |c_k·d_k|²`, clamped to `[0, 1]` against rounding.
pub fn same_bin_overlap(s: &SpectralAmplitude, t: &SpectralAmplitude) -> Result<f64> {
    s.same_grid(t)?;
    let sum: f64 = s
        .amplitudes
        .iter()
        .zip(&t.amplitudes)
        .map(|(c, d)| (c * d).norm_sqr())
        .sum();
    Ok(sum.min(1.0))
}
