//! Closed-form interference probabilities on the discretized spectrum.
//!
//! The Mach-Zehnder results treat each frequency bin as an independent
//! single-frequency interferometer weighted by `|c_k|²`. The Hong-Ou-Mandel
//! coincidence probability follows the bin-by-bin sum over photon pairs
//! `(k, l)`: distinct bins contribute the both-transmitted and both-reflected
//! terms and equal bins the `|1,1⟩` component. Cross terms between `(k, l)`
//! and the swapped assignment `(l, k)` are not part of that sum; the full
//! two-photon evolution in [`crate::oracle`] includes them.

use num_complex::Complex64;

use crate::devices::FrequencyResponse;
use crate::spectral::{self, SpectralAmplitude};
use crate::{Error, Result};

/// Output of the interferometer for one frequency bin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MziBin {
    pub k: usize,
    /// `Ω_k = [φ_A(kω_s) + φ_B(kω_s)] / 2`
    pub common_phase: f64,
    /// `Δ_k = [φ_A(kω_s) − φ_B(kω_s)] / 2`
    pub half_difference: f64,
    pub amp_a: Complex64,
    pub amp_b: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MziOutputState {
    pub bins: Vec<MziBin>,
}

impl MziOutputState {
    pub fn norm_sqr(&self) -> f64 {
        self.bins
            .iter()
            .map(|b| b.amp_a.norm_sqr() + b.amp_b.norm_sqr())
            .sum()
    }

    /// Squared-magnitude marginals over the two output ports.
    pub fn marginals(&self) -> OutputProbabilities {
        let p_a = self.bins.iter().map(|b| b.amp_a.norm_sqr()).sum();
        let p_b = self.bins.iter().map(|b| b.amp_b.norm_sqr()).sum();
        OutputProbabilities { p_a, p_b }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutputProbabilities {
    pub p_a: f64,
    pub p_b: f64,
}

/// Per-bin output amplitudes of a balanced MZI with arm phases `phi_a`, `phi_b`.
///
/// `amp_a = i·e^{iΩ_k}·cos(Δ_k)·c_k`, `amp_b = i·e^{iΩ_k}·sin(Δ_k)·c_k`.
pub fn mzi_output_state(
    s: &SpectralAmplitude,
    phi_a: &FrequencyResponse,
    phi_b: &FrequencyResponse,
) -> Result<MziOutputState> {
    let grid = s.grid();
    let bins = grid
        .bins()
        .map(|(k, w)| {
            let pa = phi_a.eval(w)?;
            let pb = phi_b.eval(w)?;
            let common_phase = 0.5 * (pa + pb);
            let half_difference = 0.5 * (pa - pb);
            let prefactor = Complex64::i() * Complex64::from_polar(1.0, common_phase) * s.bin(k);
            Ok(MziBin {
                k,
                common_phase,
                half_difference,
                amp_a: prefactor * half_difference.cos(),
                amp_b: prefactor * half_difference.sin(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MziOutputState { bins })
}

/// `p_a = Σ cos²(Δ_k)|c_k|²`, `p_b = Σ sin²(Δ_k)|c_k|²`.
///
/// The continuum limit is obtained by calling this on a finer grid.
pub fn mzi_probabilities(
    s: &SpectralAmplitude,
    phi_a: &FrequencyResponse,
    phi_b: &FrequencyResponse,
) -> Result<OutputProbabilities> {
    let mut p_a = 0.0;
    let mut p_b = 0.0;
    for ((_, w), weight) in s.grid().bins().zip(s.weights()) {
        let delta = 0.5 * (phi_a.eval(w)? - phi_b.eval(w)?);
        let (cos2, sin2) = cos_sin_squared(delta);
        p_a += cos2 * weight;
        p_b += sin2 * weight;
    }
    Ok(OutputProbabilities { p_a, p_b })
}

// (cos²x, sin²x) via the double angle; exact 1/2 at x = π/4 and exact 0/1 at x = π/2.
pub(crate) fn cos_sin_squared(x: f64) -> (f64, f64) {
    let c2 = (2.0 * x).cos();
    (0.5 * (1.0 + c2), 0.5 * (1.0 - c2))
}

/// Coincidence probability at a beam splitter with angle `theta(ω)`:
///
/// `Σ_{k≠l} |c_k d_l|² [cos²θ_k cos²θ_l + sin²θ_k sin²θ_l] + Σ_k |c_k d_k|² cos²(2θ_k)`.
pub fn hom_coincidence(
    s: &SpectralAmplitude,
    t: &SpectralAmplitude,
    theta: &FrequencyResponse,
) -> Result<f64> {
    if s.grid() != t.grid() {
        return Err(Error::GridMismatch);
    }
    let thetas = theta.on_grid(s.grid())?;

    // The k≠l sum factorizes once the diagonal is subtracted.
    let (mut sc, mut ss, mut tc, mut ts) = (0.0, 0.0, 0.0, 0.0);
    let mut diagonal = 0.0;
    let mut degenerate = 0.0;
    for ((c, d), th) in s.amplitudes().iter().zip(t.amplitudes()).zip(&thetas) {
        let (cos2, sin2) = cos_sin_squared(*th);
        let (wc, wd) = (c.norm_sqr(), d.norm_sqr());
        sc += wc * cos2;
        ss += wc * sin2;
        tc += wd * cos2;
        ts += wd * sin2;
        let pair = wc * wd;
        diagonal += pair * (cos2 * cos2 + sin2 * sin2);
        degenerate += pair * cos_sin_squared(2.0 * th).0;
    }
    let p = sc * tc + ss * ts - diagonal + degenerate;
    Ok(p.clamp(0.0, 1.0))
}

/// Balanced, frequency-independent splitter: `½ − ½·Σ_k |c_k d_k|²`.
pub fn hom_balanced(s: &SpectralAmplitude, t: &SpectralAmplitude) -> Result<f64> {
    Ok(0.5 - 0.5 * spectral::same_bin_overlap(s, t)?)
}
