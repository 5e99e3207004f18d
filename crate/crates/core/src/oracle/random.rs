//! Random inputs for equivalence and unitarity checks.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;

use super::{FockState, ModeLabel, Occupation, Port, MAX_PHOTONS};
use crate::devices::FrequencyResponse;
use crate::qbc::{BiphotonAmplitude, Polarization};
use crate::spectral::{FrequencyGrid, SpectralAmplitude};

fn complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// Unit-spaced grid with `n` bins.
pub fn unit_grid(n: usize) -> FrequencyGrid {
    FrequencyGrid::new(1.0, n).expect("n >= 1")
}

/// Normalized spectrum with independent complex amplitudes on every bin.
pub fn spectrum<R: Rng>(rng: &mut R, grid: FrequencyGrid) -> SpectralAmplitude {
    loop {
        let amps = (0..grid.n_bins()).map(|_| complex(rng)).collect();
        if let Ok(s) = SpectralAmplitude::normalized(grid, amps) {
            return s;
        }
    }
}

/// Normalized spectrum supported on the bins where `mask` is true.
pub fn masked_spectrum<R: Rng>(
    rng: &mut R,
    grid: FrequencyGrid,
    mask: &[bool],
) -> SpectralAmplitude {
    loop {
        let amps = mask
            .iter()
            .map(|&on| {
                if on {
                    complex(rng)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        if let Ok(s) = SpectralAmplitude::normalized(grid, amps) {
            return s;
        }
    }
}

/// Per-bin response with values uniform in `[-range, range]`.
pub fn sampled_response<R: Rng>(rng: &mut R, grid: FrequencyGrid, range: f64) -> FrequencyResponse {
    let values = (0..grid.n_bins())
        .map(|_| rng.random_range(-range..=range))
        .collect();
    FrequencyResponse::sampled(grid, values).expect("length matches grid")
}

/// Random phase response in `[-2π, 2π]`.
pub fn phase_response<R: Rng>(rng: &mut R, grid: FrequencyGrid) -> FrequencyResponse {
    sampled_response(rng, grid, 2.0 * PI)
}

/// Biphoton with random pair amplitudes; `M` drawn so that at least one pair fits.
pub fn biphoton<R: Rng>(rng: &mut R, grid: FrequencyGrid) -> BiphotonAmplitude {
    let n = grid.n_bins();
    let m = rng.random_range(2..=2 * n);
    loop {
        let pairs: Vec<(usize, Complex64)> = (1..=n)
            .filter(|&k| m > k && m - k <= n)
            .map(|k| (k, complex(rng)))
            .collect();
        if let Ok(b) = BiphotonAmplitude::from_pairs(grid, m, pairs) {
            return b;
        }
    }
}

/// Random mode on `grid`.
pub fn mode<R: Rng>(rng: &mut R, grid: &FrequencyGrid, polarized: bool) -> ModeLabel {
    let spatial = if rng.random() { Port::A } else { Port::B };
    let polarization = if polarized && rng.random() {
        Polarization::V
    } else {
        Polarization::H
    };
    ModeLabel::new(spatial, rng.random_range(1..=grid.n_bins()), polarization)
}

/// Random normalized superposition of up to `max_terms` configurations with
/// 0 to 2 photons each.
pub fn fock_state<R: Rng>(
    rng: &mut R,
    grid: FrequencyGrid,
    max_terms: usize,
    polarized: bool,
) -> FockState {
    loop {
        let n_terms = rng.random_range(1..=max_terms.max(1));
        let terms: Vec<(Occupation, Complex64)> = (0..n_terms)
            .map(|_| {
                let photons = rng.random_range(0..=MAX_PHOTONS);
                let modes: Vec<ModeLabel> =
                    (0..photons).map(|_| mode(rng, &grid, polarized)).collect();
                (Occupation::new(modes).expect("within cap"), complex(rng))
            })
            .collect();
        if let Ok(st) = FockState::normalized(grid, terms) {
            return st;
        }
    }
}
