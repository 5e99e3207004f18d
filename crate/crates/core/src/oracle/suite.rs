//! Randomized equivalence suite: every closed form against the oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::random;
use super::{
    apply_beam_splitter, apply_phase, apply_polarization_reflection, mzi_bin_amplitudes,
    oracle_hom, oracle_mzi, oracle_qbc, Port, ORACLE_MAX_BINS,
};
use crate::devices::FrequencyResponse;
use crate::{interference, qbc, spectral, Error, Result};

/// Agreement required between a closed form and the oracle.
pub const EQUIVALENCE_TOLERANCE: f64 = 1e-12;

/// Agreement required between the general coincidence sum at `θ = π/4` and
/// the balanced special case.
pub const BALANCED_TOLERANCE: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    pub trials: usize,
    pub max_bins: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            trials: 100,
            max_bins: 10,
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub n_trials: usize,
    pub max_abs_error: f64,
    pub tolerance: f64,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.max_abs_error <= self.tolerance
    }
}

type Check = fn(&mut ChaCha8Rng, usize) -> Result<f64>;

const CHECKS: &[(&str, f64, Check)] = &[
    (
        "mzi_probabilities_vs_oracle",
        EQUIVALENCE_TOLERANCE,
        mzi_probabilities,
    ),
    (
        "mzi_amplitudes_vs_oracle",
        EQUIVALENCE_TOLERANCE,
        mzi_amplitudes,
    ),
    ("mzi_completeness", EQUIVALENCE_TOLERANCE, mzi_completeness),
    (
        "hom_eq24_vs_direct_sum",
        EQUIVALENCE_TOLERANCE,
        hom_paper_sum,
    ),
    (
        "hom_balanced_vs_general",
        BALANCED_TOLERANCE,
        hom_balanced_vs_general,
    ),
    (
        "hom_full_vs_overlap",
        EQUIVALENCE_TOLERANCE,
        hom_full_vs_overlap,
    ),
    (
        "hom_disjoint_full_vs_eq24",
        EQUIVALENCE_TOLERANCE,
        hom_disjoint,
    ),
    ("qbc_closed_form_vs_oracle", EQUIVALENCE_TOLERANCE, qbc_pe),
    ("qbc_rotator_norm", EQUIVALENCE_TOLERANCE, qbc_rotator_norm),
    (
        "unitarity_beam_splitter",
        EQUIVALENCE_TOLERANCE,
        unitarity_beam_splitter,
    ),
    ("unitarity_phase", EQUIVALENCE_TOLERANCE, unitarity_phase),
    (
        "unitarity_rotator",
        EQUIVALENCE_TOLERANCE,
        unitarity_rotator,
    ),
];

/// Runs every check for `trials` random cases with grids of `1..=max_bins` bins.
pub fn run_equivalence_suite(opts: &SuiteOptions) -> Result<Vec<CheckOutcome>> {
    if opts.max_bins > ORACLE_MAX_BINS {
        return Err(Error::OracleCapacity {
            bins: opts.max_bins,
            limit: ORACLE_MAX_BINS,
        });
    }
    if opts.trials == 0 {
        return Err(Error::NoTrials);
    }
    if opts.max_bins == 0 {
        return Err(Error::InvalidGrid("max_bins must be at least 1".into()));
    }
    CHECKS
        .iter()
        .enumerate()
        .map(|(i, (name, tolerance, check))| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(i as u64);
            let mut max_abs_error: f64 = 0.0;
            for _ in 0..opts.trials {
                let n = rng.random_range(1..=opts.max_bins);
                let err = check(&mut rng, n)?;
                // NaN must fail the check
                max_abs_error = if err.is_nan() {
                    f64::NAN
                } else {
                    max_abs_error.max(err)
                };
                if max_abs_error.is_nan() {
                    break;
                }
            }
            Ok(CheckOutcome {
                name,
                n_trials: opts.trials,
                max_abs_error,
                tolerance: *tolerance,
            })
        })
        .collect()
}

fn mzi_probabilities(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let g = random::unit_grid(n);
    let s = random::spectrum(rng, g);
    let (pa, pb) = (
        random::phase_response(rng, g),
        random::phase_response(rng, g),
    );
    let closed = interference::mzi_probabilities(&s, &pa, &pb)?;
    let brute = oracle_mzi(&s, &pa, &pb)?;
    Ok((closed.p_a - brute.p_a)
        .abs()
        .max((closed.p_b - brute.p_b).abs()))
}

fn mzi_amplitudes(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let g = random::unit_grid(n);
    let s = random::spectrum(rng, g);
    let (pa, pb) = (
        random::phase_response(rng, g),
        random::phase_response(rng, g),
    );
    let closed = interference::mzi_output_state(&s, &pa, &pb)?;
    let brute = mzi_bin_amplitudes(&s, &pa, &pb)?;
    Ok(closed
        .bins
        .iter()
        .zip(&brute)
        .map(|(c, (a, b))| (c.amp_a - a).norm().max((c.amp_b - b).norm()))
        .fold(0.0, f64::max))
}

fn mzi_completeness(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let g = random::unit_grid(n);
    let s = random::spectrum(rng, g);
    let (pa, pb) = (
        random::phase_response(rng, g),
        random::phase_response(rng, g),
    );
    let p = interference::mzi_probabilities(&s, &pa, &pb)?;
    Ok((p.p_a + p.p_b - 1.0).abs())
}

fn hom_paper_sum(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let g = random::unit_grid(n);
    let (s, t) = (random::spectrum(rng, g), random::spectrum(rng, g));
    let theta = random::phase_response(rng, g);
    let closed = interference::hom_coincidence(&s, &t, &theta)?;
    Ok((closed - oracle_hom(&s, &t, &theta)?.p_coin_paper).abs())
}

fn hom_balanced_vs_general(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let g = random::unit_grid(n);
    let (s, t) = (random::spectrum(rng, g), random::spectrum(rng, g));
    let general = interference::hom_coincidence(&s, &t, &crate::devices::balanced_bs_angle())?;
    Ok((general - interference::hom_balanced(&s, &t)?).abs())
}

fn hom_full_vs_overlap(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let g = random::unit_grid(n);
    let (s, t) = (random::spectrum(rng, g), random::spectrum(rng, g));
    let full = oracle_hom(&s, &t, &crate::devices::balanced_bs_angle())?.p_coin_full;
    let textbook = 0.5 * (1.0 - spectral::overlap(&s, &t)?.norm_sqr());
    Ok((full - textbook).abs())
}

fn hom_disjoint(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let g = random::unit_grid(n.max(2));
    let mask: Vec<bool> = (0..g.n_bins()).map(|_| rng.random()).collect();
    let mask = if mask.iter().all(|&m| m) || mask.iter().all(|&m| !m) {
        (0..g.n_bins()).map(|i| i % 2 == 0).collect()
    } else {
        mask
    };
    let complement: Vec<bool> = mask.iter().map(|m| !m).collect();
    let s = random::masked_spectrum(rng, g, &mask);
    let t = random::masked_spectrum(rng, g, &complement);
    let theta = random::phase_response(rng, g);
    let closed = interference::hom_coincidence(&s, &t, &theta)?;
    Ok((closed - oracle_hom(&s, &t, &theta)?.p_coin_full).abs())
}

fn qbc_pe(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let g = random::unit_grid(n);
    let b = random::biphoton(rng, g);
    let theta = random::phase_response(rng, g);
    Ok((qbc::cheat_error_probability(&b, &theta)? - oracle_qbc(&b, &theta)?).abs())
}

fn qbc_rotator_norm(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let g = random::unit_grid(n);
    let b = random::biphoton(rng, g);
    let theta = random::phase_response(rng, g);
    Ok((qbc::apply_rotator(&b, &theta)?.norm_sqr() - 1.0).abs())
}

fn unitarity_beam_splitter(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let g = random::unit_grid(n);
    let st = random::fock_state(rng, g, 8, true);
    let theta = random::phase_response(rng, g);
    Ok((apply_beam_splitter(&st, &theta)?.norm_sqr() - 1.0).abs())
}

fn unitarity_phase(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let g = random::unit_grid(n);
    let st = random::fock_state(rng, g, 8, true);
    let port = if rng.random() { Port::A } else { Port::B };
    let phi: FrequencyResponse = random::phase_response(rng, g);
    Ok((apply_phase(&st, port, &phi)?.norm_sqr() - 1.0).abs())
}

fn unitarity_rotator(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let g = random::unit_grid(n);
    let st = random::fock_state(rng, g, 8, true);
    let port = if rng.random() { Port::A } else { Port::B };
    let theta = random::phase_response(rng, g);
    Ok((apply_polarization_reflection(&st, port, &theta)?.norm_sqr() - 1.0).abs())
}
