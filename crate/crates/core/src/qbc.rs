//! Lo-Chau bit commitment with a spectrally entangled biphoton.
//!
//! Alice prepares `(|HH⟩ + |VV⟩)/√2` on every anti-correlated frequency pair
//! `(kω_s, lω_s)` with `k + l = M`, keeps the photon at `kω_s` and sends the
//! one at `lω_s` to Bob. To switch her commitment from `0` to `1` she applies
//! a frequency-dependent reflection `[[cos θ, sin θ], [sin θ, −cos θ]]` to her
//! photon, which is an exact NOT only where `θ(kω_s) = π/2`.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::devices::FrequencyResponse;
use crate::interference::cos_sin_squared;
use crate::spectral::{FrequencyGrid, SpectralShape};
use crate::{Error, Result, NORMALIZATION_TOLERANCE, TRUNCATION_WARNING};

/// Relative tolerance when checking that `2ω₀/ω_s` is an integer.
pub const COMMENSURABILITY_TOLERANCE: f64 = 1e-9;

/// Frequency-anticorrelated, polarization-entangled photon pair.
#[derive(Debug, Clone, PartialEq)]
pub struct BiphotonAmplitude {
    grid: FrequencyGrid,
    m_index: usize,
    /// `s_k` indexed by `k − 1`; zero wherever `M − k` falls off the grid.
    pairs: Vec<Complex64>,
    sampled_mass: f64,
}

impl BiphotonAmplitude {
    /// Builds a biphoton from raw pair amplitudes `(k, s_k)` and renormalizes.
    pub fn from_pairs(
        grid: FrequencyGrid,
        m_index: usize,
        pairs: impl IntoIterator<Item = (usize, Complex64)>,
    ) -> Result<Self> {
        let mut amps = vec![Complex64::new(0.0, 0.0); grid.n_bins()];
        for (k, s) in pairs {
            if !valid_pair(&grid, m_index, k) {
                return Err(Error::InvalidShape(format!(
                    "pair ({k}, {}) is outside the grid",
                    m_index as i64 - k as i64
                )));
            }
            amps[k - 1] = s;
        }
        let mass: f64 = amps.iter().map(|s| s.norm_sqr()).sum();
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::EmptySpectrum);
        }
        let scale = mass.sqrt().recip();
        amps.iter_mut().for_each(|s| *s *= scale);
        Ok(Self {
            grid,
            m_index,
            pairs: amps,
            sampled_mass: mass,
        })
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    /// `M` with `M·ω_s = 2ω₀`.
    pub fn m_index(&self) -> usize {
        self.m_index
    }

    /// Amplitude of the pair whose first photon sits in bin `k`.
    pub fn pair(&self, k: usize) -> Complex64 {
        self.pairs[k - 1]
    }

    /// Iterator over `(k, l, s_k)` for every pair that fits on the grid.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        self.valid_bins()
            .map(move |k| (k, self.m_index - k, self.pairs[k - 1]))
    }

    fn valid_bins(&self) -> impl Iterator<Item = usize> {
        let n = self.grid.n_bins();
        let lo = self.m_index.saturating_sub(n).max(1);
        let hi = n.min(self.m_index.saturating_sub(1));
        lo..=hi
    }

    pub fn norm_sqr(&self) -> f64 {
        self.pairs.iter().map(|s| s.norm_sqr()).sum()
    }

    /// Pre-renormalization mass `Σ|σ(Ω_k)|²ω_s` over the retained pairs.
    pub fn sampled_mass(&self) -> f64 {
        self.sampled_mass
    }

    pub fn truncated_mass(&self) -> f64 {
        (1.0 - self.sampled_mass).abs()
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated_mass() > TRUNCATION_WARNING
    }
}

fn valid_pair(grid: &FrequencyGrid, m: usize, k: usize) -> bool {
    k >= 1 && k <= grid.n_bins() && m > k && m - k <= grid.n_bins()
}

/// `M = 2ω₀/ω_s`, required to be an integer.
pub fn pair_index(omega_0: f64, grid: &FrequencyGrid) -> Result<usize> {
    let ratio = 2.0 * omega_0 / grid.omega_s();
    if !(ratio.is_finite() && ratio >= 2.0) {
        return Err(Error::Incommensurate { ratio });
    }
    let m = ratio.round();
    if (ratio - m).abs() > COMMENSURABILITY_TOLERANCE * m {
        return Err(Error::Incommensurate { ratio });
    }
    Ok(m as usize)
}

/// Discretizes a detuning-domain amplitude `σ(Ω)` onto anti-correlated pairs:
/// `s_k ∝ σ((k − M/2)·ω_s)·√ω_s`.
pub fn make_bell_biphoton(
    shape: &SpectralShape,
    omega_0: f64,
    grid: &FrequencyGrid,
) -> Result<BiphotonAmplitude> {
    shape.validate()?;
    let m = pair_index(omega_0, grid)?;
    let root = grid.omega_s().sqrt();
    let half = m as f64 / 2.0;
    let n = grid.n_bins();
    let lo = m.saturating_sub(n).max(1);
    let hi = n.min(m - 1);
    let pairs = (lo..=hi).map(|k| {
        let detuning = (k as f64 - half) * grid.omega_s();
        (k, shape.evaluate(detuning) * root)
    });
    BiphotonAmplitude::from_pairs(*grid, m, pairs)
}

/// Polarization label order used for per-pair coefficients.
pub const POLARIZATION_PAIRS: [(Polarization, Polarization); 4] = [
    (Polarization::H, Polarization::H),
    (Polarization::V, Polarization::H),
    (Polarization::H, Polarization::V),
    (Polarization::V, Polarization::V),
];

/// Biphoton after Alice's rotator; coefficients over
/// `(HH, VH, HV, VV)` with Alice's polarization first.
#[derive(Debug, Clone, PartialEq)]
pub struct RotatedBiphoton {
    grid: FrequencyGrid,
    m_index: usize,
    pairs: Vec<(usize, [Complex64; 4])>,
}

impl RotatedBiphoton {
    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn m_index(&self) -> usize {
        self.m_index
    }

    /// `(k, [HH, VH, HV, VV])` for every retained pair.
    pub fn pairs(&self) -> &[(usize, [Complex64; 4])] {
        &self.pairs
    }

    pub fn norm_sqr(&self) -> f64 {
        self.pairs
            .iter()
            .flat_map(|(_, c)| c.iter())
            .map(|c| c.norm_sqr())
            .sum()
    }
}

/// Applies `[[cos θ_k, sin θ_k], [sin θ_k, −cos θ_k]]` to Alice's photon in every pair.
pub fn apply_rotator(b: &BiphotonAmplitude, theta: &FrequencyResponse) -> Result<RotatedBiphoton> {
    let pairs = b
        .pairs()
        .map(|(k, _, s)| {
            let th = theta.eval(b.grid.bin_frequency(k))?;
            let amp = s * FRAC_1_SQRT_2;
            let (cos, sin) = (th.cos(), th.sin());
            Ok((k, [amp * cos, amp * sin, amp * sin, -amp * cos]))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RotatedBiphoton {
        grid: b.grid,
        m_index: b.m_index,
        pairs,
    })
}

/// `PE = Σ_k |s_k|²·cos²θ(kω_s)`: probability that Alice's and Bob's H/V
/// outcomes agree after the cheating rotation, which contradicts an announced `1`.
pub fn cheat_error_probability(b: &BiphotonAmplitude, theta: &FrequencyResponse) -> Result<f64> {
    let mut pe = 0.0;
    for (k, _, s) in b.pairs() {
        let th = theta.eval(b.grid.bin_frequency(k))?;
        pe += s.norm_sqr() * cos_sin_squared(th).0;
    }
    Ok(pe.clamp(0.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarization {
    H,
    V,
}

impl fmt::Display for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarization::H => "H",
            Polarization::V => "V",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Consistent,
    CheatFlagged,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Consistent => "consistent",
            Verdict::CheatFlagged => "cheat_flagged",
        })
    }
}

/// Bob's check: an announced `0` needs equal outcomes, an announced `1` different ones.
pub fn bob_verdict(announced_bit: u8, alice: Polarization, bob: Polarization) -> Verdict {
    let equal = alice == bob;
    if (announced_bit == 0) == equal {
        Verdict::Consistent
    } else {
        Verdict::CheatFlagged
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProtocolTrialRecord {
    pub trial: u64,
    pub pair_k: usize,
    pub alice_outcome: Polarization,
    pub bob_outcome: Polarization,
    pub announced_bit: u8,
    pub bob_verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolRun {
    pub detection_rate: f64,
    pub records: Vec<ProtocolTrialRecord>,
}

/// Trials per independently seeded block; fixed so results do not depend on
/// the number of worker threads.
const TRIALS_PER_BLOCK: u64 = 4096;

/// Monte-Carlo commit/unveil runs.
///
/// Alice prepares the logical state of `committed_bit` (`|0_L⟩` correlated,
/// `|1_L⟩` anti-correlated). With `cheat` she applies the rotator and
/// announces the other bit. Each trial samples a pair `k` with probability
/// `|s_k|²`, then the joint H/V outcome. Trial blocks draw from separate
/// ChaCha streams of the same seed, so the run is reproducible per seed.
pub fn simulate_protocol(
    b: &BiphotonAmplitude,
    theta: &FrequencyResponse,
    committed_bit: u8,
    cheat: bool,
    trials: u64,
    seed: u64,
) -> Result<ProtocolRun> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    if committed_bit > 1 {
        return Err(Error::InvalidShape(format!(
            "committed bit must be 0 or 1, got {committed_bit}"
        )));
    }
    let ks: Vec<usize> = b.pairs().map(|(k, _, _)| k).collect();
    let mut cdf = Vec::with_capacity(ks.len());
    let mut same_prob = Vec::with_capacity(ks.len());
    let mut acc = 0.0;
    for &k in &ks {
        acc += b.pair(k).norm_sqr();
        cdf.push(acc);
        let p_same = if cheat {
            let (cos2, sin2) = cos_sin_squared(theta.eval(b.grid.bin_frequency(k))?);
            if committed_bit == 0 {
                cos2
            } else {
                sin2
            }
        } else if committed_bit == 0 {
            1.0
        } else {
            0.0
        };
        same_prob.push(p_same);
    }
    debug_assert!((acc - 1.0).abs() < NORMALIZATION_TOLERANCE);
    let announced_bit = committed_bit ^ u8::from(cheat);

    let blocks = trials.div_ceil(TRIALS_PER_BLOCK);
    let records: Vec<ProtocolTrialRecord> = (0..blocks)
        .into_par_iter()
        .flat_map_iter(|block| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(block);
            let start = block * TRIALS_PER_BLOCK;
            let end = (start + TRIALS_PER_BLOCK).min(trials);
            let (cdf, same_prob, ks) = (&cdf, &same_prob, &ks);
            (start..end)
                .map(move |trial| {
                    let u = rng.random::<f64>() * acc;
                    let idx = cdf.partition_point(|&c| c <= u).min(ks.len() - 1);
                    let alice = if rng.random::<bool>() {
                        Polarization::V
                    } else {
                        Polarization::H
                    };
                    let same = rng.random::<f64>() < same_prob[idx];
                    let bob = match (same, alice) {
                        (true, a) => a,
                        (false, Polarization::H) => Polarization::V,
                        (false, Polarization::V) => Polarization::H,
                    };
                    ProtocolTrialRecord {
                        trial,
                        pair_k: ks[idx],
                        alice_outcome: alice,
                        bob_outcome: bob,
                        announced_bit,
                        bob_verdict: bob_verdict(announced_bit, alice, bob),
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect();

    let flagged = records
        .iter()
        .filter(|r| r.bob_verdict == Verdict::CheatFlagged)
        .count();
    Ok(ProtocolRun {
        detection_rate: flagged as f64 / trials as f64,
        records,
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};

    use super::*;

    fn gaussian_pair(std: f64) -> BiphotonAmplitude {
        let grid = FrequencyGrid::new(1.0, 300).unwrap();
        let shape = SpectralShape::Gaussian { center: 0.0, std };
        make_bell_biphoton(&shape, 100.0, &grid).unwrap()
    }

    #[test]
    fn degenerate_pair() {
        let grid = FrequencyGrid::new(1.0, 20).unwrap();
        let shape = SpectralShape::Rectangular {
            low: -0.25,
            high: 0.25,
        };
        let b = make_bell_biphoton(&shape, 5.0, &grid).unwrap();
        assert_eq!(b.m_index(), 10);
        assert_eq!(b.pair(5), Complex64::new(1.0, 0.0));
        assert_eq!(b.pairs().filter(|(_, _, s)| s.norm() > 0.0).count(), 1);
        assert!(b.is_truncated());
    }

    #[test]
    fn symmetric_shape_gives_symmetric_pairs() {
        let b = gaussian_pair(7.0);
        let m = b.m_index();
        for (k, l, s) in b.pairs() {
            assert_eq!(l, m - k);
            assert!((s.norm() - b.pair(l).norm()).abs() < 1e-15);
        }
        assert!((b.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pairs_respect_grid_bounds() {
        let grid = FrequencyGrid::new(1.0, 10).unwrap();
        let shape = SpectralShape::Gaussian {
            center: 0.0,
            std: 20.0,
        };
        let b = make_bell_biphoton(&shape, 7.0, &grid).unwrap();
        let ks: Vec<usize> = b.pairs().map(|(k, _, _)| k).collect();
        assert_eq!(ks, (4..=10).collect::<Vec<_>>());
        for (k, l, _) in b.pairs() {
            assert!((1..=10).contains(&l) && k + l == 14);
        }
        assert!(b.is_truncated());
        assert!(BiphotonAmplitude::from_pairs(grid, 14, [(2, Complex64::new(1.0, 0.0))]).is_err());
    }

    #[test]
    fn incommensurate_carrier_rejected() {
        let grid = FrequencyGrid::new(1.0, 300).unwrap();
        let shape = SpectralShape::Gaussian {
            center: 0.0,
            std: 5.0,
        };
        let err = make_bell_biphoton(&shape, 99.75, &grid).unwrap_err();
        assert!(matches!(err, Error::Incommensurate { ratio } if ratio == 199.5));
        assert!(err.to_string().contains("incommensurate"));
    }

    #[test]
    fn rotator_special_angles() {
        let b = gaussian_pair(5.0);
        let h = FRAC_1_SQRT_2;
        let r = apply_rotator(&b, &FrequencyResponse::constant(0.0)).unwrap();
        for (k, c) in r.pairs() {
            let s = b.pair(*k);
            let want = [s * h, s * 0.0, s * 0.0, -s * h];
            for (got, want) in c.iter().zip(want) {
                assert!((got - want).norm() < 1e-15);
            }
        }
        let r = apply_rotator(&b, &FrequencyResponse::constant(FRAC_PI_2)).unwrap();
        for (k, c) in r.pairs() {
            let s = b.pair(*k);
            assert!(c[0].norm() < 1e-16 && c[3].norm() < 1e-16);
            assert!((c[1] - s * h).norm() < 1e-15 && (c[2] - s * h).norm() < 1e-15);
        }
        assert!((r.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pe_constant_angles() {
        let b = gaussian_pair(5.0);
        let pe = cheat_error_probability(&b, &FrequencyResponse::constant(FRAC_PI_2)).unwrap();
        assert_eq!(pe, 0.0);
        let pe = cheat_error_probability(&b, &FrequencyResponse::constant(FRAC_PI_3)).unwrap();
        assert!((pe - 0.25).abs() < 1e-12);
    }

    #[test]
    fn verdict_table() {
        use Polarization::*;
        assert_eq!(bob_verdict(0, H, H), Verdict::Consistent);
        assert_eq!(bob_verdict(0, H, V), Verdict::CheatFlagged);
        assert_eq!(bob_verdict(1, V, H), Verdict::Consistent);
        assert_eq!(bob_verdict(1, V, V), Verdict::CheatFlagged);
    }

    #[test]
    fn honest_runs_never_flag() {
        let b = gaussian_pair(5.0);
        let theta = FrequencyResponse::constant(FRAC_PI_3);
        for bit in [0, 1] {
            let run = simulate_protocol(&b, &theta, bit, false, 20_000, 3).unwrap();
            assert_eq!(run.detection_rate, 0.0);
            assert!(run.records.iter().all(|r| r.announced_bit == bit));
        }
    }

    #[test]
    fn ideal_not_gate_is_invisible() {
        let b = gaussian_pair(5.0);
        let run = simulate_protocol(
            &b,
            &FrequencyResponse::constant(FRAC_PI_2),
            0,
            true,
            20_000,
            9,
        )
        .unwrap();
        assert_eq!(run.detection_rate, 0.0);
        assert!(run.records.iter().all(|r| r.announced_bit == 1));
    }

    #[test]
    fn records_are_ordered_and_reproducible() {
        let b = gaussian_pair(5.0);
        let theta = FrequencyResponse::constant(FRAC_PI_3);
        let a = simulate_protocol(&b, &theta, 0, true, 10_000, 42).unwrap();
        let again = simulate_protocol(&b, &theta, 0, true, 10_000, 42).unwrap();
        assert_eq!(a, again);
        assert_eq!(a.records.len(), 10_000);
        assert!(a
            .records
            .iter()
            .enumerate()
            .all(|(i, r)| r.trial == i as u64));
        let other = simulate_protocol(&b, &theta, 0, true, 10_000, 43).unwrap();
        assert_ne!(a.records, other.records);
    }

    #[test]
    fn zero_trials_rejected() {
        let b = gaussian_pair(5.0);
        let theta = FrequencyResponse::constant(FRAC_PI_3);
        assert_eq!(
            simulate_protocol(&b, &theta, 0, true, 0, 1),
            Err(Error::NoTrials)
        );
    }
}
