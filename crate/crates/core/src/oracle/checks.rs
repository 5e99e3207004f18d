use num_complex::Complex64;

use super::{
    apply_beam_splitter, apply_phase, apply_polarization_reflection, check_capacity,
    inject_photon_pair, inject_single_photon, FockState, ModeLabel, Port,
};
use crate::devices::{balanced_bs_angle, FrequencyResponse};
use crate::interference::OutputProbabilities;
use crate::qbc::{BiphotonAmplitude, Polarization};
use crate::spectral::SpectralAmplitude;
use crate::Result;

/// Full propagation through a balanced Mach-Zehnder interferometer.
///
/// Output `a` is the port that receives the photon when both arm phases are
/// equal; with the symmetric splitter convention this is the spatial mode
/// opposite to the input port.
pub fn oracle_mzi(
    s: &SpectralAmplitude,
    phi_a: &FrequencyResponse,
    phi_b: &FrequencyResponse,
) -> Result<OutputProbabilities> {
    let out = mzi_state(s, phi_a, phi_b)?;
    Ok(OutputProbabilities {
        p_a: out.probability(|o| o.count_in(Port::B) == 1),
        p_b: out.probability(|o| o.count_in(Port::A) == 1),
    })
}

/// Evolved single-photon state after the interferometer (input in port A).
pub fn mzi_state(
    s: &SpectralAmplitude,
    phi_a: &FrequencyResponse,
    phi_b: &FrequencyResponse,
) -> Result<FockState> {
    check_capacity(s.grid())?;
    let bs = balanced_bs_angle();
    let st = inject_single_photon(s, Port::A);
    let st = apply_beam_splitter(&st, &bs)?;
    let st = apply_phase(&st, Port::A, phi_a)?;
    let st = apply_phase(&st, Port::B, phi_b)?;
    apply_beam_splitter(&st, &bs)
}

/// Per-bin output amplitudes `(amp_a, amp_b)` read off the evolved state,
/// using the same port labelling as [`oracle_mzi`].
pub fn mzi_bin_amplitudes(
    s: &SpectralAmplitude,
    phi_a: &FrequencyResponse,
    phi_b: &FrequencyResponse,
) -> Result<Vec<(Complex64, Complex64)>> {
    let out = mzi_state(s, phi_a, phi_b)?;
    let single = |mode| super::Occupation(vec![mode]);
    Ok((1..=s.grid().n_bins())
        .map(|k| {
            (
                out.amplitude(&single(ModeLabel::h(Port::B, k))),
                out.amplitude(&single(ModeLabel::h(Port::A, k))),
            )
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomOracle {
    /// Coincidence probability of the fully evolved two-photon state.
    pub p_coin_full: f64,
    /// The per-pair coincidence sum evaluated by explicit double summation.
    pub p_coin_paper: f64,
}

/// Two single photons, `s` in port A and `t` in port B, on one beam splitter.
pub fn oracle_hom(
    s: &SpectralAmplitude,
    t: &SpectralAmplitude,
    theta: &FrequencyResponse,
) -> Result<HomOracle> {
    check_capacity(s.grid())?;
    let st = inject_photon_pair(s, Port::A, t, Port::B)?;
    let out = apply_beam_splitter(&st, theta)?;
    let p_coin_full = out.probability(|o| o.count_in(Port::A) >= 1 && o.count_in(Port::B) >= 1);

    let grid = s.grid();
    let angles = theta.on_grid(grid)?;
    let n = grid.n_bins();
    let mut p_coin_paper = 0.0;
    for k in 1..=n {
        let (ck, sk) = (angles[k - 1].cos(), angles[k - 1].sin());
        for l in 1..=n {
            let weight = (s.bin(k) * t.bin(l)).norm_sqr();
            if k == l {
                p_coin_paper += weight * (2.0 * angles[k - 1]).cos().powi(2);
            } else {
                let (cl, sl) = (angles[l - 1].cos(), angles[l - 1].sin());
                p_coin_paper += weight * (ck * ck * cl * cl + sk * sk * sl * sl);
            }
        }
    }
    Ok(HomOracle {
        p_coin_full,
        p_coin_paper,
    })
}

/// Builds the polarization-entangled pair state with Alice's photons in port A
/// and Bob's in port B, applies Alice's rotator and sums the equal-outcome
/// projectors.
pub fn oracle_qbc(b: &BiphotonAmplitude, theta: &FrequencyResponse) -> Result<f64> {
    let grid = b.grid();
    check_capacity(grid)?;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut monomials = Vec::new();
    for (k, l, s) in b.pairs() {
        if s == Complex64::new(0.0, 0.0) {
            continue;
        }
        for pol in [Polarization::H, Polarization::V] {
            monomials.push((
                vec![
                    ModeLabel::new(Port::A, k, pol),
                    ModeLabel::new(Port::B, l, pol),
                ],
                s * h,
            ));
        }
    }
    let st = FockState::from_creation_polynomial(*grid, monomials)?;
    let out = apply_polarization_reflection(&st, Port::A, theta)?;
    Ok(out.probability(|o| {
        let alice = o.modes().iter().find(|m| m.spatial == Port::A);
        let bob = o.modes().iter().find(|m| m.spatial == Port::B);
        matches!((alice, bob), (Some(a), Some(b)) if a.polarization == b.polarization)
    }))
}
