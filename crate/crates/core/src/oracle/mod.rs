//! Brute-force multimode Fock-space simulator for at most two photons.
//!
//! Modes are labelled by spatial port, frequency bin and polarization. A state
//! is a sparse map from canonical occupation configurations to amplitudes.
//! Passive linear optics acts on creation operators, `a†_m → Σ_n U_{nm} a†_n`;
//! the evolution is carried out on the creation-operator polynomial and the
//! `√(Π n_i!)` Fock normalization is applied on the way in and out.
//!
//! Nothing here reuses the closed forms of [`crate::interference`] or
//! [`crate::qbc`]; the functions in [`checks`] rebuild every probability from
//! the evolved state.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::devices::FrequencyResponse;
use crate::qbc::Polarization;
use crate::spectral::{FrequencyGrid, SpectralAmplitude};
use crate::{Error, Result};

mod checks;
pub mod random;
pub mod suite;

pub use checks::{mzi_bin_amplitudes, mzi_state, oracle_hom, oracle_mzi, oracle_qbc, HomOracle};

/// Largest grid the oracle accepts.
pub const ORACLE_MAX_BINS: usize = 64;

/// Maximum total photon number of any configuration.
pub const MAX_PHOTONS: usize = 2;

/// Unitarity tolerance on `Σ|amplitude|²`.
pub const NORM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Port {
    A,
    B,
}

impl Port {
    pub fn other(self) -> Port {
        match self {
            Port::A => Port::B,
            Port::B => Port::A,
        }
    }
}

/// One bosonic mode. The derived ordering (spatial, bin, polarization) is the
/// canonical order used to key configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeLabel {
    pub spatial: Port,
    pub bin: usize,
    pub polarization: Polarization,
}

impl ModeLabel {
    pub fn new(spatial: Port, bin: usize, polarization: Polarization) -> Self {
        Self {
            spatial,
            bin,
            polarization,
        }
    }

    /// Horizontally polarized mode, the default for interference scenarios.
    pub fn h(spatial: Port, bin: usize) -> Self {
        Self::new(spatial, bin, Polarization::H)
    }
}

impl fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}{}", self.spatial, self.bin, self.polarization)
    }
}

/// Occupation configuration: the sorted multiset of occupied modes.
/// A doubly occupied mode appears twice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Occupation(Vec<ModeLabel>);

impl Occupation {
    pub fn vacuum() -> Self {
        Occupation(Vec::new())
    }

    pub fn new(modes: impl IntoIterator<Item = ModeLabel>) -> Result<Self> {
        let mut modes: Vec<ModeLabel> = modes.into_iter().collect();
        if modes.len() > MAX_PHOTONS {
            return Err(Error::InvalidState(format!(
                "{} photons exceeds the cap of {MAX_PHOTONS}",
                modes.len()
            )));
        }
        modes.sort_unstable();
        Ok(Occupation(modes))
    }

    pub fn modes(&self) -> &[ModeLabel] {
        &self.0
    }

    pub fn photon_count(&self) -> usize {
        self.0.len()
    }

    pub fn count_in(&self, port: Port) -> usize {
        self.0.iter().filter(|m| m.spatial == port).count()
    }

    /// Occupation number of `mode`.
    pub fn occupation_of(&self, mode: &ModeLabel) -> usize {
        self.0.iter().filter(|m| *m == mode).count()
    }

    /// `Π_m n_m!`
    fn factorial_product(&self) -> f64 {
        // with at most two photons only a doubly occupied mode contributes
        if self.0.len() == 2 && self.0[0] == self.0[1] {
            2.0
        } else {
            1.0
        }
    }
}

/// Sparse state vector over occupation configurations.
#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    grid: FrequencyGrid,
    terms: BTreeMap<Occupation, Complex64>,
}

impl FockState {
    /// Builds a state from normalized-Fock-basis amplitudes; checks bins,
    /// photon cap and unit norm.
    pub fn new(
        grid: FrequencyGrid,
        terms: impl IntoIterator<Item = (Occupation, Complex64)>,
    ) -> Result<Self> {
        let st = Self::collect(grid, terms)?;
        let norm = st.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidState(format!("norm {norm} is not 1")));
        }
        Ok(st)
    }

    /// As [`FockState::new`] but rescales to unit norm.
    pub fn normalized(
        grid: FrequencyGrid,
        terms: impl IntoIterator<Item = (Occupation, Complex64)>,
    ) -> Result<Self> {
        let mut st = Self::collect(grid, terms)?;
        let norm = st.norm_sqr();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::InvalidState("state has zero norm".into()));
        }
        let scale = norm.sqrt().recip();
        st.terms.values_mut().for_each(|a| *a *= scale);
        Ok(st)
    }

    /// Builds `P(a†)|0⟩` for a polynomial given as monomials (lists of
    /// created modes) with coefficients, then normalizes.
    pub fn from_creation_polynomial(
        grid: FrequencyGrid,
        monomials: impl IntoIterator<Item = (Vec<ModeLabel>, Complex64)>,
    ) -> Result<Self> {
        let mut poly: BTreeMap<Occupation, Complex64> = BTreeMap::new();
        for (modes, coeff) in monomials {
            *poly.entry(Occupation::new(modes)?).or_default() += coeff;
        }
        let terms = poly
            .into_iter()
            .map(|(occ, coeff)| {
                let amp = coeff * occ.factorial_product().sqrt();
                (occ, amp)
            })
            .collect::<Vec<_>>();
        Self::normalized(grid, terms)
    }

    fn collect(
        grid: FrequencyGrid,
        terms: impl IntoIterator<Item = (Occupation, Complex64)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<Occupation, Complex64> = BTreeMap::new();
        for (occ, amp) in terms {
            if let Some(m) = occ
                .modes()
                .iter()
                .find(|m| m.bin == 0 || m.bin > grid.n_bins())
            {
                return Err(Error::InvalidState(format!(
                    "mode {m} is outside a grid of {} bins",
                    grid.n_bins()
                )));
            }
            if !(amp.re.is_finite() && amp.im.is_finite()) {
                return Err(Error::InvalidState("non-finite amplitude".into()));
            }
            *map.entry(occ).or_default() += amp;
        }
        Ok(Self { grid, terms: map })
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Occupation, &Complex64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn amplitude(&self, occ: &Occupation) -> Complex64 {
        self.terms.get(occ).copied().unwrap_or_default()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.terms.values().map(|a| a.norm_sqr()).sum()
    }

    /// Total probability of configurations matching `pred`.
    pub fn probability(&self, pred: impl Fn(&Occupation) -> bool) -> f64 {
        self.terms
            .iter()
            .filter(|(occ, _)| pred(occ))
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// Applies a linear map on creation operators, `a†_m → Σ (n, u) u·a†_n`.
    fn map_modes<F>(&self, image: F) -> FockState
    where
        F: Fn(&ModeLabel) -> Vec<(ModeLabel, Complex64)>,
    {
        let mut out: BTreeMap<Occupation, Complex64> = BTreeMap::new();
        for (occ, amp) in &self.terms {
            let coeff = amp / occ.factorial_product().sqrt();
            match occ.modes() {
                [] => *out.entry(Occupation::vacuum()).or_default() += coeff,
                [m] => {
                    for (n, u) in image(m) {
                        *out.entry(Occupation(vec![n])).or_default() += coeff * u;
                    }
                }
                [m1, m2] => {
                    let second = image(m2);
                    for (n1, u1) in image(m1) {
                        for (n2, u2) in &second {
                            let key = if n1 <= *n2 {
                                vec![n1, *n2]
                            } else {
                                vec![*n2, n1]
                            };
                            *out.entry(Occupation(key)).or_default() += coeff * u1 * u2;
                        }
                    }
                }
                _ => unreachable!("photon cap enforced at construction"),
            }
        }
        // exact zeros come from vanishing matrix elements or full cancellation
        let terms = out
            .into_iter()
            .filter(|(_, c)| *c != Complex64::new(0.0, 0.0))
            .map(|(occ, c)| {
                let amp = c * occ.factorial_product().sqrt();
                (occ, amp)
            })
            .collect();
        FockState {
            grid: self.grid,
            terms,
        }
    }
}

/// `Σ_k c_k |1⟩_{(spatial, k, H)}`.
pub fn inject_single_photon(s: &SpectralAmplitude, spatial: Port) -> FockState {
    let terms = s
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, c)| (Occupation(vec![ModeLabel::h(spatial, i + 1)]), *c))
        .collect();
    FockState {
        grid: *s.grid(),
        terms,
    }
}

/// Two single photons `a†(s)·a†(t)|0⟩`, renormalized.
pub fn inject_photon_pair(
    s: &SpectralAmplitude,
    port_s: Port,
    t: &SpectralAmplitude,
    port_t: Port,
) -> Result<FockState> {
    if s.grid() != t.grid() {
        return Err(Error::GridMismatch);
    }
    let mut monomials = Vec::with_capacity(s.amplitudes().len() * t.amplitudes().len());
    for (i, c) in s.amplitudes().iter().enumerate() {
        for (j, d) in t.amplitudes().iter().enumerate() {
            let product = c * d;
            if product != Complex64::new(0.0, 0.0) {
                monomials.push((
                    vec![ModeLabel::h(port_s, i + 1), ModeLabel::h(port_t, j + 1)],
                    product,
                ));
            }
        }
    }
    FockState::from_creation_polynomial(*s.grid(), monomials)
}

fn check_capacity(grid: &FrequencyGrid) -> Result<()> {
    if grid.n_bins() > ORACLE_MAX_BINS {
        return Err(Error::OracleCapacity {
            bins: grid.n_bins(),
            limit: ORACLE_MAX_BINS,
        });
    }
    Ok(())
}

/// Beam splitter with transmittance `cos θ(kω_s)` and reflectance `i·sin θ(kω_s)`:
/// `a†_k → cos θ_k a†_k + i sin θ_k b†_k`, `b†_k → i sin θ_k a†_k + cos θ_k b†_k`.
pub fn apply_beam_splitter(st: &FockState, theta: &FrequencyResponse) -> Result<FockState> {
    let angles = theta.on_grid(&st.grid)?;
    Ok(st.map_modes(|m| {
        let th = angles[m.bin - 1];
        let t = Complex64::new(th.cos(), 0.0);
        let r = Complex64::new(0.0, th.sin());
        let same = *m;
        let crossed = ModeLabel {
            spatial: m.spatial.other(),
            ..*m
        };
        vec![(same, t), (crossed, r)]
    }))
}

/// Phase `e^{iφ(kω_s)}` per photon in the modes of `spatial`. Diagonal in the
/// Fock basis, so it is applied to each configuration directly.
pub fn apply_phase(st: &FockState, spatial: Port, phi: &FrequencyResponse) -> Result<FockState> {
    let phases = phi.on_grid(&st.grid)?;
    let terms = st
        .terms
        .iter()
        .map(|(occ, amp)| {
            let total: f64 = occ
                .modes()
                .iter()
                .filter(|m| m.spatial == spatial)
                .map(|m| phases[m.bin - 1])
                .sum();
            let amp = if total == 0.0 {
                *amp
            } else {
                amp * Complex64::from_polar(1.0, total)
            };
            (occ.clone(), amp)
        })
        .collect();
    Ok(FockState {
        grid: st.grid,
        terms,
    })
}

/// Polarization map `[[cos θ, sin θ], [sin θ, −cos θ]]` on every mode of
/// `spatial`: `H → cos θ H + sin θ V`, `V → sin θ H − cos θ V`.
pub fn apply_polarization_reflection(
    st: &FockState,
    spatial: Port,
    theta: &FrequencyResponse,
) -> Result<FockState> {
    let angles = theta.on_grid(&st.grid)?;
    let one = Complex64::new(1.0, 0.0);
    Ok(st.map_modes(|m| {
        if m.spatial != spatial {
            return vec![(*m, one)];
        }
        let th = angles[m.bin - 1];
        let (c, s) = (Complex64::new(th.cos(), 0.0), Complex64::new(th.sin(), 0.0));
        let h = ModeLabel {
            polarization: Polarization::H,
            ..*m
        };
        let v = ModeLabel {
            polarization: Polarization::V,
            ..*m
        };
        match m.polarization {
            Polarization::H => vec![(h, c), (v, s)],
            Polarization::V => vec![(h, s), (v, -c)],
        }
    }))
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI};

    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn grid(n: usize) -> FrequencyGrid {
        FrequencyGrid::new(1.0, n).unwrap()
    }

    fn occ(modes: &[ModeLabel]) -> Occupation {
        Occupation::new(modes.iter().copied()).unwrap()
    }

    #[test]
    fn single_photon_injection() {
        let g = grid(1);
        let s = SpectralAmplitude::new(g, vec![c(1.0)]).unwrap();
        let st = inject_single_photon(&s, Port::A);
        assert_eq!(st.len(), 1);
        assert_eq!(st.amplitude(&occ(&[ModeLabel::h(Port::A, 1)])), c(1.0));

        let g = grid(2);
        let s = SpectralAmplitude::new(g, vec![c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2)]).unwrap();
        let st = inject_single_photon(&s, Port::B);
        assert_eq!(st.len(), 2);
        for k in 1..=2 {
            assert_eq!(
                st.amplitude(&occ(&[ModeLabel::h(Port::B, k)])),
                c(FRAC_1_SQRT_2)
            );
        }
    }

    #[test]
    fn beam_splitter_single_photon() {
        let g = grid(3);
        let theta = 0.3_f64;
        let st = FockState::new(g, [(occ(&[ModeLabel::h(Port::A, 2)]), c(1.0))]).unwrap();
        let out = apply_beam_splitter(&st, &FrequencyResponse::constant(theta)).unwrap();
        assert_eq!(
            out.amplitude(&occ(&[ModeLabel::h(Port::A, 2)])),
            c(theta.cos())
        );
        assert_eq!(
            out.amplitude(&occ(&[ModeLabel::h(Port::B, 2)])),
            Complex64::new(0.0, theta.sin())
        );
    }

    #[test]
    fn beam_splitter_same_bin_pair() {
        let g = grid(2);
        let theta = 0.37_f64;
        let a = ModeLabel::h(Port::A, 1);
        let b = ModeLabel::h(Port::B, 1);
        let st = FockState::new(g, [(occ(&[a, b]), c(1.0))]).unwrap();
        let out = apply_beam_splitter(&st, &FrequencyResponse::constant(theta)).unwrap();
        let two_a = out.amplitude(&occ(&[a, a]));
        let two_b = out.amplitude(&occ(&[b, b]));
        let one_one = out.amplitude(&occ(&[a, b]));
        let s2 = (2.0 * theta).sin().abs();
        assert!((two_a.norm() - s2 / 2f64.sqrt()).abs() < 1e-15);
        assert!((two_b.norm() - s2 / 2f64.sqrt()).abs() < 1e-15);
        assert!((one_one.norm_sqr() - (2.0 * theta).cos().powi(2)).abs() < 1e-15);
        assert!((out.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn balanced_pair_bunches() {
        let g = grid(1);
        let a = ModeLabel::h(Port::A, 1);
        let b = ModeLabel::h(Port::B, 1);
        let st = FockState::new(g, [(occ(&[a, b]), c(1.0))]).unwrap();
        let out = apply_beam_splitter(&st, &FrequencyResponse::constant(FRAC_PI_4)).unwrap();
        assert!(out.amplitude(&occ(&[a, b])).norm() < 1e-15);
    }

    #[test]
    fn zero_angle_splitter_is_identity() {
        let g = grid(2);
        let st = FockState::normalized(
            g,
            [
                (
                    occ(&[ModeLabel::h(Port::A, 1), ModeLabel::h(Port::B, 2)]),
                    c(0.6),
                ),
                (occ(&[ModeLabel::h(Port::A, 2)]), Complex64::new(0.0, 0.8)),
            ],
        )
        .unwrap();
        let out = apply_beam_splitter(&st, &FrequencyResponse::constant(0.0)).unwrap();
        for (o, a) in st.terms() {
            assert_eq!(out.amplitude(o), *a);
        }
        assert!((out.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn two_balanced_splitters_swap_ports() {
        let g = grid(1);
        let st = FockState::new(g, [(occ(&[ModeLabel::h(Port::A, 1)]), c(1.0))]).unwrap();
        let bs = FrequencyResponse::constant(FRAC_PI_4);
        let out = apply_beam_splitter(&apply_beam_splitter(&st, &bs).unwrap(), &bs).unwrap();
        let crossed = out.amplitude(&occ(&[ModeLabel::h(Port::B, 1)]));
        assert!((crossed.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn phases() {
        let g = grid(2);
        let a1 = ModeLabel::h(Port::A, 1);
        let st = FockState::new(g, [(occ(&[a1]), Complex64::new(0.6, 0.8))]).unwrap();
        let same = apply_phase(&st, Port::A, &FrequencyResponse::constant(0.0)).unwrap();
        assert_eq!(same, st);
        let neg = apply_phase(&st, Port::A, &FrequencyResponse::constant(PI)).unwrap();
        assert!((neg.amplitude(&occ(&[a1])) + Complex64::new(0.6, 0.8)).norm() < 1e-15);
        let untouched = apply_phase(&st, Port::B, &FrequencyResponse::constant(PI)).unwrap();
        assert_eq!(untouched, st);

        let double = FockState::new(g, [(occ(&[a1, a1]), c(1.0))]).unwrap();
        let out = apply_phase(&double, Port::A, &FrequencyResponse::constant(FRAC_PI_2)).unwrap();
        assert!((out.amplitude(&occ(&[a1, a1])) - c(-1.0)).norm() < 1e-15);
    }

    #[test]
    fn polarization_reflection_is_not_at_half_pi() {
        let g = grid(1);
        let h = ModeLabel::h(Port::A, 1);
        let v = ModeLabel::new(Port::A, 1, Polarization::V);
        let st = FockState::new(g, [(occ(&[h]), c(1.0))]).unwrap();
        let out =
            apply_polarization_reflection(&st, Port::A, &FrequencyResponse::constant(FRAC_PI_2))
                .unwrap();
        assert!((out.amplitude(&occ(&[v])) - c(1.0)).norm() < 1e-15);
        assert!(out.amplitude(&occ(&[h])).norm() < 1e-16);
    }

    #[test]
    fn pair_injection_normalization() {
        let g = grid(2);
        let s = SpectralAmplitude::new(g, vec![c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2)]).unwrap();
        let st = inject_photon_pair(&s, Port::A, &s, Port::B).unwrap();
        assert_eq!(st.len(), 4);
        assert!((st.norm_sqr() - 1.0).abs() < 1e-15);
        // both photons in one port: a†(s)² / ‖·‖ puts weight on doubly occupied modes
        let same = inject_photon_pair(&s, Port::A, &s, Port::A).unwrap();
        assert!((same.norm_sqr() - 1.0).abs() < 1e-15);
        let a1 = ModeLabel::h(Port::A, 1);
        assert!((same.amplitude(&occ(&[a1, a1])).norm_sqr() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn state_validation() {
        let g = grid(2);
        let a = ModeLabel::h(Port::A, 1);
        assert!(Occupation::new([a, a, a]).is_err());
        assert!(FockState::new(g, [(occ(&[ModeLabel::h(Port::A, 3)]), c(1.0))]).is_err());
        assert!(FockState::new(g, [(occ(&[a]), c(0.5))]).is_err());
        assert!(FockState::normalized(g, [(occ(&[a]), c(0.0))]).is_err());
        assert!(FockState::new(g, [(Occupation::vacuum(), c(1.0))]).is_ok());
    }
}
