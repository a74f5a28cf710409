//! Truncated two-mode Fock-space states: sparse amplitude tables,
//! normalization, energy, diagonal-unitary action, and overlaps.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::device::DeviceSpec;
use crate::error::{Error, Result};

/// Tolerance for the unit-norm check.
pub const NORM_TOL: f64 = 1e-12;

/// Default photon-number cutoff for states built without an explicit one.
pub const DEFAULT_CUTOFF: u32 = 64;

/// Occupation numbers |n, m> of the two modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FockIndex {
    /// Photons in mode 1.
    pub n: u32,
    /// Photons in mode 2.
    pub m: u32,
}

impl FockIndex {
    pub fn new(n: u32, m: u32) -> Self {
        Self { n, m }
    }

    /// Total photon number n + m.
    pub fn total(&self) -> u32 {
        self.n + self.m
    }

    /// Photon-number difference n - m between the modes.
    pub fn diff(&self) -> i64 {
        i64::from(self.n) - i64::from(self.m)
    }
}

/// A pure two-mode state as a sparse map from Fock indices to amplitudes.
///
/// Zero amplitudes are never stored, so two states are equal exactly when
/// their nonzero tables agree. States are not normalized on construction;
/// [`ProbeState::normalize`] produces the unit-norm representative.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeState {
    amplitudes: BTreeMap<FockIndex, Complex64>,
    cutoff: u32,
}

impl ProbeState {
    /// The vacuum |0, 0> with the default cutoff.
    pub fn vacuum() -> Self {
        let mut amplitudes = BTreeMap::new();
        amplitudes.insert(FockIndex::new(0, 0), Complex64::new(1.0, 0.0));
        Self { amplitudes, cutoff: DEFAULT_CUTOFF }
    }

    /// Builds a state from (index, amplitude) pairs. Duplicate indices are
    /// summed and exact zeros dropped. Fails if any index exceeds the cutoff.
    pub fn from_components<I>(components: I, cutoff: u32) -> Result<Self>
    where
        I: IntoIterator<Item = (FockIndex, Complex64)>,
    {
        let mut amplitudes: BTreeMap<FockIndex, Complex64> = BTreeMap::new();
        for (idx, amp) in components {
            if idx.total() > cutoff {
                return Err(Error::CutoffExceeded { n: idx.n, m: idx.m, cutoff });
            }
            *amplitudes.entry(idx).or_insert(Complex64::new(0.0, 0.0)) += amp;
        }
        amplitudes.retain(|_, a| a.re != 0.0 || a.im != 0.0);
        Ok(Self { amplitudes, cutoff })
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    /// Amplitude at the given index; zero if absent.
    pub fn amplitude(&self, idx: FockIndex) -> Complex64 {
        self.amplitudes.get(&idx).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FockIndex, &Complex64)> {
        self.amplitudes.iter()
    }

    pub fn component_count(&self) -> usize {
        self.amplitudes.len()
    }

    /// Sum of |c|^2 over all stored amplitudes.
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.values().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= NORM_TOL
    }

    /// Rescales by the single positive factor that makes the norm 1.
    pub fn normalize(&self) -> Result<Self> {
        let norm = self.norm_sqr().sqrt();
        if norm <= 0.0 {
            return Err(Error::ZeroState);
        }
        let amplitudes = self.amplitudes.iter().map(|(&k, &a)| (k, a / norm)).collect();
        Ok(Self { amplitudes, cutoff: self.cutoff })
    }

    /// Mean total photon number, sum of |c_nm|^2 (n + m).
    pub fn energy(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|(idx, a)| a.norm_sqr() * f64::from(idx.total()))
            .sum()
    }

    /// Applies the diagonal unitary with eigenphase pair (+delta, -delta):
    /// each amplitude c_nm picks up the phase e^{i delta (n - m)}.
    pub fn apply_device(&self, dev: &DeviceSpec) -> Self {
        let delta = dev.eigenphase();
        let amplitudes = self
            .amplitudes
            .iter()
            .map(|(&idx, &a)| {
                let phase = Complex64::from_polar(1.0, delta * idx.diff() as f64);
                (idx, a * phase)
            })
            .collect();
        Self { amplitudes, cutoff: self.cutoff }
    }

    /// Largest absolute amplitude difference against another state, treating
    /// absent entries as zero.
    pub fn max_amplitude_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for (&idx, &a) in &self.amplitudes {
            worst = worst.max((a - other.amplitude(idx)).norm());
        }
        for (&idx, &b) in &other.amplitudes {
            worst = worst.max((self.amplitude(idx) - b).norm());
        }
        worst
    }
}

/// Inner product <a|b> over the shared support.
pub fn overlap(a: &ProbeState, b: &ProbeState) -> Complex64 {
    a.iter()
        .map(|(idx, ca)| ca.conj() * b.amplitude(*idx))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn normalize_rescales_single_component() {
        let s = ProbeState::from_components([(FockIndex::new(0, 0), c(2.0, 0.0))], 4).unwrap();
        let n = s.normalize().unwrap();
        assert_eq!(n.amplitude(FockIndex::new(0, 0)), c(1.0, 0.0));
    }

    #[test]
    fn normalize_symmetric_pair() {
        let s = ProbeState::from_components(
            [(FockIndex::new(0, 1), c(1.0, 0.0)), (FockIndex::new(1, 0), c(1.0, 0.0))],
            4,
        )
        .unwrap();
        let n = s.normalize().unwrap();
        let expected = 1.0 / 2f64.sqrt();
        assert!((n.amplitude(FockIndex::new(0, 1)).re - expected).abs() < 1e-15);
        assert!((n.amplitude(FockIndex::new(1, 0)).re - expected).abs() < 1e-15);
        assert!(n.is_normalized());
    }

    #[test]
    fn normalize_rejects_zero_state() {
        let s = ProbeState::from_components([], 4).unwrap();
        assert_eq!(s.normalize().unwrap_err(), Error::ZeroState);
    }

    #[test]
    fn energy_of_vacuum_is_zero() {
        assert_eq!(ProbeState::vacuum().energy(), 0.0);
    }

    #[test]
    fn energy_of_noon_state_is_photon_number() {
        let a = 1.0 / 2f64.sqrt();
        let s = ProbeState::from_components(
            [(FockIndex::new(0, 3), c(a, 0.0)), (FockIndex::new(3, 0), c(a, 0.0))],
            3,
        )
        .unwrap();
        assert!((s.energy() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn energy_of_noon_vacuum_superposition() {
        // alpha^2 = 1 / (1 - cos(3 pi / 4)); three-photon NOON part plus vacuum.
        let alpha_sq = 1.0 / (1.0 - (3.0 * PI / 4.0).cos());
        let alpha = alpha_sq.sqrt();
        let s = ProbeState::from_components(
            [
                (FockIndex::new(0, 3), c(alpha / 2f64.sqrt(), 0.0)),
                (FockIndex::new(3, 0), c(alpha / 2f64.sqrt(), 0.0)),
                (FockIndex::new(0, 0), c((1.0 - alpha_sq).sqrt(), 0.0)),
            ],
            3,
        )
        .unwrap();
        assert!(s.is_normalized());
        assert!((s.energy() - 1.757359312880715).abs() < 1e-12);
    }

    #[test]
    fn apply_device_leaves_vacuum_unchanged() {
        let dev = DeviceSpec::new(1.234).unwrap();
        let v = ProbeState::vacuum();
        assert_eq!(v.apply_device(&dev), v);
    }

    #[test]
    fn apply_device_pi_flips_single_photon_pair() {
        let a = 1.0 / 2f64.sqrt();
        let s = ProbeState::from_components(
            [(FockIndex::new(0, 1), c(a, 0.0)), (FockIndex::new(1, 0), c(a, 0.0))],
            2,
        )
        .unwrap();
        let dev = DeviceSpec::new(PI).unwrap();
        let out = s.apply_device(&dev);
        assert!((out.amplitude(FockIndex::new(0, 1)) - c(-a, 0.0)).norm() < 1e-15);
        assert!((out.amplitude(FockIndex::new(1, 0)) - c(-a, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn apply_device_phases_by_photon_difference() {
        let s = ProbeState::from_components([(FockIndex::new(2, 1), c(1.0, 0.0))], 4).unwrap();
        let dev = DeviceSpec::new(PI / 4.0).unwrap();
        let out = s.apply_device(&dev);
        let expected = Complex64::from_polar(1.0, PI / 4.0);
        assert!((out.amplitude(FockIndex::new(2, 1)) - expected).norm() < 1e-15);
    }

    #[test]
    fn overlap_of_state_with_itself_is_one() {
        let s = ProbeState::from_components(
            [(FockIndex::new(0, 2), c(0.3, 0.4)), (FockIndex::new(1, 1), c(-0.5, 0.2))],
            4,
        )
        .unwrap()
        .normalize()
        .unwrap();
        let g = overlap(&s, &s);
        assert!((g - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn overlap_of_distinct_basis_states_is_zero() {
        let a = ProbeState::from_components([(FockIndex::new(0, 0), c(1.0, 0.0))], 4).unwrap();
        let b = ProbeState::from_components([(FockIndex::new(1, 0), c(1.0, 0.0))], 4).unwrap();
        assert_eq!(overlap(&a, &b), c(0.0, 0.0));
    }

    #[test]
    fn cutoff_violation_is_rejected() {
        let err = ProbeState::from_components([(FockIndex::new(3, 2), c(1.0, 0.0))], 4)
            .unwrap_err();
        assert_eq!(err, Error::CutoffExceeded { n: 3, m: 2, cutoff: 4 });
    }

    #[test]
    fn zero_amplitudes_are_pruned() {
        let s = ProbeState::from_components(
            [(FockIndex::new(0, 0), c(1.0, 0.0)), (FockIndex::new(1, 1), c(0.0, 0.0))],
            4,
        )
        .unwrap();
        assert_eq!(s.component_count(), 1);
        assert_eq!(s, ProbeState::from_components([(FockIndex::new(0, 0), c(1.0, 0.0))], 4).unwrap());
    }
}
