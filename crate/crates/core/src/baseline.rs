//! Coherent-probe reference strategies: homodyne detection on the optimal
//! quadrature, and the Helstrom bound on the coherent outputs.
//!
//! Quadratures use the vacuum-variance-1/2 convention. The two device
//! outputs |b1, b2> and |e^{i delta} b1, e^{-i delta} b2> sit a phase-space
//! distance D apart with D^2 = 4 E sin^2(delta/2), independent of how the
//! energy E is split between the modes. Homodyning along the separation with
//! a midpoint threshold gives P_e = erfc(D / sqrt(2)) / 2.

use std::f64::consts::PI;

use crate::discrimination::error_probability;
use crate::error::{Error, Result};
use num_complex::Complex64;

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta <= PI) {
        return Err(Error::InvalidDelta { delta });
    }
    Ok(())
}

fn check_energy(energy: f64) -> Result<()> {
    if energy.is_nan() || energy < 0.0 {
        return Err(Error::InvalidArgs { reason: format!("energy {energy} must be >= 0") });
    }
    Ok(())
}

/// Error probability of a coherent probe of mean photon number `energy`
/// read out by homodyne detection: erfc(sqrt(2 E) sin(delta/2)) / 2.
pub fn coherent_homodyne_error(energy: f64, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    check_energy(energy)?;
    Ok(0.5 * libm::erfc((2.0 * energy).sqrt() * (delta / 2.0).sin()))
}

/// Helstrom error probability on the coherent outputs, whose overlap is
/// exp(-2 E sin^2(delta/2)). Lower-bounds every measurement on the same
/// probe, homodyne included.
pub fn coherent_helstrom_error(energy: f64, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    check_energy(energy)?;
    let gamma = (-2.0 * energy * (delta / 2.0).sin().powi(2)).exp();
    error_probability(Complex64::new(gamma, 0.0))
}

/// Energy a coherent-homodyne reader needs to reach error probability `q`,
/// found by bisection on the monotone error curve.
pub fn coherent_energy_for_error(q: f64, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    if !(q > 0.0 && q < 0.5) {
        return Err(Error::InvalidThreshold { q, max: 0.5 });
    }
    let error_at = |e: f64| 0.5 * libm::erfc((2.0 * e).sqrt() * (delta / 2.0).sin());

    let mut lo = 0.0_f64;
    let mut hi = 1.0_f64;
    while error_at(hi) > q {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if error_at(mid) > q {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-14 * hi.max(1.0) {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Energy a coherent probe needs so that the Helstrom bound on its outputs
/// reaches error probability `q`: -ln K / (2 sin^2(delta/2)) with
/// K = sqrt(4 q (1 - q)).
pub fn coherent_helstrom_energy_for_error(q: f64, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    if !(q > 0.0 && q < 0.5) {
        return Err(Error::InvalidThreshold { q, max: 0.5 });
    }
    let k = (4.0 * q * (1.0 - q)).sqrt();
    Ok(-k.ln() / (2.0 * (delta / 2.0).sin().powi(2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_energy_is_a_coin_flip() {
        assert_eq!(coherent_homodyne_error(0.0, PI / 4.0).unwrap(), 0.5);
        assert_eq!(coherent_helstrom_error(0.0, PI / 4.0).unwrap(), 0.5);
    }

    #[test]
    fn homodyne_error_at_the_reference_point() {
        let p = coherent_homodyne_error(1.757359, PI / 4.0).unwrap();
        assert!((p - 0.1551454604096477).abs() < 1e-12);
    }

    #[test]
    fn homodyne_error_decreases_with_energy() {
        let mut last = 0.5;
        for i in 1..60 {
            let e = f64::from(i) * 0.5;
            let p = coherent_homodyne_error(e, PI / 12.0).unwrap();
            assert!(p < last);
            assert!(p > 0.0);
            last = p;
        }
        assert!(coherent_homodyne_error(1e4, PI / 4.0).unwrap() < 1e-12);
    }

    #[test]
    fn helstrom_error_at_the_reference_point() {
        let p = coherent_helstrom_error(1.0, PI).unwrap();
        assert!((p - 0.004600070369588713).abs() < 1e-12);
    }

    #[test]
    fn helstrom_never_exceeds_homodyne() {
        for &delta in &[PI / 12.0, PI / 4.0, PI / 2.0, PI] {
            for i in 0..50 {
                let e = f64::from(i) * 0.3;
                let hel = coherent_helstrom_error(e, delta).unwrap();
                let hom = coherent_homodyne_error(e, delta).unwrap();
                assert!(hel <= hom + 1e-15, "E = {e}, delta = {delta}");
            }
        }
    }

    #[test]
    fn energy_inverse_at_the_reference_point() {
        let e = coherent_energy_for_error(1e-3, PI / 12.0).unwrap();
        assert!((e - 140.12864680295315).abs() < 1e-6);
    }

    #[test]
    fn energy_inverse_roundtrips() {
        for &delta in &[PI / 12.0, PI / 4.0, PI] {
            for &q in &[1e-6, 1e-4, 0.01, 0.1, 0.3, 0.49, 0.4999] {
                let e = coherent_energy_for_error(q, delta).unwrap();
                let p = coherent_homodyne_error(e, delta).unwrap();
                assert!((p - q).abs() < 1e-10, "q = {q}, delta = {delta}");
            }
        }
    }

    #[test]
    fn energy_inverse_vanishes_near_the_cap() {
        let e = coherent_energy_for_error(0.5 - 1e-9, PI / 4.0).unwrap();
        assert!(e < 1e-6);
    }

    #[test]
    fn helstrom_energy_inverse_roundtrips() {
        for &q in &[1e-4, 0.01, 0.2, 0.45] {
            let e = coherent_helstrom_energy_for_error(q, PI / 4.0).unwrap();
            let p = coherent_helstrom_error(e, PI / 4.0).unwrap();
            assert!((p - q).abs() < 1e-10, "q = {q}");
        }
    }

    #[test]
    fn coherent_cost_dwarfs_the_designed_probe_at_small_budgets() {
        use crate::design::design_probe;
        use crate::discrimination::ReadingTask;

        let delta = PI / 12.0;
        let q = 1e-3;
        let coherent = coherent_energy_for_error(q, delta).unwrap();
        let designed = design_probe(delta, ReadingTask::ambiguous(q).unwrap()).unwrap().energy;
        assert!((designed - 4.938809212324621).abs() < 1e-12);
        assert!(coherent / designed > 25.0);
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        assert!(coherent_homodyne_error(1.0, 0.0).is_err());
        assert!(coherent_homodyne_error(1.0, PI + 0.1).is_err());
        assert!(coherent_homodyne_error(-1.0, PI / 4.0).is_err());
        assert!(coherent_energy_for_error(0.0, PI / 4.0).is_err());
        assert!(coherent_energy_for_error(0.5, PI / 4.0).is_err());
    }
}
