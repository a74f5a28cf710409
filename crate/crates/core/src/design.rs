//! Construction of the minimum-energy probe: a NOON state superposed with
//! the vacuum, with the photon number picked from the two integers around
//! the real-valued minimizer of the candidate energy curve.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::device::DeviceSpec;
use crate::discrimination::ReadingTask;
use crate::error::{Error, Result};
use crate::fock::{overlap, FockIndex, ProbeState};

/// A component pair acquires no relative phase when 1 - cos(delta n) falls
/// below this; the required energy diverges there.
pub const PHASE_DEGENERACY_TOL: f64 = 1e-12;

/// The designed probe together with its achieved performance.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignResult {
    /// Photon number of the NOON component.
    pub n_star: u32,
    /// Weight of the NOON component; the vacuum carries sqrt(1 - alpha^2).
    pub alpha: f64,
    /// The probe state alpha (|0,n> + |n,0>)/sqrt(2) + sqrt(1-alpha^2) |0,0>.
    pub probe: ProbeState,
    /// Mean photon number alpha^2 n_star.
    pub energy: f64,
    /// Overlap between the two device outputs; equals the threshold K.
    pub achieved_overlap: f64,
    /// Error (ambiguous) or failure (unambiguous) probability at the overlap.
    pub achieved_probability: f64,
    /// The task the probe was designed for.
    pub task: ReadingTask,
    /// The device eigenphase.
    pub delta: f64,
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta <= PI) {
        return Err(Error::InvalidDelta { delta });
    }
    Ok(())
}

/// Smallest strictly positive x with delta * x = tan(delta * x / 2): the
/// stationary point of the candidate energy over real-valued photon number.
///
/// Substituting t = delta * x / 2 reduces the equation to tan(t) = 2t, whose
/// first positive root lies in (1.0, 1.5) independently of delta; bisection
/// on that bracket avoids the tangent's pole.
pub fn continuous_minimizer(delta: f64) -> Result<f64> {
    check_delta(delta)?;
    let f = |t: f64| t.tan() - 2.0 * t;
    let (mut lo, mut hi) = (1.0_f64, 1.5_f64);
    debug_assert!(f(lo) < 0.0 && f(hi) > 0.0);
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((lo + hi) / delta)
}

/// Energy n (1 - K) / (1 - cos(delta n)) of the NOON-plus-vacuum probe that
/// saturates overlap K at photon number n.
pub fn candidate_energy(n: u32, delta: f64, k: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgs { reason: "photon number must be >= 1".into() });
    }
    if !(0.0..=1.0).contains(&k) {
        return Err(Error::InvalidArgs { reason: format!("threshold K = {k} outside [0, 1]") });
    }
    let denom = 1.0 - (delta * f64::from(n)).cos();
    if denom <= PHASE_DEGENERACY_TOL {
        return Err(Error::DegeneratePhase { n });
    }
    Ok(f64::from(n) * (1.0 - k) / denom)
}

/// Designs the minimum-energy probe for reading a device with eigenphase
/// `delta` under the task's error/failure budget.
///
/// The two integer candidates around the continuous minimizer are compared;
/// candidates that are phase-degenerate or cannot reach the overlap
/// constraint with a physical weight (alpha > 1) are skipped. Ties go to the
/// smaller photon number. At K = 1 the weight formula yields alpha = 0 and
/// the probe degenerates to the vacuum.
pub fn design_probe(delta: f64, task: ReadingTask) -> Result<DesignResult> {
    check_delta(delta)?;
    let k = task.threshold_k();
    let x_star = continuous_minimizer(delta)?;

    let floor = (x_star.floor() as u32).max(1);
    let ceil = x_star.ceil() as u32;
    let mut candidates = vec![floor];
    if ceil != floor {
        candidates.push(ceil);
    }

    let mut best: Option<(u32, f64, f64)> = None;
    for n in candidates {
        let denom = 1.0 - (delta * f64::from(n)).cos();
        if denom <= PHASE_DEGENERACY_TOL {
            continue;
        }
        // alpha^2 = (1 - K) / denom must not exceed 1, or the constraint is
        // out of reach at this photon number.
        if 1.0 - k > denom * (1.0 + 1e-12) {
            continue;
        }
        let energy = f64::from(n) * (1.0 - k) / denom;
        if best.is_none_or(|(_, e, _)| energy < e) {
            best = Some((n, energy, denom));
        }
    }
    let (n_star, energy, denom) = best.ok_or(Error::Infeasible)?;

    let alpha = ((1.0 - k) / denom).min(1.0).sqrt();
    let vacuum_amp = (1.0 - alpha * alpha).max(0.0).sqrt();
    let noon_amp = alpha / 2.0_f64.sqrt();
    let probe = ProbeState::from_components(
        [
            (FockIndex::new(0, 0), Complex64::new(vacuum_amp, 0.0)),
            (FockIndex::new(0, n_star), Complex64::new(noon_amp, 0.0)),
            (FockIndex::new(n_star, 0), Complex64::new(noon_amp, 0.0)),
        ],
        n_star,
    )?;
    debug_assert!(probe.is_normalized());

    let dev = DeviceSpec::new(delta)?;
    let gamma = overlap(&probe, &probe.apply_device(&dev));
    debug_assert!(gamma.im.abs() < 1e-12 && gamma.re >= -1e-12);
    let achieved_probability = task.probability(gamma)?;

    Ok(DesignResult {
        n_star,
        alpha,
        probe,
        energy,
        achieved_overlap: gamma.re,
        achieved_probability,
        task,
        delta,
    })
}

/// Recomputes the achieved error/failure probability from the stored probe,
/// closing the loop through the state algebra rather than the design
/// formulas.
pub fn achieved_performance(result: &DesignResult) -> f64 {
    let dev = DeviceSpec::new(result.delta).expect("design result holds a valid phase");
    let gamma = overlap(&result.probe, &result.probe.apply_device(&dev));
    result
        .task
        .probability(gamma)
        .expect("overlap of normalized states stays within the unit disc")
}
