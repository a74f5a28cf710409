//! Closed-form figures of merit for discriminating two equiprobable pure
//! hypotheses, and the map from an error/failure budget q to the maximum
//! admissible output overlap K.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Overlap magnitudes may exceed 1 by at most this much (floating-point
/// drift from state algebra) before being treated as invalid.
pub const OVERLAP_DRIFT_TOL: f64 = 1e-9;

/// Discrimination mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Minimum-error discrimination: every outcome yields a decision,
    /// with error probability P_e.
    Ambiguous,
    /// Error-free discrimination with an inconclusive outcome of
    /// probability P_f.
    Unambiguous,
}

impl Mode {
    /// Largest admissible threshold q for this mode.
    pub fn max_threshold(&self) -> f64 {
        match self {
            Mode::Ambiguous => 0.5,
            Mode::Unambiguous => 1.0,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Ambiguous => "ambiguous",
            Mode::Unambiguous => "unambiguous",
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ambiguous" => Ok(Mode::Ambiguous),
            "unambiguous" => Ok(Mode::Unambiguous),
            other => Err(Error::InvalidArgs { reason: format!("unknown mode `{other}`") }),
        }
    }
}

/// A reading task: the discrimination mode plus the probability budget q.
///
/// Priors are equal by construction; only q and the mode enter the formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReadingTask {
    mode: Mode,
    q: f64,
}

impl ReadingTask {
    pub fn new(mode: Mode, q: f64) -> Result<Self> {
        let max = mode.max_threshold();
        if !(0.0..=max).contains(&q) || !q.is_finite() {
            return Err(Error::InvalidThreshold { q, max });
        }
        Ok(Self { mode, q })
    }

    pub fn ambiguous(q: f64) -> Result<Self> {
        Self::new(Mode::Ambiguous, q)
    }

    pub fn unambiguous(q: f64) -> Result<Self> {
        Self::new(Mode::Unambiguous, q)
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// The largest output-overlap magnitude K compatible with the budget:
    /// sqrt(4 q (1 - q)) in ambiguous mode, q in unambiguous mode.
    pub fn threshold_k(&self) -> f64 {
        match self.mode {
            Mode::Ambiguous => (4.0 * self.q * (1.0 - self.q)).sqrt(),
            Mode::Unambiguous => self.q,
        }
    }

    /// The figure of merit for a given output overlap, per the task's mode.
    pub fn probability(&self, gamma: Complex64) -> Result<f64> {
        match self.mode {
            Mode::Ambiguous => error_probability(gamma),
            Mode::Unambiguous => failure_probability(gamma),
        }
    }
}

fn clamped_magnitude(gamma: Complex64) -> Result<f64> {
    let magnitude = gamma.norm();
    if magnitude > 1.0 + OVERLAP_DRIFT_TOL {
        return Err(Error::InvalidOverlap { magnitude });
    }
    Ok(magnitude.min(1.0))
}

/// Minimum error probability for two equiprobable pure states with overlap
/// `gamma`: (1 - sqrt(1 - |gamma|^2)) / 2.
pub fn error_probability(gamma: Complex64) -> Result<f64> {
    let g = clamped_magnitude(gamma)?;
    Ok(0.5 * (1.0 - (1.0 - g * g).max(0.0).sqrt()))
}

/// Failure probability of unambiguous discrimination for two equiprobable
/// pure states with overlap `gamma`: |gamma|.
pub fn failure_probability(gamma: Complex64) -> Result<f64> {
    clamped_magnitude(gamma)
}
