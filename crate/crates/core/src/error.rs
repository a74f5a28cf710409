use thiserror::Error;

/// Errors produced by probe design, device reduction, and verification.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// All amplitudes are zero; the state cannot be normalized.
    #[error("cannot normalize a state with zero norm")]
    ZeroState,

    /// A Fock component lies beyond the state's photon-number cutoff.
    #[error("component |{n},{m}> exceeds cutoff N_max = {cutoff}")]
    CutoffExceeded { n: u32, m: u32, cutoff: u32 },

    /// A scattering matrix failed the unitarity check.
    #[error("matrix is not unitary (deviation {deviation:.3e} > {tol:.3e})")]
    NotUnitary { deviation: f64, tol: f64 },

    /// The reduced device U1^-1 U2 does not have a {e^{+i d}, e^{-i d}} spectrum.
    #[error("reduced device determinant {det_re}{det_im:+}i is not 1; eigenphases are not a +/- pair")]
    NotUnitDeterminant { det_re: f64, det_im: f64 },

    /// An overlap magnitude exceeded 1 by more than the admissible drift.
    #[error("overlap magnitude {magnitude} exceeds 1 beyond tolerance")]
    InvalidOverlap { magnitude: f64 },

    /// The requested error/failure threshold is outside the mode's range.
    #[error("threshold q = {q} outside valid range [0, {max}]")]
    InvalidThreshold { q: f64, max: f64 },

    /// The device phase is outside (0, pi].
    #[error("device phase delta = {delta} outside (0, pi]")]
    InvalidDelta { delta: f64 },

    /// cos(delta * n) = 1: the device acts as the identity on this component
    /// pair, so no finite-energy probe at this photon number works.
    #[error("degenerate phase: cos(delta * {n}) = 1, component acquires no relative phase")]
    DegeneratePhase { n: u32 },

    /// No candidate photon number admits a probe meeting the constraint.
    #[error("no feasible probe among the candidate photon numbers")]
    Infeasible,

    /// Invalid arguments to a search or sweep routine.
    #[error("invalid arguments: {reason}")]
    InvalidArgs { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
