//! Minimum-energy quantum probes for reading unitary optical memories.
//!
//! A lossless beamsplitter pair {U1, U2} reduces to {I, U} with U diagonal
//! and eigenvalues e^{+/- i delta}. This crate designs the cheapest two-mode
//! probe (a NOON state superposed with the vacuum) that discriminates the
//! two devices within a given error or failure budget, evaluates the
//! coherent-probe/homodyne reference strategy, and cross-checks optimality
//! with a brute-force search over probe-induced distributions.
//!
//! ```
//! use std::f64::consts::PI;
//! use qread::{design_probe, ReadingTask};
//!
//! let task = ReadingTask::ambiguous(0.0).unwrap();
//! let result = design_probe(PI / 4.0, task).unwrap();
//! assert_eq!(result.n_star, 3);
//! assert!(result.energy < 1.76);
//! ```

pub mod baseline;
pub mod design;
pub mod device;
pub mod discrimination;
pub mod error;
pub mod fock;
pub mod oracle;

pub use baseline::{
    coherent_energy_for_error, coherent_helstrom_energy_for_error, coherent_helstrom_error,
    coherent_homodyne_error,
};
pub use design::{achieved_performance, candidate_energy, continuous_minimizer, design_probe, DesignResult};
pub use device::{reduce_pair, DeviceSpec, ScatteringMatrix};
pub use discrimination::{error_probability, failure_probability, Mode, ReadingTask};
pub use error::{Error, Result};
pub use fock::{overlap, FockIndex, ProbeState};
pub use oracle::{brute_force_min_energy, DiagonalDistribution, DEFAULT_SEED};
