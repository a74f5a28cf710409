//! Shared inputs for the benchmark targets.

use std::f64::consts::PI;

/// Device phases covering the small-angle (high photon number) and
/// large-angle (single-photon) regimes.
pub const PHASES: [(&str, f64); 3] = [
    ("pi_12", PI / 12.0),
    ("pi_4", PI / 4.0),
    ("3pi_4", 3.0 * PI / 4.0),
];
