//! Brute-force search over probe-induced distributions, used to check that
//! the closed-form design is not beaten by anything it can reach.
//!
//! For a diagonal device the output overlap of any probe depends only on the
//! probability mass over the photon-number difference d = n - m, through
//! sum_d p_d e^{i delta d}, and the cheapest probe realizing mass p_d at
//! difference d costs p_d |d| photons (via |d, 0> or |0, |d|>). The search
//! therefore runs over weight vectors on d, a space of O(N) reals instead of
//! O(N^2) amplitudes. It is an upper-bound falsifier, not a certified global
//! optimizer: it hunts for feasible distributions cheaper than the closed
//! form and reports the least energy it finds.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::design::continuous_minimizer;
use crate::error::{Error, Result};
use crate::fock::ProbeState;

/// Slack on the overlap constraint |overlap| <= K when testing feasibility.
pub const FEASIBILITY_TOL: f64 = 1e-9;

/// Default seed for the random-sampling stage.
pub const DEFAULT_SEED: u64 = 0xC0FFEE;

/// Weight step of the deterministic two-sided support scan.
const WEIGHT_GRID: u32 = 1000;

/// Probability mass over the photon-number difference d = n - m.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalDistribution {
    weights: BTreeMap<i64, f64>,
}

impl DiagonalDistribution {
    /// Validates non-negativity and unit total mass (within 1e-12).
    pub fn new(weights: BTreeMap<i64, f64>) -> Result<Self> {
        let mut total = 0.0;
        for (&d, &w) in &weights {
            if w.is_nan() || w < 0.0 {
                return Err(Error::InvalidArgs {
                    reason: format!("weight {w} at difference {d} is negative"),
                });
            }
            total += w;
        }
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgs {
                reason: format!("weights sum to {total}, expected 1"),
            });
        }
        let mut weights = weights;
        weights.retain(|_, w| *w > 0.0);
        Ok(Self { weights })
    }

    /// The distribution a probe induces: p_d = sum of |c_nm|^2 over n - m = d.
    pub fn from_probe(probe: &ProbeState) -> Result<Self> {
        let mut weights: BTreeMap<i64, f64> = BTreeMap::new();
        for (idx, amp) in probe.iter() {
            *weights.entry(idx.diff()).or_insert(0.0) += amp.norm_sqr();
        }
        Self::new(weights)
    }

    pub fn weights(&self) -> &BTreeMap<i64, f64> {
        &self.weights
    }

    /// Output overlap under a device with eigenphase `delta`:
    /// sum_d p_d e^{i delta d}.
    pub fn overlap(&self, delta: f64) -> Complex64 {
        self.weights
            .iter()
            .map(|(&d, &w)| Complex64::from_polar(w, delta * d as f64))
            .sum()
    }

    /// Least probe energy realizing this distribution: sum_d p_d |d|.
    pub fn energy(&self) -> f64 {
        self.weights.iter().map(|(&d, &w)| w * d.unsigned_abs() as f64).sum()
    }
}

/// Least energy of any feasible distribution found by the three-stage search:
/// (a) symmetric supports {0, +n, -n} with the saturating weight solved
/// analytically, (b) a weight-grid scan over supports {0, +n, -m}, and
/// (c) seeded random sampling of small supports. Feasible means
/// |overlap| <= k + 1e-9.
pub fn brute_force_min_energy(
    delta: f64,
    k: f64,
    d_max: u32,
    samples: u64,
    seed: u64,
) -> Result<f64> {
    if !(delta > 0.0 && delta <= std::f64::consts::PI) {
        return Err(Error::InvalidDelta { delta });
    }
    if !(0.0..=1.0).contains(&k) {
        return Err(Error::InvalidArgs { reason: format!("threshold K = {k} outside [0, 1]") });
    }
    let required = continuous_minimizer(delta)?.ceil() as u32 + 3;
    if d_max < required {
        return Err(Error::InvalidArgs {
            reason: format!("d_max = {d_max} below the search floor {required}"),
        });
    }

    let feasible_sq = (k + FEASIBILITY_TOL) * (k + FEASIBILITY_TOL);

    // (a) Symmetric supports: overlap 1 - w (1 - cos(delta n)) is real, so the
    // cheapest feasible weight saturates at w = (1 - K) / (1 - cos(delta n)).
    let mut best = f64::INFINITY;
    for n in 1..=d_max {
        let denom = 1.0 - (delta * f64::from(n)).cos();
        if denom <= 1e-12 {
            continue;
        }
        let w = (1.0 - k) / denom;
        if w <= 1.0 {
            best = best.min(w * f64::from(n));
        }
    }

    // (b) Two-sided supports {0, +n, -m} on a weight grid, pruned by energy
    // against the bound from (a).
    let bound = best;
    let grid = f64::from(WEIGHT_GRID);
    let pair_best = (1..=d_max)
        .into_par_iter()
        .map(|n| {
            let z_plus = Complex64::from_polar(1.0, delta * f64::from(n));
            let mut local = bound;
            for m in 1..=d_max {
                let z_minus = Complex64::from_polar(1.0, -delta * f64::from(m));
                for i in 0..=WEIGHT_GRID {
                    let p_plus = f64::from(i) / grid;
                    if p_plus * f64::from(n) >= local {
                        break;
                    }
                    for j in 0..=(WEIGHT_GRID - i) {
                        let energy =
                            (f64::from(i) * f64::from(n) + f64::from(j) * f64::from(m)) / grid;
                        if energy >= local {
                            break;
                        }
                        let p_minus = f64::from(j) / grid;
                        let p_zero = f64::from(WEIGHT_GRID - i - j) / grid;
                        let overlap = Complex64::new(p_zero, 0.0)
                            + z_plus * p_plus
                            + z_minus * p_minus;
                        if overlap.norm_sqr() <= feasible_sq {
                            local = energy;
                            break;
                        }
                    }
                }
            }
            local
        })
        .reduce(|| bound, f64::min);
    best = best.min(pair_best);

    // (c) Seeded random distributions over small supports, rejecting
    // infeasible draws.
    let span = i64::from(d_max);
    let phases: Vec<Complex64> = (-span..=span)
        .map(|d| Complex64::from_polar(1.0, delta * d as f64))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut support: Vec<i64> = Vec::with_capacity(5);
    let mut weights: Vec<f64> = Vec::with_capacity(5);
    for _ in 0..samples {
        let size = rng.random_range(1..=5usize);
        support.clear();
        while support.len() < size {
            let d = rng.random_range(-span..=span);
            if !support.contains(&d) {
                support.push(d);
            }
        }
        weights.clear();
        let mut total = 0.0;
        for _ in 0..size {
            let w = -(1.0 - rng.random::<f64>()).ln();
            weights.push(w);
            total += w;
        }
        if total <= 0.0 {
            continue;
        }
        let mut overlap = Complex64::new(0.0, 0.0);
        let mut energy = 0.0;
        for (&d, &w) in support.iter().zip(&weights) {
            let p = w / total;
            overlap += phases[(d + span) as usize] * p;
            energy += p * d.unsigned_abs() as f64;
        }
        if energy < best && overlap.norm_sqr() <= feasible_sq {
            best = energy;
        }
    }

    Ok(best)
}
