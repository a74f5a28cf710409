//! Beamsplitter scattering matrices and reduction of a device pair
//! {U1, U2} to the canonical form {I, U} with a single eigenphase delta.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance on || M^dag M - I || for the unitarity check.
pub const UNITARITY_TOL: f64 = 1e-10;

/// Tolerance on |det - 1| when extracting the +/- eigenphase pair.
pub const DETERMINANT_TOL: f64 = 1e-8;

/// The canonical device: a two-mode unitary, diagonal in the working basis,
/// with eigenvalues e^{+i delta} and e^{-i delta}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviceSpec {
    delta: f64,
}

impl DeviceSpec {
    /// Wraps a phase in the canonical range [0, pi].
    pub fn new(delta: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&delta) {
            return Err(Error::InvalidDelta { delta });
        }
        Ok(Self { delta })
    }

    /// The eigenphase delta.
    pub fn eigenphase(&self) -> f64 {
        self.delta
    }
}

/// A 2x2 complex matrix acting on the mode operators of a lossless
/// beamsplitter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringMatrix {
    entries: [[Complex64; 2]; 2],
}

impl ScatteringMatrix {
    pub fn new(entries: [[Complex64; 2]; 2]) -> Self {
        Self { entries }
    }

    /// Builds from four [re, im] pairs in row-major order, the on-disk format.
    pub fn from_row_major(pairs: &[[f64; 2]; 4]) -> Self {
        let e = |i: usize| Complex64::new(pairs[i][0], pairs[i][1]);
        Self::new([[e(0), e(1)], [e(2), e(3)]])
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self::new([[one, zero], [zero, one]])
    }

    /// Real rotation by `theta`; eigenvalues e^{+/- i theta}.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::new([
            [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
            [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
        ])
    }

    /// diag(e^{+i delta}, e^{-i delta}).
    pub fn phase_diag(delta: f64) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        Self::new([
            [Complex64::from_polar(1.0, delta), zero],
            [zero, Complex64::from_polar(1.0, -delta)],
        ])
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row][col]
    }

    pub fn adjoint(&self) -> Self {
        Self::new([
            [self.entries[0][0].conj(), self.entries[1][0].conj()],
            [self.entries[0][1].conj(), self.entries[1][1].conj()],
        ])
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.entries[i][0] * rhs.entries[0][j]
                    + self.entries[i][1] * rhs.entries[1][j];
            }
        }
        Self::new(out)
    }

    pub fn determinant(&self) -> Complex64 {
        self.entries[0][0] * self.entries[1][1] - self.entries[0][1] * self.entries[1][0]
    }

    pub fn trace(&self) -> Complex64 {
        self.entries[0][0] + self.entries[1][1]
    }

    /// Largest deviation of M^dag M from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        let gram = self.adjoint().mul(self);
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let expected = if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
                worst = worst.max((gram.entries[i][j] - expected).norm());
            }
        }
        worst
    }

    fn ensure_unitary(&self) -> Result<()> {
        let deviation = self.unitarity_deviation();
        if deviation > UNITARITY_TOL {
            return Err(Error::NotUnitary { deviation, tol: UNITARITY_TOL });
        }
        Ok(())
    }
}

/// Reduces the discrimination of {U1, U2} to {I, M} with M = U1^-1 U2 and
/// extracts the eigenphase delta from the spectrum {e^{+i delta}, e^{-i delta}}.
///
/// For a unit-determinant 2x2 unitary the trace is 2 cos(delta), so delta is
/// read off the characteristic polynomial directly; no iterative eigensolver
/// is involved. Matrices whose quotient has det != 1 carry a detectable
/// global phase and are rejected.
pub fn reduce_pair(u1: &ScatteringMatrix, u2: &ScatteringMatrix) -> Result<DeviceSpec> {
    u1.ensure_unitary()?;
    u2.ensure_unitary()?;
    let quotient = u1.adjoint().mul(u2);
    let det = quotient.determinant();
    if (det - Complex64::new(1.0, 0.0)).norm() > DETERMINANT_TOL {
        return Err(Error::NotUnitDeterminant { det_re: det.re, det_im: det.im });
    }
    let half_trace = (quotient.trace().re / 2.0).clamp(-1.0, 1.0);
    DeviceSpec::new(half_trace.acos())
}

/// Accessor mirroring [`DeviceSpec::eigenphase`] for call sites that hold the
/// spec by value.
pub fn eigenphase(dev: &DeviceSpec) -> f64 {
    dev.eigenphase()
}
