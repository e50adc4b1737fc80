//! Linear polarization transformations and the rotations they induce on
//! Stokes space.
//!
//! `U(alpha, beta, gamma) = exp(i alpha S_3) exp(i beta S_2) exp(i gamma S_3)`.
//! Because the Stokes operators carry the structure constant 2, each factor
//! turns the Stokes vector by twice its angle. With the north pole at
//! `|N, 0>` and `exp(i alpha S_3)` multiplying amplitude `n` by
//! `exp(i alpha (2n - N))`, the induced rotation is
//! `R = Rz(-2 alpha) Ry(-2 beta) Rz(-2 gamma)` in right-handed convention.

use nalgebra::DVector;
use num_complex::Complex64;
use serde::Serialize;

use crate::eigen3::mat_mul;
use crate::fockstate::TwoModeState;
use crate::stokes::stokes_set;
use crate::{Error, Mat3, Result};

/// Euler angles of `U = exp(i alpha S_3) exp(i beta S_2) exp(i gamma S_3)`, in
/// radians. Not range-reduced.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct EulerAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl EulerAngles {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        Self { alpha, beta, gamma }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn to_degrees(self) -> [f64; 3] {
        [self.alpha, self.beta, self.gamma].map(f64::to_degrees)
    }
}

/// `exp(i angle S_axis) |psi>` on raw amplitudes, `axis` in `1..=3`.
pub(crate) fn exp_i_stokes(
    n_photons: usize,
    amplitudes: &[Complex64],
    axis: usize,
    angle: f64,
) -> Result<Vec<Complex64>> {
    if axis == 3 {
        return Ok(amplitudes
            .iter()
            .enumerate()
            .map(|(n, c)| {
                c * Complex64::from_polar(1.0, angle * (2.0 * n as f64 - n_photons as f64))
            })
            .collect());
    }
    let set = stokes_set(n_photons)?;
    let spectrum = set.spectrum(axis);
    let psi = DVector::from_column_slice(amplitudes);
    let mut coords = spectrum.vectors.adjoint() * psi;
    for (c, &lambda) in coords.iter_mut().zip(&spectrum.values) {
        *c *= Complex64::from_polar(1.0, angle * lambda);
    }
    Ok((&spectrum.vectors * coords).iter().copied().collect())
}

/// Applies the polarization transformation with Euler angles `e`. The global
/// phase is left as produced by the unitary.
pub fn apply_rotation(state: &TwoModeState, e: &EulerAngles) -> Result<TwoModeState> {
    state.require_analysable()?;
    let n = state.n_photons();
    let amps = exp_i_stokes(n, state.amplitudes(), 3, e.gamma)?;
    let amps = exp_i_stokes(n, &amps, 2, e.beta)?;
    let amps = exp_i_stokes(n, &amps, 3, e.alpha)?;
    TwoModeState::normalized(n, &amps)
}

/// Turns the state so that its Stokes-space picture rotates right-handedly by
/// `angle` about Stokes axis `axis` (1, 2 or 3).
pub fn rotate_about_axis(state: &TwoModeState, axis: usize, angle: f64) -> Result<TwoModeState> {
    state.require_analysable()?;
    if !(1..=3).contains(&axis) {
        return Err(Error::OutOfRange {
            name: "axis",
            value: axis as f64,
            lo: 1.0,
            hi: 3.0,
        });
    }
    let amps = exp_i_stokes(state.n_photons(), state.amplitudes(), axis, -angle / 2.0)?;
    TwoModeState::normalized(state.n_photons(), &amps)
}

/// Right-handed rotation about the x axis.
pub fn rot_x(t: f64) -> Mat3 {
    let (s, c) = t.sin_cos();
    [[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]]
}

/// Right-handed rotation about the y axis.
pub fn rot_y(t: f64) -> Mat3 {
    let (s, c) = t.sin_cos();
    [[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]]
}

/// Right-handed rotation about the z axis.
pub fn rot_z(t: f64) -> Mat3 {
    let (s, c) = t.sin_cos();
    [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]
}

/// SO(3) rotation of Stokes vectors induced by `apply_rotation(_, e)`.
pub fn induced_so3(e: &EulerAngles) -> Mat3 {
    mat_mul(
        &mat_mul(&rot_z(-2.0 * e.alpha), &rot_y(-2.0 * e.beta)),
        &rot_z(-2.0 * e.gamma),
    )
}

/// Inverse of [`induced_so3`]: Euler angles whose induced rotation is `r`.
pub fn euler_from_so3(r: &Mat3) -> EulerAngles {
    // r = Rz(a) Ry(b) Rz(c) with (a, b, c) = -2 (alpha, beta, gamma)
    let b = r[2][2].clamp(-1.0, 1.0).acos();
    let (a, c) = if b.sin() > 1e-9 {
        (r[1][2].atan2(r[0][2]), r[2][1].atan2(-r[2][0]))
    } else if r[2][2] > 0.0 {
        (r[1][0].atan2(r[0][0]), 0.0)
    } else {
        ((-r[0][1]).atan2(-r[0][0]), 0.0)
    };
    EulerAngles::new(-a / 2.0, -b / 2.0, -c / 2.0)
}

/// Pair of Stokes axes whose variances are exchanged by a quarter turn about
/// the remaining axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisPair {
    S1S2,
    S2S3,
    S3S1,
}

impl AxisPair {
    /// Accepts either order of two distinct indices in `1..=3`.
    pub fn from_indices(a: u8, b: u8) -> Result<Self> {
        match (a.min(b), a.max(b)) {
            (1, 2) => Ok(Self::S1S2),
            (2, 3) => Ok(Self::S2S3),
            (1, 3) => Ok(Self::S3S1),
            _ => Err(Error::InvalidAxisPair(a, b)),
        }
    }

    /// Stokes axis left fixed by the swap.
    pub fn fixed_axis(self) -> usize {
        match self {
            Self::S1S2 => 3,
            Self::S2S3 => 1,
            Self::S3S1 => 2,
        }
    }
}

/// Rotates by a quarter turn about the third axis so the diagonal variances
/// of the named pair trade places.
pub fn permute_variances(state: &TwoModeState, which: AxisPair) -> Result<TwoModeState> {
    rotate_about_axis(state, which.fixed_axis(), std::f64::consts::FRAC_PI_2)
}
