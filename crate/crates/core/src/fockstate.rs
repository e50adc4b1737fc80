//! Pure two-mode states with a fixed total photon number.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::{Error, Result};

/// Amplitudes below this (relative to the unit norm) are treated as zero when
/// fixing the global phase.
const PHASE_ZERO_TOL: f64 = 1e-12;

/// Pure state `sum_n c_n |n, N-n>` on the N-photon manifold.
///
/// Index `n` counts photons in the right-circular mode R, so `amplitudes[N]`
/// multiplies `|N, 0>`, the north pole of the Poincare sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeState {
    n_photons: usize,
    amplitudes: Vec<Complex64>,
}

/// Sign choice for the uniform-variance `eta_N` states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EtaBranch {
    Plus,
    Minus,
}

impl TwoModeState {
    /// Normalizes `raw` and fixes the global phase so that the first nonzero
    /// amplitude is real and non-negative.
    pub fn from_amplitudes(n_photons: usize, raw: &[Complex64]) -> Result<Self> {
        let mut state = Self::normalized(n_photons, raw)?;
        state.fix_phase();
        Ok(state)
    }

    /// Real-amplitude convenience wrapper around [`TwoModeState::from_amplitudes`].
    pub fn from_real(n_photons: usize, raw: &[f64]) -> Result<Self> {
        let raw: Vec<Complex64> = raw.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_amplitudes(n_photons, &raw)
    }

    /// Normalizes without touching the global phase.
    pub(crate) fn normalized(n_photons: usize, raw: &[Complex64]) -> Result<Self> {
        if raw.len() != n_photons + 1 {
            return Err(Error::LengthMismatch {
                expected: n_photons + 1,
                got: raw.len(),
            });
        }
        let norm = raw.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm.is_nan() || norm <= 0.0 || norm.is_infinite() {
            return Err(Error::Unnormalizable);
        }
        Ok(Self {
            n_photons,
            amplitudes: raw.iter().map(|c| c / norm).collect(),
        })
    }

    fn fix_phase(&mut self) {
        if let Some(lead) = self.amplitudes.iter().find(|c| c.norm() > PHASE_ZERO_TOL) {
            let phase = lead.conj() / lead.norm();
            for c in &mut self.amplitudes {
                *c *= phase;
            }
        }
    }

    /// SU(2) coherent state with all Majorana points at `(theta, phi)`.
    ///
    /// `theta = 0` gives `|N, 0>`.
    pub fn su2_coherent(n_photons: usize, theta: f64, phi: f64) -> Result<Self> {
        require_photons(n_photons, 1)?;
        let (s, c) = (theta / 2.0).sin_cos();
        let lower = Complex64::from_polar(s, phi);
        let raw: Vec<Complex64> = (0..=n_photons)
            .map(|n| {
                let weight = binomial(n_photons, n).sqrt();
                lower.powu((n_photons - n) as u32) * (weight * c.powi(n as i32))
            })
            .collect();
        Self::from_amplitudes(n_photons, &raw)
    }

    /// `(|N,0> + |0,N>)/sqrt(2)`.
    pub fn noon(n_photons: usize) -> Result<Self> {
        require_photons(n_photons, 1)?;
        let mut raw = vec![Complex64::new(0.0, 0.0); n_photons + 1];
        raw[0] = Complex64::new(1.0, 0.0);
        raw[n_photons] = Complex64::new(1.0, 0.0);
        Self::from_amplitudes(n_photons, &raw)
    }

    /// `eta |N,0> + sqrt(1 - eta^2) |0,N>` with
    /// `eta^2 = (1 +- sqrt((N-1)/N)) / 2`; isotropic variance `N` in every
    /// direction.
    pub fn eta(n_photons: usize, branch: EtaBranch) -> Result<Self> {
        if n_photons < 3 {
            return Err(Error::UniformUndefined(n_photons));
        }
        let root = ((n_photons - 1) as f64 / n_photons as f64).sqrt();
        let eta_sq = match branch {
            EtaBranch::Plus => 0.5 * (1.0 + root),
            EtaBranch::Minus => 0.5 * (1.0 - root),
        };
        let mut raw = vec![Complex64::new(0.0, 0.0); n_photons + 1];
        raw[n_photons] = Complex64::new(eta_sq.sqrt(), 0.0);
        raw[0] = Complex64::new((1.0 - eta_sq).sqrt(), 0.0);
        Self::from_amplitudes(n_photons, &raw)
    }

    /// Number state `|n_r, N - n_r>`.
    pub fn fock(n_photons: usize, n_r: usize) -> Result<Self> {
        if n_r > n_photons {
            return Err(Error::OutOfRange {
                name: "n_r",
                value: n_r as f64,
                lo: 0.0,
                hi: n_photons as f64,
            });
        }
        let mut raw = vec![Complex64::new(0.0, 0.0); n_photons + 1];
        raw[n_r] = Complex64::new(1.0, 0.0);
        Self::from_amplitudes(n_photons, &raw)
    }

    pub fn n_photons(&self) -> usize {
        self.n_photons
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `<self|other>`.
    pub fn overlap(&self, other: &Self) -> Result<Complex64> {
        if self.n_photons != other.n_photons {
            return Err(Error::PhotonNumberMismatch {
                left: self.n_photons,
                right: other.n_photons,
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|<self|other>|^2`.
    pub fn fidelity(&self, other: &Self) -> Result<f64> {
        self.overlap(other).map(|o| o.norm_sqr())
    }

    /// Rejects the vacuum manifold for analysis operations.
    pub(crate) fn require_analysable(&self) -> Result<()> {
        require_photons(self.n_photons, 1)
    }
}

/// `<a|b>`; free-function form of [`TwoModeState::overlap`].
pub fn overlap(a: &TwoModeState, b: &TwoModeState) -> Result<Complex64> {
    a.overlap(b)
}

pub(crate) fn require_photons(n_photons: usize, min: usize) -> Result<()> {
    if n_photons < min {
        Err(Error::PhotonNumber {
            min,
            got: n_photons,
        })
    } else {
        Ok(())
    }
}

/// Binomial coefficient `C(n, k)` as a float. Exact integer arithmetic up to
/// `n = 20`, log-gamma above.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    if n <= 20 {
        let k = k.min(n - k) as u64;
        let n = n as u64;
        let mut acc: u64 = 1;
        for i in 0..k {
            // Each partial product is itself a binomial coefficient, so the
            // division is exact.
            acc = acc * (n - i) / (i + 1);
        }
        acc as f64
    } else {
        let ln = libm::lgamma(n as f64 + 1.0)
            - libm::lgamma(k as f64 + 1.0)
            - libm::lgamma((n - k) as f64 + 1.0);
        let value = ln.exp();
        // Below 2^53 binomials are integers; snap onto them.
        if value < 9.0e15 {
            value.round()
        } else {
            value
        }
    }
}

impl fmt::Display for TwoModeState {
    /// `N; re0,im0; re1,im1; ...` with 17 significant digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.n_photons)?;
        for c in &self.amplitudes {
            write!(f, "; {:.16e},{:.16e}", c.re, c.im)?;
        }
        Ok(())
    }
}

impl FromStr for TwoModeState {
    type Err = Error;

    /// Parses the `N; re0,im0; ...` text form. The amplitudes are normalized
    /// on the way in.
    fn from_str(s: &str) -> Result<Self> {
        let mut fields = s.split(';').map(str::trim);
        let head = fields.next().unwrap_or_default();
        let n_photons: usize = head
            .parse()
            .map_err(|_| Error::Parse(format!("bad photon number {head:?}")))?;
        let raw = fields
            .map(|field| {
                let (re, im) = field
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("expected re,im but got {field:?}")))?;
                let parse = |t: &str| {
                    t.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::Parse(format!("bad number {t:?}")))
                };
                Ok(Complex64::new(parse(re)?, parse(im)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_amplitudes(n_photons, &raw)
    }
}
