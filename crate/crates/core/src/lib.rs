//! Second-order polarization statistics of pure two-mode N-photon states.
//!
//! States live in a fixed excitation manifold spanned by `|n, N-n>` where `n`
//! counts photons in the right-circular mode. On that manifold the crate
//! provides the Stokes operator matrices, the 3x3 Stokes covariance matrix and
//! its principal variances, the invariant uncertainty bounds, SU(2)
//! polarization transformations, the Majorana constellation of a state, and
//! orbit sweeps that map out the permissible variance volumes for N = 2 and
//! N = 3.

pub mod eigen3;
mod error;
pub mod fockstate;
pub mod hull;
pub mod majorana;
pub mod orbits;
pub mod poly;
pub mod stokes;
pub mod su2rot;
pub mod textfmt;

pub use error::{Error, Result};
pub use fockstate::{EtaBranch, TwoModeState};
pub use majorana::{MajoranaConstellation, OrbitRelation, SpherePoint};
pub use orbits::{PolygonKind, VariancePointCloud, VariancePolygon};
pub use stokes::{
    BoundsReport, CovarianceMatrix, PrincipalVariances, StokesSet, UncertaintyBounds,
};
pub use su2rot::{AxisPair, EulerAngles};

/// Real 3-vector in Stokes space.
pub type Vec3 = [f64; 3];
/// Row-major real 3x3 matrix.
pub type Mat3 = [[f64; 3]; 3];
