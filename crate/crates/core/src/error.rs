use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unnormalizable amplitude vector")]
    Unnormalizable,

    #[error("expected {expected} amplitudes, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("photon number must be at least {min}, got {got}")]
    PhotonNumber { min: usize, got: usize },

    #[error("photon number mismatch: {left} vs {right}")]
    PhotonNumberMismatch { left: usize, right: usize },

    #[error("uniform states undefined below N=3 (got N={0})")]
    UniformUndefined(usize),

    #[error("direction is not a unit vector (norm {0})")]
    NonUnitDirection(f64),

    #[error("invalid axis pair ({0},{1})")]
    InvalidAxisPair(u8, u8),

    #[error("{name} = {value} outside [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("resolution must be >= 2, got {0}")]
    Resolution(usize),

    #[error("parse error: {0}")]
    Parse(String),
}
