use thiserror::Error;

/// Errors raised by state construction, evolution and the analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum JcmError {
    /// Probability mass in the top of the truncated Fock space exceeds the tolerance.
    #[error("truncation too small: tail mass {tail_mass:.3e} >= {tolerance:.1e} at dim {dim} (try dim {suggested_dim})")]
    Truncation {
        dim: usize,
        tail_mass: f64,
        tolerance: f64,
        suggested_dim: usize,
    },

    /// The superposition vanishes identically (e.g. odd cat with zero displacement).
    #[error("degenerate superposition: normalization bracket {bracket:.3e} is not positive")]
    Degenerate { bracket: f64 },

    /// Mandel Q is undefined for a field with no photons.
    #[error("mean photon number {mean:.3e} too small for Mandel Q")]
    Vacuum { mean: f64 },

    #[error("quadrature did not converge: integrand tail {tail:.3e} at |zeta| = {limit}")]
    Quadrature { tail: f64, limit: f64 },

    #[error("no root: splitting condition has no real solution ({0})")]
    NoRoot(String),

    #[error("pole: m = {m} coincides with alpha^2 = {alpha_sq}")]
    Pole { m: usize, alpha_sq: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("config error at line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for JcmError {
    fn from(e: std::io::Error) -> Self {
        JcmError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, JcmError>;
