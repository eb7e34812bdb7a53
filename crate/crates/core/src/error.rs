use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiracError {
    #[error("mode index {0} outside 1..=4")]
    ModeOutOfRange(usize),
    #[error("spinor index {0} outside 1..=4")]
    SpinorIndexOutOfRange(usize),
    #[error("Lorentz index {0} outside 0..=3")]
    LorentzIndexOutOfRange(usize),
    #[error("invalid physical constant {name}: {value} (must be finite and > 0)")]
    InvalidConstant { name: &'static str, value: f64 },
    #[error("invalid wave vector: components must be finite")]
    InvalidWaveVector,
    #[error("invalid spacetime point: components must be finite")]
    InvalidPoint,
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("invalid quadrature specification: {0}")]
    InvalidQuadrature(String),
    #[error("state amplitudes not normalized at k = {k:?}: |psi|^2 = {norm_sq}")]
    NotNormalized { k: [f64; 3], norm_sq: f64 },
    #[error("quadrature not converged for {quantity}: change {delta:e} exceeds tolerance {tolerance:e}")]
    QuadratureNotConverged {
        quantity: String,
        delta: f64,
        tolerance: f64,
    },
    #[error("integral {quantity} unstable under cutoff doubling: change {delta:e} exceeds tolerance {tolerance:e}")]
    Diverged {
        quantity: String,
        delta: f64,
        tolerance: f64,
    },
    #[error("charge conjugation operator is ambiguous: null space of dimension {dimension}")]
    Ambiguous { dimension: usize },
    #[error("no charge conjugation operator: smallest singular value {smallest:e} above threshold")]
    NoSolution { smallest: f64 },
    #[error("operation requires a state of the form sqrt(1-rho)|0> + sqrt(rho)|s>")]
    NotRhoForm,
}

pub type Result<T> = std::result::Result<T, DiracError>;
