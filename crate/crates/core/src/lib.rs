//! Simulation of a controlled quantum secret-sharing scheme built on symmetric
//! cloning.
//!
//! A dealer prepares a bipartite state in Schmidt form, runs each half through
//! a symmetric cloning machine, and distributes the four outputs. The crate
//! provides the pieces needed to analyse and simulate that scheme:
//!
//! * [`linalg`]: dense complex matrices, tensor products, partial traces and a
//!   Hermitian eigensolver, sized for a handful of qubits or qutrits;
//! * [`states`]: Schmidt-form preparation, Bell encoding of a classical bit
//!   and Werner-family decomposition;
//! * [`cloning`]: the cloning isometry, the closed-form reduced states of the
//!   output pairs and a brute-force oracle that checks them;
//! * [`entanglement`]: witness operators, concurrence, the partial-transpose
//!   criterion and the critical-concurrence threshold;
//! * [`protocol`]: the four-party secret-sharing protocol with its
//!   discrimination readout and seeded Monte Carlo trials.
//!
//! Closed-form expressions are never trusted on their own: every one of them
//! is backed by a test against the corresponding brute-force computation.

pub mod cloning;
pub mod entanglement;
pub mod linalg;
pub mod protocol;
pub mod states;

/// Default tolerance for structural checks: hermiticity, positivity and
/// closed-form-versus-oracle residuals.
pub const STRUCTURAL_TOL: f64 = 1e-10;

/// Default tolerance for norm, trace and other floating-point identity checks.
pub const NORM_TOL: f64 = 1e-12;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("subsystem dimensions {dims:?} do not multiply to matrix dimension {dim}")]
    SubsystemMismatch { dims: Vec<usize>, dim: usize },
    #[error("invalid subsystem selection: {0}")]
    InvalidSubsystems(String),
    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },
    #[error("eigensolver did not converge (off-diagonal norm {off_diagonal:.3e})")]
    NoConvergence { off_diagonal: f64 },
    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),
    #[error("invalid Schmidt spectrum: {0}")]
    InvalidSpectrum(String),
    #[error("cloning parameters violate c^2 + 2(k-1)d^2 = 1 (got {value})")]
    UnitarityViolation { value: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
