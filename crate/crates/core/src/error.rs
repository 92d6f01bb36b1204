use alloc::string::String;

use num_complex::Complex64;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("non-finite entry in {0}")]
    NonFinite(&'static str),
    #[error("matrix is not unitary (residual {residual:e})")]
    NotUnitary { residual: f64 },
    #[error("relation is not self-adjoint")]
    NotSelfAdjoint,
    #[error("parameter pair is not normalized (M^{{A,B}} is not invertible)")]
    NotNormalized,
    #[error("parameter pair violates AB* = BA*")]
    NotHermitianPair,
    #[error("parameter pairs describe different relations")]
    RelationMismatch,
    #[error("{what} is singular (smallest singular value {sigma_min:e})")]
    Singular { what: &'static str, sigma_min: f64 },
    #[error("z = {z} lies in the spectrum of the extension (spectral indicator {indicator:e})")]
    InSpectrum { z: Complex64, indicator: f64 },
    #[error("z = {z} is not an eigenvalue (spectral indicator {indicator:e} above threshold {threshold:e})")]
    NotEigenvalue { z: f64, indicator: f64, threshold: f64 },
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("z = {z} is not below the reference spectrum threshold {threshold}")]
    ReferenceSpectrum { z: f64, threshold: f64 },
    #[error("scan grid needs at least 2 points, got {0}")]
    GridTooSmall(usize),
    #[error("capability not supported by this model: {0}")]
    Unsupported(&'static str),
    #[error("quadrature did not converge (error estimate {error:e})")]
    Quadrature { error: f64 },
    #[error("interaction point {index}: transfer matrix is not unimodular (alpha*delta - beta*gamma = {det})")]
    Unimodularity { index: usize, det: f64 },
    #[error("interaction point {index}: theta = {theta} outside [0, pi]")]
    ThetaRange { index: usize, theta: f64 },
    #[error("interaction positions must be strictly increasing (point {index})")]
    PositionsNotIncreasing { index: usize },
    #[error("at least one interaction point required")]
    EmptyModel,
    #[error("boundary dimension {0} too large for coordinate-subspace search (max 16)")]
    DimensionTooLarge(usize),
    #[error("no coordinate subspace admits an injective projection; relation is not Lagrangian")]
    NoCoordinateChart,
    #[error("invalid Robin problem: {0}")]
    InvalidProblem(String),
}
