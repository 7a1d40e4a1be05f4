use thiserror::Error;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: String, actual: String },

    #[error("matrix of {entries} entries exceeds the supported maximum of {max}")]
    DimensionOverflow { entries: usize, max: usize },

    #[error("local dimension {0} is outside the supported range 1..={max}", max = crate::matrix::MAX_LOCAL_DIM)]
    UnsupportedDimension(usize),

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("index ({i}, {j}) out of range for local dimension {n}")]
    IndexOutOfRange { i: usize, j: usize, n: usize },

    #[error("pair ({i}, {j}) is not strictly increasing")]
    InvalidPair { i: usize, j: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("eigensolver failed to converge")]
    NoConvergence,

    #[error("trace is {trace}, expected 1")]
    TraceNotOne { trace: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("vector is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("Schmidt coefficients must be nonnegative")]
    NegativeCoefficient,

    #[error("state is not in canonical (natural-basis Schmidt) form")]
    NotCanonical,

    #[error("input is a product state; the construction requires an entangled state")]
    ProductState,

    #[error("Schmidt rank {0} is below the required minimum of 2")]
    SchmidtRankTooLow(usize),

    #[error("witness cross-check diverged: direct {direct:e}, spectral {spectral:e}")]
    CrossCheck { direct: f64, spectral: f64 },

    #[error("mixer is suboptimal: bound {bound} does not reach optimum {optimum}")]
    SuboptimalMixer { bound: f64, optimum: f64 },

    #[error("mixers do not belong to the same state or have different bounds")]
    MismatchedMixers,

    #[error("weight {0} is outside [0, 1]")]
    InvalidWeight(f64),

    #[error("mixed-state R_g unsupported")]
    MixedStateUnsupported,

    #[error("construction check failed: {0}")]
    ConstructionFailed(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
