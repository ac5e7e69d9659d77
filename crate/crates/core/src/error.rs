//! Crate-wide error type.
//!
//! Validation failures name the violated invariant and carry the offending
//! magnitude (converted to `f64` for reporting, regardless of the working
//! scalar).

use thiserror::Error;

/// Errors produced by state validation, decompositions, and geometry.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix dimension {dim} is not {n}^2 for local dimension {n}")]
    DimNotSquareOfLocal { dim: usize, n: usize },

    #[error("entry array has length {got}, expected {expected}")]
    WrongLength { expected: usize, got: usize },

    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),

    #[error("not Hermitian: max |a[i][j] - conj(a[j][i])| = {0:.3e}")]
    NotHermitian(f64),

    #[error("trace is not 1: got {0}")]
    BadTrace(f64),

    #[error("not positive semidefinite: min eigenvalue {0:.3e}")]
    NotPsd(f64),

    #[error("vector is not normalized: norm {0}")]
    NotNormalized(f64),

    #[error("not rank one: second-largest eigenvalue {0:.3e}")]
    NotRankOne(f64),

    #[error("alpha = {0} lies outside {1}")]
    AlphaOutOfRange(f64, &'static str),

    #[error("block indices ({k},{r}) invalid for local dimension {n}: need k < r < n")]
    BadBlockIndices { k: usize, r: usize, n: usize },

    #[error("A-block undefined: lambda_k + lambda_r = 0 at ({k},{r})")]
    ZeroBlockWeight { k: usize, r: usize },

    #[error("operation requires local dimension >= 2, got {0}")]
    LocalDimTooSmall(usize),

    #[error(
        "phase schedule failed its difference-distinctness check (n = {n}, modulus = {modulus})"
    )]
    SidonCheckFailed { n: usize, modulus: u64 },

    #[error("decomposition does not reassemble its target: residual {0:.3e}")]
    ReassemblyFailed(f64),

    #[error("simplex needs {expected} projectors, got {got}")]
    WrongProjectorCount { expected: usize, got: usize },

    #[error("simplex projectors {m} and {k} are not orthogonal: |P_m P_k| = {norm:.3e}")]
    NotOrthogonal { m: usize, k: usize, norm: f64 },

    #[error("simplex projectors do not resolve the identity: |sum P_m - I| = {0:.3e}")]
    Incomplete(f64),

    #[error("state does not commute with the simplex: max commutator norm {0:.3e}")]
    NotCommuting(f64),

    #[error("coordinate vector is not barycentric: {0}")]
    BadCoordinates(String),

    #[error("LP iteration cap {0} exceeded")]
    LpIterationCap(usize),

    #[error("sample count must be at least 1")]
    NoSamples,

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
