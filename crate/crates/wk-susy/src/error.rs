use thiserror::Error;

use crate::fock::SpaceId;

/// Errors produced by model construction and verification.
#[derive(Debug, Error)]
pub enum WkError {
    #[error("operators live on different spaces: {0:?} vs {1:?}")]
    SpaceMismatch(SpaceId, SpaceId),

    #[error("state label (n={n}, s={s}) out of range for k={k}, d={d}")]
    IndexOutOfRange { n: usize, s: usize, k: usize, d: usize },

    #[error("invalid basis: k={k}, d={d} (need k >= 2 and d >= 4)")]
    InvalidBasis { k: usize, d: usize },

    #[error("window radius r={r} must be smaller than the depth d={d}")]
    WindowTooLarge { r: usize, d: usize },

    #[error("structure function F_{s}({n}) = {value} is negative; the ladder amplitudes would be imaginary")]
    ModelDomain { s: usize, n: usize, value: f64 },

    #[error("sector energy H_{s}({n}) = {value} is negative; subsystem ladder amplitudes would be imaginary")]
    FactorizationDomain { s: usize, n: usize, value: f64 },

    #[error("converted per-sector constant f_{s} has imaginary part {imag:e}; coefficient list must be conjugation-symmetric")]
    ComplexStructureConstant { s: usize, imag: f64 },

    #[error("custom structure table has no entry for sector {s} at level {n}")]
    MissingTableEntry { s: usize, n: i64 },

    #[error("grading operator is not cyclic of order {k} (residual {residual:e})")]
    GradingError { k: usize, residual: f64 },

    #[error("matrix is not diagonal: off-diagonal mass {off:e} exceeds floor {floor:e}")]
    NotDiagonal { off: f64, floor: f64 },

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("spectrum has {groups} grouped levels, need at least {needed} to discard {discard} safely")]
    InsufficientDepth { groups: usize, needed: usize, discard: usize },

    #[error("deformed integer [[{n}]]_Q vanishes ({magnitude:e}); the deformation is at a root of unity, use the k-fermion decomposition instead")]
    RootOfUnityDegeneracy { n: usize, magnitude: f64 },

    #[error("deformed factorial underflowed ({magnitude:e}); epsilon too small for this depth")]
    FactorialUnderflow { magnitude: f64 },

    #[error("representation construction failed: {0}")]
    RepresentationConstruction(String),

    #[error("specialization requires a matching model: {0}")]
    SpecializationMismatch(String),

    #[error("scenario does not support this model: {0}")]
    UnsupportedModel(String),

    #[error("invalid configuration at `{path}`: {message}")]
    Config { path: String, message: String },

    #[error("laurent window half-width {m} too small: {why}")]
    LaurentWindow { m: i64, why: String },

    #[error("finite-difference grid rejected: {0}")]
    FdGrid(String),

    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, WkError>;
