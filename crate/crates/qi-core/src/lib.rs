//! Exact-arithmetic computational invariant theory for representations of
//! quivers and their mixed generalizations.
//!
//! The crate provides:
//!
//! * exact scalars (arbitrary-precision rationals or odd prime fields) and
//!   dense matrices with division-free characteristic polynomial and
//!   pfaffian machinery ([`exact_linalg`]),
//! * mixed quiver settings with their validity conditions, double quivers,
//!   representations and classical group actions ([`quiver_model`]),
//! * path enumeration and cyclic/transpose canonical forms ([`paths`]),
//! * formal trace polynomials: Amitsur expansion, power reduction,
//!   the sigma_{t,r} family and relation instances ([`trace_algebra`]),
//! * tableaux with substitution and the bpf evaluator together with the
//!   block-partial-linearization correspondence ([`tableaux_bpf`]),
//! * generator enumeration for the classical generation theorems
//!   ([`generators`]) and descriptor evaluation, fingerprints and
//!   separation ([`invariant_eval`]).
//!
//! All arithmetic is exact; every result is either a precise value or an
//! error, never an approximation.

pub mod exact_linalg;
pub mod identities;
pub mod invariant_eval;
pub mod generators;
pub mod paths;
pub mod quiver_model;
pub mod tableaux_bpf;
pub mod trace_algebra;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("scalar backends differ (mixed field arithmetic)")]
    BackendMismatch,
    #[error("division by zero or non-invertible element")]
    DivisionByZero,
    #[error("matrix is not square: {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("dimension must be even, got {0}")]
    OddDimension(usize),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("prime field too small: need {needed} distinct interpolation nodes, modulus is {p}")]
    PrimeTooSmall { needed: usize, p: u64 },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("inexact integer division in bpf normalization (implementation bug)")]
    InexactDivision,
    #[error("invalid setting: {0}")]
    InvalidSetting(String),
    #[error("word is not composable: {0}")]
    NotComposable(String),
    #[error("word is not closed")]
    NotClosed,
    #[error("letter outside the expected alphabet: {0}")]
    ForeignLetter(String),
    #[error("transpose letter requested for an arrow whose form label is not M: {0}")]
    NoTranspose(String),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("sampling failed after retry budget: {0}")]
    SamplingFailed(String),
    #[error("schema error: {0}")]
    Schema(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
