//! Error type shared by all modules.

use std::error;
use std::fmt;

/// Errors produced by path construction, continued-fraction evaluation,
/// surd arithmetic and the verification routines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A path word contained a character other than `R`/`U`.
    InvalidStep { index: usize, found: char },
    /// An empty path word was supplied.
    EmptyWord,
    /// The operation needs at least two steps (a single-step path has no
    /// continued fraction).
    PathTooShort { len: usize },
    /// Endpoint indices must satisfy `a > b >= 1`.
    BadIndices { a: u64, b: u64 },
    /// The indices must be coprime.
    NotCoprime { a: u64, b: u64 },
    /// The requested block does not match the `R U^u R^r U` exchange shape.
    ExchangeShape { block_index: usize, reason: &'static str },
    /// A continued fraction must have at least one entry.
    EmptyContinuedFraction,
    /// Continued-fraction entries must be positive.
    ZeroEntry { index: usize },
    /// Window entries of the numerator-difference identity must be >= 2.
    WindowEntryTooSmall { value: u64 },
    /// Addition/subtraction of surds over distinct irrational radicands.
    RadicandMismatch { left: String, right: String },
    /// A surd radicand must be nonnegative.
    NegativeRadicand { radicand: String },
    /// Division by a zero value or zero denominator.
    DivisionByZero,
    /// The snake graph has more tiles than the matcher is willing to visit.
    TileCapExceeded { tiles: usize, cap: usize },
    /// The enumeration would exceed the configured path-count guard.
    EnumerationGuard { size: String, guard: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidStep { index, found } => {
                write!(f, "invalid step character '{found}' at index {index} (expected R or U)")
            }
            Error::EmptyWord => write!(f, "path word is empty"),
            Error::PathTooShort { len } => {
                write!(f, "path too short: no continued fraction for a {len}-step path")
            }
            Error::BadIndices { a, b } => {
                write!(f, "endpoint indices must satisfy a > b >= 1, got ({a}, {b})")
            }
            Error::NotCoprime { a, b } => write!(f, "indices ({a}, {b}) are not coprime"),
            Error::ExchangeShape { block_index, reason } => {
                write!(f, "block {block_index} does not fit the exchange shape: {reason}")
            }
            Error::EmptyContinuedFraction => write!(f, "continued fraction has no entries"),
            Error::ZeroEntry { index } => {
                write!(f, "continued-fraction entry at index {index} must be positive")
            }
            Error::WindowEntryTooSmall { value } => {
                write!(f, "window entries must be at least 2, got {value}")
            }
            Error::RadicandMismatch { left, right } => {
                write!(f, "cannot combine surds over distinct radicands {left} and {right}")
            }
            Error::NegativeRadicand { radicand } => {
                write!(f, "radicand must be nonnegative, got {radicand}")
            }
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::TileCapExceeded { tiles, cap } => {
                write!(f, "snake graph has {tiles} tiles, exceeding the matcher cap of {cap}")
            }
            Error::EnumerationGuard { size, guard } => {
                write!(f, "enumeration of {size} paths exceeds the guard of {guard}")
            }
        }
    }
}

impl error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
