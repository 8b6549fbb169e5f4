//! Error types shared by the computational modules and the cache.

use std::fmt;

/// Rejection reasons for the arithmetic operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArithError {
    /// The operation needs a `Complete` factorization but got a `Partial` one.
    PartialFactorization,
    /// `multiplicative_order` was called with `gcd(a, m) > 1`.
    NotCoprime,
    /// A supplied factorization does not reconstruct the expected value.
    ValueMismatch { expected: String, got: String },
    /// `a^(m-1) != 1 (mod m)`: the order does not divide `m - 1`, so the
    /// divide-out-from-`m-1` algorithm cannot locate it.
    OrderNotDividing,
    /// The quantity is undefined on 1 (largest prime factor, `Δ`).
    UndefinedOnOne,
    /// A numeric precondition failed; the message names it.
    OutOfRange(&'static str),
}

impl fmt::Display for ArithError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithError::PartialFactorization => {
                write!(f, "operation requires a Complete factorization")
            }
            ArithError::NotCoprime => write!(f, "arguments are not coprime"),
            ArithError::ValueMismatch { expected, got } => {
                write!(f, "factorization value mismatch: expected {expected}, got {got}")
            }
            ArithError::OrderNotDividing => {
                write!(f, "multiplicative order does not divide m - 1")
            }
            ArithError::UndefinedOnOne => write!(f, "quantity undefined on 1"),
            ArithError::OutOfRange(what) => write!(f, "precondition failed: {what}"),
        }
    }
}

impl std::error::Error for ArithError {}

/// Failures of the persistent factor cache.
#[derive(Debug)]
pub enum CacheError {
    Io(std::io::Error),
    /// Another process holds the writer lock on the cache file.
    Locked(String),
    /// A record failed its reconstruction invariant and was rejected.
    BadRecord(String),
}

impl fmt::Display for CacheError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CacheError::Io(e) => write!(f, "cache I/O error: {e}"),
            CacheError::Locked(path) => write!(f, "cache file is locked by another writer: {path}"),
            CacheError::BadRecord(why) => write!(f, "bad cache record: {why}"),
        }
    }
}

impl std::error::Error for CacheError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            CacheError::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for CacheError {
    fn from(e: std::io::Error) -> Self {
        CacheError::Io(e)
    }
}
