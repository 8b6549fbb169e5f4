//! Workbench for the arithmetic of Mersenne numbers `2^n - 1` and
//! dense-divisor integers.
//!
//! The crate is organised around five pieces:
//!
//! - [`arith`] — exact big-integer plumbing: primality, budgeted factoring,
//!   the classical arithmetic functions and divisor enumeration.
//! - [`mersenne`] — factoring `2^n - 1` through its cyclotomic parts, the
//!   multiplier set `D(n)` and primitive divisors.
//! - [`density`] — divisor-gap statistics `Δ(n)` and `Δ₀(n)`, the chain
//!   characterisation of dense-divisor integers, `G(x,z)` censuses and
//!   smooth-number counts.
//! - [`series`] — partial sums of `Σ (log n)^α / P(2^n-1)`, the exceptional
//!   set classifiers and the empirical lower-bound checks.
//! - [`cache`] — a JSON-lines factor cache so long runs checkpoint per `n`.
//!
//! Everything is deterministic: factoring budgets carry an explicit RNG seed
//! and iteration caps, and all summation orders are fixed.

pub mod arith;
pub mod cache;
pub mod density;
pub mod error;
pub mod mersenne;
pub mod ratio;
pub mod series;
pub mod sieve;

pub(crate) mod decimal;

pub use arith::{FactorBudget, FactoredInteger, Status};
pub use error::{ArithError, CacheError};
pub use ratio::Ratio;
