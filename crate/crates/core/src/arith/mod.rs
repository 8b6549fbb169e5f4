//! Exact arithmetic: factored integers, primality, budgeted factoring and
//! the classical arithmetic functions everything else consumes.

mod factor;
mod montgomery;
mod primality;

pub use factor::{factor_integer, FactorBudget};
pub use primality::{is_prime, is_prime_u64, is_prime_with_seed, DEFAULT_PRIMALITY_SEED};

pub(crate) use factor::{factor_in_session, push_prime, Session};
pub(crate) use primality::to_u64;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::ArithError;

/// Whether a factorization accounts for every prime factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Complete,
    Partial,
}

/// An exact multiset of prime powers with an optional unfactored cofactor:
/// `value = cofactor * prod p_i^{e_i}`. The universal currency of the crate.
///
/// Invariants, enforced at construction:
/// - the product identity above holds exactly;
/// - primes are strictly increasing with exponents >= 1;
/// - `Complete` if and only if the cofactor is 1;
/// - a Partial cofactor is composite: the factoring pipeline never abandons
///   a value without first failing a primality test on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredInteger {
    value: BigUint,
    factors: Vec<(BigUint, u32)>,
    cofactor: BigUint,
    status: Status,
}

impl FactoredInteger {
    /// The factorization of 1: empty product, Complete.
    pub fn one() -> Self {
        FactoredInteger {
            value: BigUint::one(),
            factors: Vec::new(),
            cofactor: BigUint::one(),
            status: Status::Complete,
        }
    }

    /// Complete factorization of a native integer with the default budget;
    /// the cycle finder splits any 64-bit input well inside that budget.
    pub fn of_u64(m: u64) -> Self {
        factor::factor_integer(&BigUint::from(m), &FactorBudget::default())
    }

    /// Builds a Complete record from prime powers. Panics when the list is
    /// not strictly increasing with positive exponents; primality of the
    /// entries is the caller's responsibility (debug builds check it).
    pub fn from_prime_powers(factors: Vec<(BigUint, u32)>) -> Self {
        let mut value = BigUint::one();
        for (i, (p, e)) in factors.iter().enumerate() {
            assert!(*e >= 1, "exponent must be >= 1");
            assert!(
                i == 0 || factors[i - 1].0 < *p,
                "primes must be strictly increasing"
            );
            debug_assert!(primality::is_prime(p), "{p} is not prime");
            value *= p.pow(*e);
        }
        FactoredInteger {
            value,
            factors,
            cofactor: BigUint::one(),
            status: Status::Complete,
        }
    }

    /// Revalidates an externally supplied record (the cache load path):
    /// product reconstruction, ordering and status coherence.
    pub fn from_raw_checked(
        value: BigUint,
        factors: Vec<(BigUint, u32)>,
        cofactor: BigUint,
    ) -> Result<Self, ArithError> {
        if cofactor.is_zero() {
            return Err(ArithError::OutOfRange("cofactor must be >= 1"));
        }
        let mut product = cofactor.clone();
        for (i, (p, e)) in factors.iter().enumerate() {
            if *e < 1 || p < &BigUint::from(2u32) {
                return Err(ArithError::OutOfRange("factor entries must be (p >= 2, e >= 1)"));
            }
            if i > 0 && factors[i - 1].0 >= *p {
                return Err(ArithError::OutOfRange("primes must be strictly increasing"));
            }
            product *= p.pow(*e);
        }
        if product != value {
            return Err(ArithError::ValueMismatch {
                expected: value.to_string(),
                got: product.to_string(),
            });
        }
        let status = if cofactor.is_one() {
            Status::Complete
        } else {
            Status::Partial
        };
        Ok(FactoredInteger {
            value,
            factors,
            cofactor,
            status,
        })
    }

    /// Internal assembly from the factoring pipeline; sorts and merges.
    pub(crate) fn assemble(
        value: BigUint,
        mut factors: Vec<(BigUint, u32)>,
        cofactor: BigUint,
    ) -> Self {
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        let status = if cofactor.is_one() {
            Status::Complete
        } else {
            Status::Partial
        };
        let out = FactoredInteger {
            value,
            factors,
            cofactor,
            status,
        };
        debug_assert!(out.verify(), "assembled factorization fails reconstruction");
        out
    }

    /// Multiset union of two factorizations; the result factors
    /// `self.value * other.value`.
    pub fn merge(&self, other: &FactoredInteger) -> FactoredInteger {
        let mut factors = self.factors.clone();
        for (p, e) in &other.factors {
            push_prime(&mut factors, p.clone(), *e);
        }
        FactoredInteger::assemble(
            &self.value * &other.value,
            factors,
            &self.cofactor * &other.cofactor,
        )
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn cofactor(&self) -> &BigUint {
        &self.cofactor
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == Status::Complete
    }

    /// Structural check: reconstruction, ordering, exponents, status.
    pub fn verify(&self) -> bool {
        let mut product = self.cofactor.clone();
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if *e < 1 || (i > 0 && self.factors[i - 1].0 >= *p) {
                return false;
            }
            product *= p.pow(*e);
        }
        product == self.value && (self.cofactor.is_one()) == (self.status == Status::Complete)
    }

    /// Factor list as native pairs; panics if a prime exceeds 64 bits.
    pub fn factors_u64(&self) -> Vec<(u64, u32)> {
        self.factors
            .iter()
            .map(|(p, e)| (to_u64(p).expect("prime factor exceeds u64"), *e))
            .collect()
    }

    fn require_complete(&self) -> Result<(), ArithError> {
        if self.is_complete() {
            Ok(())
        } else {
            Err(ArithError::PartialFactorization)
        }
    }
}

/// `base^exponent mod modulus` by square-and-multiply; `modulus = 1` gives 0.
pub fn pow_mod(base: &BigUint, exponent: &BigUint, modulus: &BigUint) -> BigUint {
    assert!(!modulus.is_zero(), "modulus must be >= 1");
    if modulus.is_one() {
        return BigUint::zero();
    }
    base.modpow(exponent, modulus)
}

/// Least `t >= 1` with `a^t = 1 (mod m)`, located by dividing prime factors
/// out of `m - 1` while the congruence persists. Requires the order to
/// divide `m - 1` (automatic for prime `m`); anything else is rejected
/// rather than silently wrong.
pub fn multiplicative_order(
    a: &BigUint,
    m: &BigUint,
    m_minus_1: &FactoredInteger,
) -> Result<BigUint, ArithError> {
    assert!(*m >= BigUint::from(2u32), "modulus must be >= 2");
    if a.gcd(m) != BigUint::one() {
        return Err(ArithError::NotCoprime);
    }
    m_minus_1.require_complete()?;
    let expected = m - 1u32;
    if *m_minus_1.value() != expected {
        return Err(ArithError::ValueMismatch {
            expected: expected.to_string(),
            got: m_minus_1.value().to_string(),
        });
    }
    if !pow_mod(a, &expected, m).is_one() {
        return Err(ArithError::OrderNotDividing);
    }
    let mut t = expected;
    for (p, e) in m_minus_1.factors() {
        for _ in 0..*e {
            let candidate = &t / p;
            if pow_mod(a, &candidate, m).is_one() {
                t = candidate;
            } else {
                break;
            }
        }
    }
    Ok(t)
}

/// Number of divisors `prod (e_i + 1)`.
pub fn tau(f: &FactoredInteger) -> Result<u64, ArithError> {
    f.require_complete()?;
    Ok(f.factors()
        .iter()
        .fold(1u64, |acc, (_, e)| {
            acc.checked_mul(*e as u64 + 1).expect("divisor count overflows u64")
        }))
}

/// Number of distinct prime factors.
pub fn omega(f: &FactoredInteger) -> Result<u64, ArithError> {
    f.require_complete()?;
    Ok(f.factors().len() as u64)
}

/// Euler phi: `prod p^{e-1} (p - 1)`; phi(1) = 1.
pub fn phi(f: &FactoredInteger) -> Result<BigUint, ArithError> {
    f.require_complete()?;
    let mut out = BigUint::one();
    for (p, e) in f.factors() {
        out *= p.pow(*e - 1) * (p - 1u32);
    }
    Ok(out)
}

/// Moebius mu: 0 on non-squarefree, else (-1)^omega.
pub fn moebius(f: &FactoredInteger) -> Result<i8, ArithError> {
    f.require_complete()?;
    if f.factors().iter().any(|(_, e)| *e >= 2) {
        Ok(0)
    } else if f.factors().len() % 2 == 0 {
        Ok(1)
    } else {
        Ok(-1)
    }
}

/// `P(value)`: the largest prime factor; undefined on 1.
pub fn largest_prime_factor(f: &FactoredInteger) -> Result<BigUint, ArithError> {
    f.require_complete()?;
    f.factors()
        .last()
        .map(|(p, _)| p.clone())
        .ok_or(ArithError::UndefinedOnOne)
}

/// All divisors, strictly increasing; exactly `tau(f)` of them.
pub fn divisors(f: &FactoredInteger) -> Result<Vec<BigUint>, ArithError> {
    f.require_complete()?;
    let mut divs = vec![BigUint::one()];
    for (p, e) in f.factors() {
        let prev = divs.len();
        let mut pe = BigUint::one();
        for _ in 0..*e {
            pe *= p;
            for i in 0..prev {
                divs.push(&divs[i] * &pe);
            }
        }
    }
    divs.sort_unstable();
    Ok(divs)
}
