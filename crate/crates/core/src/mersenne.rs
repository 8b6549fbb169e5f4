//! Factoring `2^n - 1` through its cyclotomic parts, plus the objects
//! attached to its prime factors: the multiplier set `D(n)`, `D+(n)` and
//! primitive divisors.
//!
//! Splitting off the parts first pays twice: each part is exponentially
//! smaller than `2^n - 1`, and its prime factors are known to satisfy
//! `p = 1 (mod d)` (apart from one possible intrinsic factor dividing `d`),
//! which thins trial division to a short arithmetic progression.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{
    self, factor_in_session, is_prime_u64, multiplicative_order, pow_mod, push_prime, to_u64,
    FactorBudget, FactoredInteger, Session, Status,
};
use crate::cache::{FactorCache, FactorCacheRecord};
use crate::error::ArithError;

/// `2^n - 1`.
pub fn mersenne_number(n: u64) -> BigUint {
    (BigUint::one() << n) - 1u32
}

/// Trial factorization for small native integers (exponents, divisors of
/// exponents). Not meant for cryptographic sizes.
pub fn trial_factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Sorted divisors of a small native integer.
pub fn divisors_u64(n: u64) -> Vec<u64> {
    crate::sieve::divisors_from_factors(&trial_factor_u64(n))
}

/// The factorization of `2^n - 1` split along the divisors of `n`:
/// `parts[d]` factors the `d`-th cyclotomic value at 2, and `merged` is
/// their multiset union.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MersenneFactorization {
    n: u64,
    parts: BTreeMap<u64, FactoredInteger>,
    merged: FactoredInteger,
    status: Status,
    trial_bound: u64,
}

impl MersenneFactorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn parts(&self) -> &BTreeMap<u64, FactoredInteger> {
        &self.parts
    }

    pub fn merged(&self) -> &FactoredInteger {
        &self.merged
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == Status::Complete
    }

    /// Trial-division bound the factors were produced under; any prime
    /// hiding in a Partial cofactor exceeds it.
    pub fn trial_bound(&self) -> u64 {
        self.trial_bound
    }
}

/// The multiplier set `D(n) = { d : d*n + 1 is a prime factor of 2^n - 1 }`
/// and its maximum `D+(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplierSet {
    pub n: u64,
    pub multipliers: Vec<BigUint>,
    pub d_plus: Option<BigUint>,
}

/// The `d`-th cyclotomic polynomial at 2 via the Moebius product
/// `prod_{e | d} (2^{d/e} - 1)^{mu(e)}`. All divisions are exact; an inexact
/// one means the arithmetic underneath is broken, so it panics.
pub fn cyclotomic_value(d: u64, f_d: &FactoredInteger) -> BigUint {
    assert!(d >= 1);
    assert!(f_d.is_complete(), "factorization of d must be Complete");
    assert_eq!(
        f_d.value(),
        &BigUint::from(d),
        "f_d must factor d itself"
    );
    let primes: Vec<u64> = f_d
        .factors()
        .iter()
        .map(|(p, _)| to_u64(p).expect("cyclotomic index fits u64"))
        .collect();
    let mut numerator = BigUint::one();
    let mut denominator = BigUint::one();
    // squarefree divisors e of d, mu(e) = (-1)^popcount
    for mask in 0u32..(1 << primes.len()) {
        let e: u64 = primes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, p)| p)
            .product();
        let term = mersenne_number(d / e);
        if mask.count_ones() % 2 == 0 {
            numerator *= term;
        } else {
            denominator *= term;
        }
    }
    let (q, r) = numerator.div_rem(&denominator);
    assert!(
        r.is_zero(),
        "inexact cyclotomic division for d = {d}: arithmetic bug"
    );
    q
}

/// Whether `p = k*d + 1` can divide the non-intrinsic part of the `d`-th
/// cyclotomic value at 2. Such a prime has order exactly `d`, which pins
/// down whether 2 is a quadratic residue mod `p`:
/// `2^((p-1)/2) = (2^(d/2))^k = (-1)^k` for even `d`, and 1 for odd `d`
/// (where `k` is forced even). Residue status translates to `p mod 8`.
fn admissible_candidate(p: u64, d: u64) -> bool {
    let k = (p - 1) / d;
    let pm8 = p % 8;
    if d % 2 == 1 {
        k % 2 == 0 && (pm8 == 1 || pm8 == 7)
    } else if k % 2 == 0 {
        pm8 == 1 || pm8 == 7
    } else {
        pm8 == 3 || pm8 == 5
    }
}

/// Factors one cyclotomic part: intrinsic prime first, then trial division
/// along `p = k*d + 1` restricted by the residue constraint, then the
/// generic pipeline on whatever remains.
fn factor_part(
    d: u64,
    value: BigUint,
    intrinsic: Option<u64>,
    session: &mut Session,
    trial_bound: u64,
) -> FactoredInteger {
    let original = value.clone();
    let mut rest = value;
    let mut factors: Vec<(BigUint, u32)> = Vec::new();

    if rest.is_one() {
        return FactoredInteger::one();
    }

    // intrinsic candidate: the only prime factor of the part that divides d
    // is the largest prime factor of d
    if let Some(p) = intrinsic {
        let big_p = BigUint::from(p);
        let mut e = 0u32;
        loop {
            let (q, r) = rest.div_rem(&big_p);
            if r.is_zero() {
                rest = q;
                e += 1;
            } else {
                break;
            }
        }
        if e > 0 {
            push_prime(&mut factors, big_p, e);
        }
    }

    // progression scan: candidates k*d + 1 up to the trial bound
    if d >= 2 && !rest.is_one() {
        let mut k = 1u64;
        while let Some(p) = k.checked_mul(d).and_then(|v| v.checked_add(1)) {
            if p > trial_bound {
                break;
            }
            if admissible_candidate(p, d) {
                let big_p = BigUint::from(p);
                let mut e = 0u32;
                loop {
                    let (q, r) = rest.div_rem(&big_p);
                    if r.is_zero() {
                        rest = q;
                        e += 1;
                    } else {
                        break;
                    }
                }
                if e > 0 {
                    debug_assert!(is_prime_u64(p));
                    push_prime(&mut factors, big_p, e);
                    if rest.is_one() {
                        break;
                    }
                }
            }
            k += 1;
        }
    }

    // generic stage for the remainder (primality check, cycle finding)
    let tail = factor_in_session(&rest, session);
    for (p, e) in tail.factors() {
        push_prime(&mut factors, p.clone(), *e);
    }
    FactoredInteger::assemble(original, factors, tail.cofactor().clone())
}

/// Factors `2^n - 1` through its cyclotomic parts, consulting and updating
/// `cache` when supplied. Budget exhaustion yields Partial parts, never an
/// error.
pub fn factor_mersenne(
    n: u64,
    budget: &FactorBudget,
    cache: Option<&FactorCache>,
) -> MersenneFactorization {
    assert!(n >= 1, "n must be positive");

    if let Some(c) = cache {
        if let Some(rec) = c.get(n) {
            let usable = match rec.status {
                Status::Complete => true,
                // retry a Partial record only under a strictly larger budget
                Status::Partial => !budget.exceeds(rec.trial_bound, rec.rho_cap),
            };
            if usable {
                if let Ok(merged) = rec.to_factored() {
                    return from_merged(n, merged, rec.trial_bound);
                }
                // an inconsistent record is ignored; fall through and recompute
            }
        }
    }

    let mut session = Session::new(budget);
    let mut parts = BTreeMap::new();
    for d in divisors_u64(n) {
        let f_d = FactoredInteger::from_prime_powers(
            trial_factor_u64(d)
                .into_iter()
                .map(|(p, e)| (BigUint::from(p), e))
                .collect(),
        );
        let value = cyclotomic_value(d, &f_d);
        let intrinsic = f_d.factors().last().map(|(p, _)| to_u64(p).unwrap());
        let part = factor_part(d, value, intrinsic, &mut session, budget.trial_division_bound);
        parts.insert(d, part);
    }
    let merged = parts
        .values()
        .fold(FactoredInteger::one(), |acc, p| acc.merge(p));
    let status = merged.status();
    let mf = MersenneFactorization {
        n,
        parts,
        merged,
        status,
        trial_bound: budget.trial_division_bound,
    };
    debug_assert!(verify_product(&mf));

    if let Some(c) = cache {
        let rec = FactorCacheRecord::new(n, &mf.merged, budget);
        if let Err(e) = c.upsert(rec) {
            eprintln!("warning: cache write for n={n} failed: {e}");
        }
    }
    mf
}

/// Rebuilds the per-divisor parts from a merged factorization (the cache
/// path): each prime is assigned its exact multiplicity in each cyclotomic
/// value by division.
fn from_merged(n: u64, merged: FactoredInteger, trial_bound: u64) -> MersenneFactorization {
    let mut parts = BTreeMap::new();
    for d in divisors_u64(n) {
        let f_d = FactoredInteger::from_prime_powers(
            trial_factor_u64(d)
                .into_iter()
                .map(|(p, e)| (BigUint::from(p), e))
                .collect(),
        );
        let value = cyclotomic_value(d, &f_d);
        let mut rest = value.clone();
        let mut factors: Vec<(BigUint, u32)> = Vec::new();
        for (p, _) in merged.factors() {
            let mut e = 0u32;
            loop {
                let (q, r) = rest.div_rem(p);
                if r.is_zero() {
                    rest = q;
                    e += 1;
                } else {
                    break;
                }
            }
            if e > 0 {
                factors.push((p.clone(), e));
            }
        }
        parts.insert(d, FactoredInteger::assemble(value, factors, rest));
    }
    let status = merged.status();
    MersenneFactorization {
        n,
        parts,
        merged,
        status,
        trial_bound,
    }
}

/// Full structural audit: cyclotomic product identity, merged reconstruction,
/// part/merged multiset agreement, status coherence and the provenance
/// congruence on every part prime.
pub fn verify_product(mf: &MersenneFactorization) -> bool {
    let target = mersenne_number(mf.n);

    // parts multiply to 2^n - 1
    let part_product = mf
        .parts
        .values()
        .fold(BigUint::one(), |acc, p| acc * p.value());
    if part_product != target {
        return false;
    }
    // each part reconstructs and carries admissible primes
    for (&d, part) in &mf.parts {
        if !part.verify() {
            return false;
        }
        let intrinsic = trial_factor_u64(d).last().map(|&(p, _)| p);
        for (p, _) in part.factors() {
            let congruent = (p % BigUint::from(d)).is_one() || (d == 1 && p.is_one());
            let is_intrinsic = intrinsic.is_some_and(|q| p == &BigUint::from(q));
            if !congruent && !is_intrinsic {
                return false;
            }
        }
    }
    // merged reconstructs and equals the union of the parts
    if !mf.merged.verify() || mf.merged.value() != &target {
        return false;
    }
    let union = mf
        .parts
        .values()
        .fold(FactoredInteger::one(), |acc, p| acc.merge(p));
    if union.factors() != mf.merged.factors() || union.cofactor() != mf.merged.cofactor() {
        return false;
    }
    // status coherence
    let all_complete = mf.parts.values().all(|p| p.is_complete());
    mf.status == mf.merged.status() && (mf.status == Status::Complete) == all_complete
}

/// `P(2^n - 1)` as `(lower_bound, exact)`: exact when Complete; otherwise a
/// certified lower bound, since every prime in a Partial cofactor exceeds
/// the trial bound.
pub fn largest_prime_factor_mersenne(
    mf: &MersenneFactorization,
) -> Result<(BigUint, Option<BigUint>), ArithError> {
    if mf.n < 2 {
        return Err(ArithError::UndefinedOnOne);
    }
    let known_largest = mf.merged.factors().last().map(|(p, _)| p.clone());
    match mf.status {
        Status::Complete => {
            let p = known_largest.expect("2^n - 1 > 1 for n >= 2 has a prime factor");
            Ok((p.clone(), Some(p)))
        }
        Status::Partial => {
            let bound = BigUint::from(mf.trial_bound);
            let lower = match known_largest {
                Some(p) if p > bound => p,
                _ => bound,
            };
            Ok((lower, None))
        }
    }
}

/// `D(n) = { (p - 1) / n : p | 2^n - 1, p = 1 (mod n) }`, refused for
/// Partial input: a missing large factor would silently corrupt `D+`.
pub fn divisor_multiplier_set(mf: &MersenneFactorization) -> Result<MultiplierSet, ArithError> {
    if !mf.is_complete() {
        return Err(ArithError::PartialFactorization);
    }
    let n = BigUint::from(mf.n);
    let mut multipliers: Vec<BigUint> = mf
        .merged
        .factors()
        .iter()
        .filter(|(p, _)| ((p - 1u32) % &n).is_zero())
        .map(|(p, _)| (p - 1u32) / &n)
        .collect();
    multipliers.sort_unstable();
    let d_plus = multipliers.last().cloned();
    Ok(MultiplierSet {
        n: mf.n,
        multipliers,
        d_plus,
    })
}

/// Smallest prime factor of `2^n - 1` whose multiplicative order mod 2 is
/// exactly `n`, or None (the classical `n = 6` exception below 2^120).
pub fn primitive_divisor(mf: &MersenneFactorization) -> Result<Option<BigUint>, ArithError> {
    if mf.n < 2 {
        return Err(ArithError::OutOfRange("primitive divisor needs n >= 2"));
    }
    if !mf.is_complete() {
        return Err(ArithError::PartialFactorization);
    }
    let two = BigUint::from(2u32);
    for (p, _) in mf.merged.factors() {
        // ord_p(2) divides n, so the order is the least divisor d of n with
        // 2^d = 1 (mod p); no factorization of p - 1 is needed.
        let ord = divisors_u64(mf.n)
            .into_iter()
            .find(|&d| pow_mod(&two, &BigUint::from(d), p).is_one())
            .expect("2^n = 1 mod p for any p | 2^n - 1");
        if ord == mf.n {
            return Ok(Some(p.clone()));
        }
    }
    Ok(None)
}

/// Count of prime factors `p = 1 (mod n)` of `2^n - 1` (the left side of the
/// divisor-counting lower bound).
pub fn congruent_factor_count(mf: &MersenneFactorization) -> Result<u64, ArithError> {
    if !mf.is_complete() {
        return Err(ArithError::PartialFactorization);
    }
    let n = BigUint::from(mf.n);
    Ok(mf
        .merged
        .factors()
        .iter()
        .filter(|(p, _)| ((p - 1u32) % &n).is_zero())
        .count() as u64)
}

/// Multiplicative order of 2 modulo an odd prime `p`, via the generic
/// divide-out-of-`m-1` routine.
pub fn order_of_two(p: &BigUint, budget: &FactorBudget) -> Result<BigUint, ArithError> {
    let p_minus_1 = arith::factor_integer(&(p - 1u32), budget);
    multiplicative_order(&BigUint::from(2u32), p, &p_minus_1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mf(n: u64) -> MersenneFactorization {
        factor_mersenne(n, &FactorBudget::default(), None)
    }

    #[test]
    fn cyclotomic_values() {
        let f = |d: u64| {
            FactoredInteger::from_prime_powers(
                trial_factor_u64(d)
                    .into_iter()
                    .map(|(p, e)| (BigUint::from(p), e))
                    .collect(),
            )
        };
        assert_eq!(cyclotomic_value(1, &f(1)), BigUint::one());
        assert_eq!(cyclotomic_value(2, &f(2)), BigUint::from(3u32));
        assert_eq!(cyclotomic_value(6, &f(6)), BigUint::from(3u32));
        assert_eq!(cyclotomic_value(12, &f(12)), BigUint::from(13u32));
        assert_eq!(cyclotomic_value(20, &f(20)), BigUint::from(205u32));
        // product over divisors rebuilds 2^n - 1
        for n in 1..=40u64 {
            let product = divisors_u64(n)
                .into_iter()
                .fold(BigUint::one(), |acc, d| acc * cyclotomic_value(d, &f(d)));
            assert_eq!(product, mersenne_number(n), "n = {n}");
        }
    }

    #[test]
    fn factors_small_mersennes() {
        let m = mf(11);
        assert_eq!(m.status(), Status::Complete);
        assert_eq!(m.merged().factors_u64(), vec![(23, 1), (89, 1)]);

        let m = mf(6);
        assert_eq!(m.merged().factors_u64(), vec![(3, 2), (7, 1)]);
        assert_eq!(m.parts()[&1].value(), &BigUint::one());
        assert_eq!(m.parts()[&2].value(), &BigUint::from(3u32));
        assert_eq!(m.parts()[&3].value(), &BigUint::from(7u32));
        assert_eq!(m.parts()[&6].value(), &BigUint::from(3u32));

        let m = mf(1);
        assert_eq!(m.merged().value(), &BigUint::one());
        assert!(m.merged().factors().is_empty());
        assert_eq!(m.status(), Status::Complete);
        assert!(verify_product(&m));
    }

    #[test]
    fn verification_catches_corruption() {
        let good = mf(11);
        assert!(verify_product(&good));
        // corrupt: bump an exponent in the merged factorization
        let mut bad = good.clone();
        let factors = vec![
            (BigUint::from(23u32), 2), // wrong exponent
            (BigUint::from(89u32), 1),
        ];
        bad.merged = FactoredInteger::from_raw_checked(
            BigUint::from(23u32 * 23 * 89),
            factors,
            BigUint::one(),
        )
        .unwrap();
        assert!(!verify_product(&bad));
    }

    #[test]
    fn largest_prime_factor_examples() {
        let (lower, exact) = largest_prime_factor_mersenne(&mf(13)).unwrap();
        assert_eq!(exact.as_ref(), Some(&BigUint::from(8191u32)));
        assert_eq!(lower, BigUint::from(8191u32));
        let (_, exact) = largest_prime_factor_mersenne(&mf(12)).unwrap();
        assert_eq!(exact, Some(BigUint::from(13u32)));
        let (_, exact) = largest_prime_factor_mersenne(&mf(11)).unwrap();
        assert_eq!(exact, Some(BigUint::from(89u32)));
        assert!(largest_prime_factor_mersenne(&mf(1)).is_err());
    }

    #[test]
    fn partial_lower_bound() {
        // starve the budget so 2^101 - 1 stays unsplit
        let budget = FactorBudget {
            trial_division_bound: 50_000,
            rho_iteration_cap: 16,
            wall_clock_cap_ms: 120_000,
            rng_seed: 1,
        };
        let m = factor_mersenne(101, &budget, None);
        assert_eq!(m.status(), Status::Partial);
        let (lower, exact) = largest_prime_factor_mersenne(&m).unwrap();
        assert!(exact.is_none());
        assert_eq!(lower, BigUint::from(50_000u32));
        // refused downstream
        assert_eq!(
            divisor_multiplier_set(&m).unwrap_err(),
            ArithError::PartialFactorization
        );
        assert_eq!(
            primitive_divisor(&m).unwrap_err(),
            ArithError::PartialFactorization
        );
    }

    #[test]
    fn multiplier_sets() {
        let d = |n: u64| divisor_multiplier_set(&mf(n)).unwrap();
        let to_u64s = |v: &[BigUint]| -> Vec<u64> { v.iter().map(|x| to_u64(x).unwrap()).collect() };
        let d11 = d(11);
        assert_eq!(to_u64s(&d11.multipliers), vec![2, 8]);
        assert_eq!(d11.d_plus, Some(BigUint::from(8u32)));
        let d6 = d(6);
        assert_eq!(to_u64s(&d6.multipliers), vec![1]);
        let d5 = d(5);
        assert_eq!(to_u64s(&d5.multipliers), vec![6]);
        // n = 1: no prime factors at all
        let d1 = d(1);
        assert!(d1.multipliers.is_empty() && d1.d_plus.is_none());
    }

    #[test]
    fn primitive_divisors() {
        assert_eq!(primitive_divisor(&mf(6)).unwrap(), None);
        assert_eq!(primitive_divisor(&mf(4)).unwrap(), Some(BigUint::from(5u32)));
        assert_eq!(primitive_divisor(&mf(12)).unwrap(), Some(BigUint::from(13u32)));
        assert_eq!(primitive_divisor(&mf(2)).unwrap(), Some(BigUint::from(3u32)));
    }

    #[test]
    fn admissibility_never_excludes_real_factors() {
        // every non-intrinsic prime in every part up to n = 80 must pass the
        // congruence filter it was found under
        for n in 2..=80u64 {
            let m = mf(n);
            for (&d, part) in m.parts() {
                if d < 2 {
                    continue;
                }
                let intrinsic = trial_factor_u64(d).last().map(|&(p, _)| p);
                for (p, _) in part.factors() {
                    if let Some(p64) = to_u64(p) {
                        if intrinsic == Some(p64) {
                            continue;
                        }
                        assert!(
                            admissible_candidate(p64, d),
                            "n={n} d={d} p={p64} rejected by the residue filter"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn order_of_two_matches_primitive_search() {
        let budget = FactorBudget::default();
        assert_eq!(order_of_two(&BigUint::from(7u32), &budget).unwrap(), BigUint::from(3u32));
        assert_eq!(order_of_two(&BigUint::from(23u32), &budget).unwrap(), BigUint::from(11u32));
    }

    #[test]
    fn cache_roundtrip_preserves_everything() {
        let dir = tempfile::tempdir().unwrap();
        let cache = FactorCache::open(dir.path().join("c.jsonl")).unwrap();
        let budget = FactorBudget::default();
        let fresh = factor_mersenne(29, &budget, Some(&cache));
        assert_eq!(cache.len(), 1);
        let replayed = factor_mersenne(29, &budget, Some(&cache));
        assert_eq!(fresh, replayed);
        assert!(verify_product(&replayed));
    }
}
