//! Primality testing: deterministic Miller-Rabin below 2^64, seeded strong
//! probable-prime rounds above.

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// Witness schedule seed for the standalone `is_prime`; fixed so results are
/// reproducible run to run. Factoring paths pass their budget seed instead.
pub const DEFAULT_PRIMALITY_SEED: u64 = 0x6d65_7273_656e_6e65;

/// Rounds above 2^64. Each strong round has error probability at most 1/4,
/// so 65 rounds push the composite-acceptance probability below 2^-128.
const BIG_ROUNDS: usize = 65;

/// Deterministic for all inputs below 2^64: this witness set has no strong
/// pseudoprime in that range (Feitsma/Galway verification).
const WITNESSES_U64: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

const SMALL_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

pub(crate) fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

fn strong_round_u64(n: u64, d: u64, s: u32, base: u64) -> bool {
    let base = base % n;
    if base == 0 {
        return true;
    }
    let mut x = pow_mod_u64(base, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod_u64(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic primality for `n < 2^64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    WITNESSES_U64.iter().all(|&w| strong_round_u64(n, d, s, w))
}

fn strong_round_big(n: &BigUint, d: &BigUint, s: u64, base: &BigUint) -> bool {
    let n_minus_1 = n - 1u32;
    let base = base % n;
    if base.is_zero() {
        return true;
    }
    let mut x = base.modpow(d, n);
    if x.is_one() || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

/// Primality with an explicit witness seed: deterministic and correct below
/// 2^64, probabilistic (error below 2^-128) above, bit-reproducible for a
/// fixed seed.
pub fn is_prime_with_seed(n: &BigUint, seed: u64) -> bool {
    if let Some(n64) = to_u64(n) {
        return is_prime_u64(n64);
    }
    for &p in &SMALL_PRIMES {
        if (n % BigUint::from(p)).is_zero() {
            return false; // n > 2^64, so n != p
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().expect("n > 2 here");
    let d = &n_minus_1 >> s;

    // base-2 strong test first: cheap rejection for almost every composite
    if !strong_round_big(n, &d, s, &BigUint::from(2u32)) {
        return false;
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let lo = BigUint::from(2u32);
    let hi = n - 1u32; // gen range is [lo, hi): witnesses in [2, n-2]
    (0..BIG_ROUNDS).all(|_| {
        let w = rng.gen_biguint_range(&lo, &hi);
        strong_round_big(n, &d, s, &w)
    })
}

/// Primality with the default witness seed.
pub fn is_prime(n: &BigUint) -> bool {
    is_prime_with_seed(n, DEFAULT_PRIMALITY_SEED)
}

pub(crate) fn to_u64(n: &BigUint) -> Option<u64> {
    let digits = n.to_u64_digits();
    match digits.len() {
        0 => Some(0),
        1 => Some(digits[0]),
        _ => None,
    }
}

pub(crate) fn to_u128(n: &BigUint) -> Option<u128> {
    let digits = n.to_u64_digits();
    match digits.len() {
        0 => Some(0),
        1 => Some(digits[0] as u128),
        2 => Some(((digits[1] as u128) << 64) | digits[0] as u128),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve::primes_upto;

    #[test]
    fn small_range_matches_sieve() {
        let primes = primes_upto(10_000);
        let mut idx = 0;
        for n in 0..=10_000u64 {
            let expected = idx < primes.len() && primes[idx] == n;
            if expected {
                idx += 1;
            }
            assert_eq!(is_prime_u64(n), expected, "n = {n}");
        }
    }

    #[test]
    fn known_values() {
        assert!(is_prime_u64(8191)); // 2^13 - 1
        assert!(!is_prime_u64(2047)); // 23 * 89
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(0));
        assert!(is_prime_u64(2));
        // strong pseudoprimes to base 2 must be rejected
        assert!(!is_prime_u64(3215031751));
        assert!(is_prime_u64(18_446_744_073_709_551_557)); // largest prime < 2^64
    }

    #[test]
    fn big_values() {
        let m127 = (BigUint::one() << 127u32) - 1u32;
        assert!(is_prime(&m127));
        let m128 = (BigUint::one() << 128u32) - 1u32; // 3*5*17*257*641*65537*274177*...
        assert!(!is_prime(&m128));
        // 2^89 - 1 is prime, 2^83 - 1 = 167 * (big prime)
        assert!(is_prime(&((BigUint::one() << 89u32) - 1u32)));
        assert!(!is_prime(&((BigUint::one() << 83u32) - 1u32)));
    }

    #[test]
    fn seeded_runs_agree_with_itself() {
        let n = (BigUint::one() << 107u32) - 1u32;
        assert_eq!(is_prime_with_seed(&n, 1), is_prime_with_seed(&n, 1));
        assert!(is_prime_with_seed(&n, 42));
    }

    #[test]
    fn conversions() {
        assert_eq!(to_u64(&BigUint::from(7u32)), Some(7));
        assert_eq!(to_u64(&(BigUint::one() << 64u32)), None);
        assert_eq!(to_u128(&(BigUint::one() << 64u32)), Some(1u128 << 64));
        assert_eq!(to_u128(&(BigUint::one() << 128u32)), None);
    }
}
