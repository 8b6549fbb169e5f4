//! Dense-divisor machinery: the gap statistics `Δ(n)` and `Δ₀(n)`, the
//! prime-chain characterisation of `Δ₀(n) <= z`, enumeration and counting of
//! `G(x,z) = { n <= x : Δ₀(n) <= z }`, and smooth-number counts.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, omega, tau, FactoredInteger};
use crate::error::ArithError;
use crate::ratio::Ratio;
use crate::sieve::{divisors_from_factors, factor_with_spf, spf_sieve, PrimeSource};

/// Gap statistics of one integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensityProfile {
    #[serde(with = "crate::decimal")]
    pub n: BigUint,
    pub delta0: Ratio,
    pub delta: Ratio,
    pub tau: u64,
    pub omega: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CountMethod {
    Generate,
    BruteForce,
}

/// Result of a `G(x,z)` census.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DenseCount {
    pub x: u64,
    pub z: u64,
    pub count: u64,
    pub method: CountMethod,
    /// `count * log x / (x * log z)`: constant-window check of the census.
    pub saias_ratio: f64,
}

/// Largest ratio of consecutive entries of a strictly increasing list,
/// as an exact rational. Empty gap lists give 1.
fn max_gap(sorted: &[BigUint]) -> Ratio {
    let mut best: Option<(&BigUint, &BigUint)> = None;
    for w in sorted.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        match best {
            None => best = Some((hi, lo)),
            Some((bn, bd)) => {
                if hi * bd > bn * lo {
                    best = Some((hi, lo));
                }
            }
        }
    }
    best.map_or_else(Ratio::one, |(n, d)| Ratio::new(n.clone(), d.clone()))
}

/// `Δ₀(n)`: the largest quotient of consecutive divisors; `Δ₀(1) = 1` by
/// convention (empty maximum).
pub fn delta0(f: &FactoredInteger) -> Result<Ratio, ArithError> {
    let divs = divisors(f)?;
    Ok(max_gap(&divs))
}

/// `Δ(n)`: the same maximum restricted to the `2^ω(n)` divisors `d` with
/// `n/d` squarefree. Undefined on 1.
pub fn delta(f: &FactoredInteger) -> Result<Ratio, ArithError> {
    if !f.is_complete() {
        return Err(ArithError::PartialFactorization);
    }
    if f.value().is_one() {
        return Err(ArithError::UndefinedOnOne);
    }
    // qualifying divisors are base * (product of a subset of the primes),
    // base = prod p^{e-1}
    let factors = f.factors();
    let mut base = BigUint::one();
    for (p, e) in factors {
        base *= p.pow(*e - 1);
    }
    let mut divs = vec![base];
    for (p, _) in factors {
        let prev = divs.len();
        for i in 0..prev {
            divs.push(&divs[i] * p);
        }
    }
    divs.sort_unstable();
    Ok(max_gap(&divs))
}

/// Both gap statistics plus `τ` and `ω` in one record.
pub fn density_profile(f: &FactoredInteger) -> Result<DensityProfile, ArithError> {
    Ok(DensityProfile {
        n: f.value().clone(),
        delta0: delta0(f)?,
        delta: delta(f)?,
        tau: tau(f)?,
        omega: omega(f)?,
    })
}

/// The chain criterion: with `n = p_1^{e_1} ... p_k^{e_k}` ascending,
/// `Δ₀(n) <= z` holds exactly when every `p_i <= z * prod_{j<i} p_j^{e_j}`.
/// Comparisons are exact; `n = 1` passes vacuously.
pub fn dense_chain_test(f: &FactoredInteger, z: u64) -> Result<bool, ArithError> {
    if !f.is_complete() {
        return Err(ArithError::PartialFactorization);
    }
    let z = BigUint::from(z);
    let mut prefix = BigUint::one();
    for (p, e) in f.factors() {
        if *p > &z * &prefix {
            return Ok(false);
        }
        prefix *= p.pow(*e);
    }
    Ok(true)
}

/// Streams the members of `G(x,z)` (including 1), each exactly once, by
/// depth-first extension of partial products: a member `m` with largest
/// prime index below `idx` grows by any prime `p = primes[idx..]` with
/// `p <= z*m` and any exponent keeping the product at most `x`.
pub fn generate_dense(x: u64, z: u64) -> DenseIter {
    assert!(x >= 1, "x must be positive");
    assert!(z >= 2, "z must be at least 2");
    DenseIter {
        x,
        z,
        primes: PrimeSource::new(),
        stack: vec![(1, 0)],
    }
}

pub struct DenseIter {
    x: u64,
    z: u64,
    primes: PrimeSource,
    stack: Vec<(u64, usize)>,
}

impl Iterator for DenseIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let (m, lo_idx) = self.stack.pop()?;
        // extension primes are capped both by the chain condition and by x
        let bound = (self.x / m).min(self.z.saturating_mul(m));
        let n_children = self.primes.count_upto(bound);
        let from = self.stack.len();
        for idx in lo_idx..n_children {
            let p = self.primes.nth(idx);
            let mut v = m * p; // v <= x by the bound on p
            loop {
                self.stack.push((v, idx + 1));
                if v > self.x / p {
                    break;
                }
                v *= p;
            }
        }
        // children were collected ascending; reverse so they pop in order
        self.stack[from..].reverse();
        Some(m)
    }
}

/// `#G(x,z)` by streaming the generator or by the definition (divisor lists
/// over a smallest-prime-factor sieve). The two routes are independent:
/// the brute force never consults the chain criterion.
pub fn count_dense(x: u64, z: u64, method: CountMethod) -> DenseCount {
    assert!(x >= 2, "x must be at least 2");
    assert!(z >= 2, "z must be at least 2");
    let count = match method {
        CountMethod::Generate => generate_dense(x, z).count() as u64,
        CountMethod::BruteForce => brute_force_count(x, z),
    };
    DenseCount {
        x,
        z,
        count,
        method,
        saias_ratio: saias_ratio_of(count, x, z),
    }
}

fn brute_force_count(x: u64, z: u64) -> u64 {
    let spf = spf_sieve(x as usize);
    let mut count = 1u64; // n = 1
    for n in 2..=x {
        let divs = divisors_from_factors(&factor_with_spf(n, &spf));
        if max_gap_le_u64(&divs, z) {
            count += 1;
        }
    }
    count
}

fn max_gap_le_u64(sorted: &[u64], z: u64) -> bool {
    sorted
        .windows(2)
        .all(|w| w[1] as u128 <= z as u128 * w[0] as u128)
}

fn saias_ratio_of(count: u64, x: u64, z: u64) -> f64 {
    count as f64 * (x as f64).ln() / (x as f64 * (z as f64).ln())
}

/// `#G(x,z) * log x / (x * log z)` using the generator route.
pub fn saias_ratio(x: u64, z: u64) -> f64 {
    assert!(x >= 2 && z >= 2);
    let count = generate_dense(x, z).count() as u64;
    saias_ratio_of(count, x, z)
}

/// `Ψ(x,y) = #{ n <= x : P(n) <= y }`, counting `n = 1`; smallest-prime-
/// factor sieve.
pub fn smooth_count(x: u64, y: u64) -> u64 {
    assert!(x >= 1 && y >= 1);
    let spf = spf_sieve(x as usize);
    let mut count = 1u64; // n = 1 is vacuously smooth
    'outer: for n in 2..=x {
        let mut m = n;
        while m > 1 {
            let p = spf[m as usize] as u64;
            if p > y {
                continue 'outer;
            }
            while m % p == 0 {
                m /= p;
            }
        }
        count += 1;
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fac(n: u64) -> FactoredInteger {
        FactoredInteger::of_u64(n)
    }

    fn ratio(a: u64, b: u64) -> Ratio {
        Ratio::new(BigUint::from(a), BigUint::from(b))
    }

    #[test]
    fn delta0_examples() {
        assert_eq!(delta0(&fac(12)).unwrap(), ratio(2, 1));
        assert_eq!(delta0(&fac(97)).unwrap(), ratio(97, 1));
        assert_eq!(delta0(&fac(1)).unwrap(), Ratio::one());
        // 60: divisors 1,2,3,4,5,6,10,12,15,20,30,60 -> max gap 2
        assert_eq!(delta0(&fac(60)).unwrap(), ratio(2, 1));
        // 10: 1,2,5,10 -> 5/2
        assert_eq!(delta0(&fac(10)).unwrap(), ratio(5, 2));
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&fac(12)).unwrap(), ratio(2, 1));
        assert_eq!(delta(&fac(30)).unwrap(), ratio(2, 1));
        assert_eq!(delta(&fac(4)).unwrap(), ratio(2, 1));
        assert_eq!(delta(&fac(1)), Err(ArithError::UndefinedOnOne));
        // 12: qualifying divisors {2,4,6,12}
        let f = fac(12);
        let mut base = BigUint::one();
        for (p, e) in f.factors() {
            base *= p.pow(*e - 1);
        }
        assert_eq!(base, BigUint::from(2u32));
    }

    #[test]
    fn chain_test_examples() {
        assert!(dense_chain_test(&fac(12), 2).unwrap());
        assert!(!dense_chain_test(&fac(15), 2).unwrap());
        assert!(dense_chain_test(&fac(1), 2).unwrap());
        // boundary is inclusive: 3 <= 3 * 1
        assert!(dense_chain_test(&fac(3), 3).unwrap());
        assert!(!dense_chain_test(&fac(3), 2).unwrap());
    }

    #[test]
    fn generator_examples() {
        let members: Vec<u64> = generate_dense(10, 2).collect();
        let mut sorted = members.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![1, 2, 4, 6, 8]);

        let mut members: Vec<u64> = generate_dense(10, 3).collect();
        members.sort_unstable();
        assert_eq!(members, vec![1, 2, 3, 4, 6, 8, 9, 10]);

        // z >= x: everything qualifies
        let all: Vec<u64> = generate_dense(12, 12).collect();
        assert_eq!(all.len(), 12);
    }

    #[test]
    fn generator_emits_no_duplicates() {
        let members: Vec<u64> = generate_dense(5000, 5).collect();
        let mut dedup = members.clone();
        dedup.sort_unstable();
        dedup.dedup();
        assert_eq!(members.len(), dedup.len());
    }

    #[test]
    fn census_methods_agree() {
        for (x, z) in [(10u64, 2u64), (10, 3), (10, 10), (1000, 2), (1000, 5), (777, 30)] {
            let a = count_dense(x, z, CountMethod::Generate);
            let b = count_dense(x, z, CountMethod::BruteForce);
            assert_eq!(a.count, b.count, "x={x} z={z}");
        }
        assert_eq!(count_dense(10, 2, CountMethod::BruteForce).count, 5);
        assert_eq!(count_dense(10, 3, CountMethod::Generate).count, 8);
        assert_eq!(count_dense(10, 10, CountMethod::Generate).count, 10);
    }

    #[test]
    fn saias_ratio_examples() {
        let r = saias_ratio(10, 2);
        assert!((r - 5.0 * 10f64.ln() / (10.0 * 2f64.ln())).abs() < 1e-12);
        assert!((r - 1.661).abs() < 1e-3);
        assert!((saias_ratio(10, 10) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn smooth_examples() {
        assert_eq!(smooth_count(10, 2), 4); // 1, 2, 4, 8
        assert_eq!(smooth_count(16, 3), 9); // 1,2,3,4,6,8,9,12,16
        assert_eq!(smooth_count(10, 10), 10);
        assert_eq!(smooth_count(100, 100), 100);
        assert_eq!(smooth_count(1, 1), 1);
        assert_eq!(smooth_count(100, 1), 1);
    }

    #[test]
    fn profile_bundles_everything() {
        let p = density_profile(&fac(12)).unwrap();
        assert_eq!(p.delta0, ratio(2, 1));
        assert_eq!(p.delta, ratio(2, 1));
        assert_eq!(p.tau, 6);
        assert_eq!(p.omega, 2);
    }
}
