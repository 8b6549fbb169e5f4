//! Prime sieves: a growable segmented prime list plus the array sieves
//! (smallest prime factor, Euler phi) the censuses are built on.

const SEGMENT: u64 = 1 << 18;

/// Primes up to `limit` by a plain sieve of Eratosthenes.
pub fn primes_upto(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut m = p * p;
            while m <= n {
                composite[m] = true;
                m += p;
            }
        }
    }
    primes
}

/// A prime list that extends itself with segmented sieving as callers ask for
/// larger bounds. `G(x,2)` is tiny compared to `x`, so laziness dominates:
/// the dense-divisor generator rarely needs primes anywhere near `x`.
#[derive(Debug, Clone)]
pub struct PrimeSource {
    primes: Vec<u64>,
    sieved_to: u64,
}

impl Default for PrimeSource {
    fn default() -> Self {
        Self::new()
    }
}

impl PrimeSource {
    pub fn new() -> Self {
        PrimeSource {
            primes: primes_upto(1 << 10),
            sieved_to: 1 << 10,
        }
    }

    /// All primes `<= bound`, sieving further segments if necessary.
    pub fn primes_upto(&mut self, bound: u64) -> &[u64] {
        self.ensure(bound);
        let cut = self.primes.partition_point(|&p| p <= bound);
        &self.primes[..cut]
    }

    /// The `i`-th prime (0-based), extending the sieve as needed.
    pub fn nth(&mut self, i: usize) -> u64 {
        while self.primes.len() <= i {
            let target = self.sieved_to.saturating_mul(2);
            self.ensure(target);
        }
        self.primes[i]
    }

    /// Number of primes currently `<= bound` without extending past it.
    pub fn count_upto(&mut self, bound: u64) -> usize {
        self.ensure(bound);
        self.primes.partition_point(|&p| p <= bound)
    }

    fn ensure(&mut self, bound: u64) {
        while self.sieved_to < bound {
            let lo = self.sieved_to + 1;
            let hi = (self.sieved_to + SEGMENT).min(bound.max(self.sieved_to * 2));
            self.sieve_segment(lo, hi);
            self.sieved_to = hi;
        }
    }

    fn sieve_segment(&mut self, lo: u64, hi: u64) {
        debug_assert!(lo > 1);
        // base primes up to sqrt(hi) are always present: segments at most
        // double the sieved range.
        let root = hi.isqrt();
        debug_assert!(self.sieved_to >= root);
        let len = (hi - lo + 1) as usize;
        let mut composite = vec![false; len];
        for &p in self.primes.iter().take_while(|&&p| p <= root) {
            let mut m = lo.div_ceil(p).max(p) * p;
            while m <= hi {
                composite[(m - lo) as usize] = true;
                m += p;
            }
        }
        for (off, &c) in composite.iter().enumerate() {
            if !c {
                self.primes.push(lo + off as u64);
            }
        }
    }
}

/// Smallest-prime-factor table for `0..=limit`; `spf[0] = 0`, `spf[1] = 1`.
pub fn spf_sieve(limit: usize) -> Vec<u32> {
    assert!(limit < u32::MAX as usize, "spf_sieve is a u32 table");
    let mut spf: Vec<u32> = (0..=limit as u32).collect();
    let mut i = 2usize;
    while i * i <= limit {
        if spf[i] == i as u32 {
            let mut j = i * i;
            while j <= limit {
                if spf[j] == j as u32 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
        i += 1;
    }
    spf
}

/// Factor `n` using a smallest-prime-factor table. Ascending primes.
pub fn factor_with_spf(mut n: u64, spf: &[u32]) -> Vec<(u64, u32)> {
    debug_assert!((n as usize) < spf.len());
    let mut out = Vec::new();
    while n > 1 {
        let p = spf[n as usize] as u64;
        let mut e = 0u32;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        out.push((p, e));
    }
    out
}

/// All divisors of `n` given its prime factorization, sorted ascending.
pub fn divisors_from_factors(factors: &[(u64, u32)]) -> Vec<u64> {
    let mut divs = vec![1u64];
    for &(p, e) in factors {
        let prev = divs.len();
        let mut pe = 1u64;
        for _ in 0..e {
            pe *= p;
            for i in 0..prev {
                divs.push(divs[i] * pe);
            }
        }
    }
    divs.sort_unstable();
    divs
}

/// Euler phi for `0..=limit` as a table.
pub fn totient_sieve(limit: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=limit as u64).collect();
    for i in 2..=limit {
        if phi[i] == i as u64 {
            // i is prime
            let mut j = i;
            while j <= limit {
                phi[j] -= phi[j] / i as u64;
                j += i;
            }
        }
    }
    phi
}

/// Largest prime factor of `n` via repeated smallest-factor stripping;
/// returns 1 for `n = 1`.
pub fn largest_prime_factor_with_spf(mut n: u64, spf: &[u32]) -> u64 {
    let mut largest = 1u64;
    while n > 1 {
        let p = spf[n as usize] as u64;
        largest = largest.max(p);
        while n % p == 0 {
            n /= p;
        }
    }
    largest
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_sieve_counts() {
        assert_eq!(primes_upto(10), vec![2, 3, 5, 7]);
        assert_eq!(primes_upto(1).len(), 0);
        assert_eq!(primes_upto(100_000).len(), 9592);
    }

    #[test]
    fn prime_source_matches_simple_sieve() {
        let mut src = PrimeSource::new();
        let got = src.primes_upto(300_000).to_vec();
        assert_eq!(got, primes_upto(300_000));
        // growth across many small requests lands on the same list
        let mut src2 = PrimeSource::new();
        for bound in [1000, 5000, 70_000, 130_000, 300_000] {
            src2.primes_upto(bound);
        }
        assert_eq!(src2.primes_upto(300_000), got.as_slice());
    }

    #[test]
    fn nth_prime() {
        let mut src = PrimeSource::new();
        assert_eq!(src.nth(0), 2);
        assert_eq!(src.nth(999), 7919);
    }

    #[test]
    fn spf_and_divisors() {
        let spf = spf_sieve(100);
        assert_eq!(factor_with_spf(12, &spf), vec![(2, 2), (3, 1)]);
        assert_eq!(factor_with_spf(97, &spf), vec![(97, 1)]);
        assert_eq!(
            divisors_from_factors(&factor_with_spf(12, &spf)),
            vec![1, 2, 3, 4, 6, 12]
        );
        assert_eq!(divisors_from_factors(&[]), vec![1]);
    }

    #[test]
    fn totients() {
        let phi = totient_sieve(30);
        let brute: Vec<u64> = (0..=30)
            .map(|n| (1..=n).filter(|k| gcd(*k, n) == 1).count() as u64)
            .collect();
        assert_eq!(&phi[1..], &brute[1..]);
    }

    #[test]
    fn largest_prime_factor_table() {
        let spf = spf_sieve(100);
        assert_eq!(largest_prime_factor_with_spf(1, &spf), 1);
        assert_eq!(largest_prime_factor_with_spf(12, &spf), 3);
        assert_eq!(largest_prime_factor_with_spf(97, &spf), 97);
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
}
