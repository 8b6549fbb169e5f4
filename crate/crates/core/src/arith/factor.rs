//! Budgeted integer factoring: perfect-power peeling, trial division, then
//! Brent-style cycle finding with a deterministic constant schedule.

use std::time::Instant;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::montgomery::{gcd_u128, Mont128};
use super::primality::{is_prime_with_seed, mul_mod_u64, to_u128, to_u64};
use super::FactoredInteger;

/// Resource caps for a factoring call. Identical budgets on identical inputs
/// give identical outputs: the iteration caps and the seed drive every
/// decision, while the wall-clock cap is a coarse safety valve checked only
/// at batch boundaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorBudget {
    /// Trial division tests divisors up to this bound (2, 3 and 5 are always
    /// stripped so the cycle finder sees odd input).
    pub trial_division_bound: u64,
    /// Total cycle-finding iterations across the whole call.
    pub rho_iteration_cap: u64,
    /// Coarse wall-clock cap; generous by default so the deterministic caps
    /// bind first.
    pub wall_clock_cap_ms: u64,
    /// Seeds the rho constant schedule and the large-input witness schedule.
    pub rng_seed: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            trial_division_bound: 100_000,
            rho_iteration_cap: 1 << 26,
            wall_clock_cap_ms: 120_000,
            rng_seed: 1,
        }
    }
}

impl FactorBudget {
    pub fn with_seed(seed: u64) -> Self {
        FactorBudget {
            rng_seed: seed,
            ..Default::default()
        }
    }

    /// True when `self` strictly exceeds the recorded caps in some dimension;
    /// the cache uses this to decide whether a Partial record is worth
    /// retrying.
    pub fn exceeds(&self, trial_bound: u64, rho_cap: u64) -> bool {
        self.trial_division_bound > trial_bound || self.rho_iteration_cap > rho_cap
    }
}

pub(crate) struct Session {
    started: Instant,
    budget: FactorBudget,
    rho_iters_left: u64,
}

impl Session {
    pub(crate) fn new(budget: &FactorBudget) -> Self {
        Session {
            started: Instant::now(),
            budget: *budget,
            rho_iters_left: budget.rho_iteration_cap,
        }
    }

    fn out_of_time(&self) -> bool {
        self.started.elapsed().as_millis() as u64 >= self.budget.wall_clock_cap_ms
    }
}

/// Factors `m >= 1` within the budget. Never fails: an exhausted budget
/// leaves the unfinished part as a composite cofactor with Partial status.
pub fn factor_integer(m: &BigUint, budget: &FactorBudget) -> FactoredInteger {
    let mut session = Session::new(budget);
    factor_in_session(m, &mut session)
}

/// Same pipeline under an existing session, so one budget can cover a batch
/// of related calls (the cyclotomic parts of a single Mersenne number share
/// their budget this way).
pub(crate) fn factor_in_session(m: &BigUint, session: &mut Session) -> FactoredInteger {
    assert!(!m.is_zero(), "factor_integer requires m >= 1");
    let mut primes: Vec<(BigUint, u32)> = Vec::new();
    let mut cofactor = BigUint::one();

    if m.is_one() {
        return FactoredInteger::assemble(m.clone(), primes, cofactor);
    }

    // stage 1: peel a perfect power so the stages below work on the smallest
    // possible base
    let (rest, power) = peel_perfect_power(m);

    // stage 2: trial division
    let rest = trial_divide(rest, power, &mut primes, session);

    // stage 3: cycle finding on whatever composite part remains
    let mut pending: Vec<(BigUint, u32)> = Vec::new();
    if !rest.is_one() {
        pending.push((rest, power));
    }
    while let Some((chunk, mult)) = pending.pop() {
        if is_prime_with_seed(&chunk, session.budget.rng_seed) {
            push_prime(&mut primes, chunk, mult);
            continue;
        }
        let (chunk, extra_pow) = peel_perfect_power(&chunk);
        let mult = mult * extra_pow;
        if extra_pow > 1 && is_prime_with_seed(&chunk, session.budget.rng_seed) {
            push_prime(&mut primes, chunk, mult);
            continue;
        }
        match rho_split(&chunk, session) {
            Some(d) => {
                let q = &chunk / &d;
                pending.push((d, mult));
                pending.push((q, mult));
            }
            None => {
                // budget exhausted; chunk is composite (it failed the
                // primality test above)
                cofactor *= chunk.pow(mult);
            }
        }
    }

    FactoredInteger::assemble(m.clone(), primes, cofactor)
}

pub(crate) fn push_prime(primes: &mut Vec<(BigUint, u32)>, p: BigUint, e: u32) {
    if let Some(entry) = primes.iter_mut().find(|(q, _)| *q == p) {
        entry.1 += e;
    } else {
        primes.push((p, e));
    }
}

fn nth_root_u64(m: u64, k: u32) -> u64 {
    let mut r = (m as f64).powf(1.0 / k as f64) as u64;
    while r.checked_add(1).and_then(|v| v.checked_pow(k)).is_some_and(|v| v <= m) {
        r += 1;
    }
    while r > 0 && r.checked_pow(k).map_or(true, |v| v > m) {
        r -= 1;
    }
    r
}

const ROOT_EXPONENTS: [u32; 18] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61];

/// Largest `k` with `m = base^k`; returns `(base, k)`, `k = 1` when `m` is
/// not a proper power.
fn peel_perfect_power(m: &BigUint) -> (BigUint, u32) {
    if let Some(m64) = to_u64(m) {
        let (b, k) = peel_perfect_power_u64(m64);
        return (BigUint::from(b), k);
    }
    let mut base = m.clone();
    let mut power = 1u32;
    'outer: loop {
        let bits = base.bits() as u32;
        for &k in ROOT_EXPONENTS.iter().take_while(|&&k| k <= bits) {
            let root = base.nth_root(k);
            if root > BigUint::one() && root.pow(k) == base {
                base = root;
                power *= k;
                continue 'outer;
            }
        }
        return (base, power);
    }
}

fn peel_perfect_power_u64(m: u64) -> (u64, u32) {
    let mut base = m;
    let mut power = 1u32;
    if base < 4 {
        return (base, power);
    }
    'outer: loop {
        let bits = 64 - base.leading_zeros();
        for &k in ROOT_EXPONENTS.iter().take_while(|&&k| k <= bits) {
            let root = nth_root_u64(base, k);
            if root > 1 && root.checked_pow(k) == Some(base) {
                base = root;
                power *= k;
                continue 'outer;
            }
        }
        return (base, power);
    }
}

/// Divides out every prime up to the budget's trial bound; 2, 3 and 5 are
/// always removed. Returns the unfactored remainder (1, a prime, or a
/// composite with no factor below the bound).
fn trial_divide(
    mut rest: BigUint,
    power: u32,
    primes: &mut Vec<(BigUint, u32)>,
    session: &mut Session,
) -> BigUint {
    let bound = session.budget.trial_division_bound;
    for d in [2u64, 3, 5] {
        let big_d = BigUint::from(d);
        let mut e = 0u32;
        loop {
            let (q, r) = rest.div_rem(&big_d);
            if r.is_zero() {
                rest = q;
                e += 1;
            } else {
                break;
            }
        }
        if e > 0 {
            push_prime(primes, big_d, e * power);
        }
    }

    // 2/3-coprime wheel from 7, switching to native arithmetic as soon as
    // the remainder fits
    let mut d = 7u64;
    let mut step_four = true;
    let mut ticks = 0u32;
    while d <= bound && !rest.is_one() {
        if let Some(r64) = to_u64(&rest) {
            let (facs, tail) = trial_divide_u64(r64, d, bound);
            for (p, e) in facs {
                push_prime(primes, BigUint::from(p), e * power);
            }
            return BigUint::from(tail);
        }
        if ticks == 0 && session.out_of_time() {
            break;
        }
        ticks = (ticks + 1) % 4096;
        let big_d = BigUint::from(d);
        let mut e = 0u32;
        loop {
            let (q, r) = rest.div_rem(&big_d);
            if r.is_zero() {
                rest = q;
                e += 1;
            } else {
                break;
            }
        }
        if e > 0 {
            push_prime(primes, big_d, e * power);
        }
        d += if step_four { 4 } else { 2 };
        step_four = !step_four;
    }
    rest
}

/// Wheel over `[start, bound]` on a native integer. Returns the factors found
/// and the remainder; the remainder is prime (already certified by the scan)
/// if the wheel passed its square root, otherwise it needs a primality test.
fn trial_divide_u64(mut rest: u64, start: u64, bound: u64) -> (Vec<(u64, u32)>, u64) {
    let mut out = Vec::new();
    let mut d = start;
    let mut step_four = (start % 6) == 1; // 6k+1 -> gap 4, 6k-1 -> gap 2
    while d <= bound && d * d <= rest {
        if rest % d == 0 {
            let mut e = 0u32;
            while rest % d == 0 {
                rest /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if step_four { 4 } else { 2 };
        step_four = !step_four;
    }
    if rest > 1 && d * d > rest {
        // no factor up to sqrt: rest is prime
        out.push((rest, 1));
        rest = 1;
    }
    (out, rest)
}

/// One factor of odd composite `n`, or None when the iteration budget runs
/// dry. The polynomial constant walks the deterministic schedule
/// `seed, seed+1, ...`.
fn rho_split(n: &BigUint, session: &mut Session) -> Option<BigUint> {
    debug_assert!(n.is_odd());
    let mut attempt = 0u64;
    loop {
        if session.rho_iters_left == 0 || session.out_of_time() {
            return None;
        }
        let c_index = session.budget.rng_seed.wrapping_add(attempt);
        let found = if let Some(n64) = to_u64(n) {
            brent_u64(n64, c_index, session).map(BigUint::from)
        } else if let Some(n128) = to_u128(n) {
            if n128 < 1u128 << 126 {
                brent_u128(n128, c_index, session).map(u128_to_big)
            } else {
                brent_big(n, c_index, session)
            }
        } else {
            brent_big(n, c_index, session)
        };
        match found {
            Some(d) => return Some(d),
            None => attempt += 1, // this constant degenerated or ran out
        }
    }
}

/// Iterations a single constant is allowed before the schedule advances.
const ATTEMPT_CAP: u64 = 1 << 24;
const BATCH: u64 = 128;

fn brent_u64(n: u64, c_index: u64, session: &mut Session) -> Option<u64> {
    #[inline]
    fn step(y: u64, c: u64, n: u64) -> u64 {
        let v = mul_mod_u64(y, y, n) + c;
        if v >= n {
            v - n
        } else {
            v
        }
    }
    debug_assert!(n > 5);
    let c = 1 + (c_index % (n - 3));
    let cap = ATTEMPT_CAP.min(session.rho_iters_left);
    let mut used = 0u64;

    let mut y = 2u64 % n;
    let mut r: u64 = 1;
    let mut q = 1u64;
    let mut g = 1u64;
    let mut x;
    let mut ys;
    loop {
        x = y;
        for _ in 0..r {
            y = step(y, c, n);
        }
        let mut k: u64 = 0;
        ys = y;
        while k < r && g == 1 {
            ys = y;
            let lim = BATCH.min(r - k);
            for _ in 0..lim {
                y = step(y, c, n);
                q = mul_mod_u64(q, x.abs_diff(y), n);
            }
            g = gcd_u128(q as u128, n as u128) as u64;
            k += lim;
            used += lim;
            if used >= cap {
                break;
            }
        }
        if g != 1 || used >= cap {
            break;
        }
        r *= 2;
    }
    session.rho_iters_left = session.rho_iters_left.saturating_sub(used);
    if g == 1 {
        return None;
    }
    if g == n {
        g = 1;
        while g == 1 {
            ys = step(ys, c, n);
            g = gcd_u128(x.abs_diff(ys) as u128, n as u128) as u64;
        }
    }
    (g != n).then_some(g)
}

fn brent_u128(n: u128, c_index: u64, session: &mut Session) -> Option<u128> {
    // Montgomery residues are a unit multiple of the plain ones, so gcds
    // against n are unaffected and the whole walk can stay in the domain.
    let ctx = Mont128::new(n);
    let c = 1 + ((c_index as u128) % (n - 3));
    let c_m = ctx.to_mont(c);
    let cap = ATTEMPT_CAP.min(session.rho_iters_left);
    let mut used = 0u64;
    let step = |y: u128| ctx.add(ctx.mul(y, y), c_m);

    let mut y = ctx.to_mont(2);
    let mut r: u64 = 1;
    let mut q = ctx.to_mont(1);
    let mut g: u128 = 1;
    let mut x;
    let mut ys;
    loop {
        x = y;
        for _ in 0..r {
            y = step(y);
        }
        let mut k: u64 = 0;
        ys = y;
        while k < r && g == 1 {
            ys = y;
            let lim = BATCH.min(r - k);
            for _ in 0..lim {
                y = step(y);
                q = ctx.mul(q, ctx.sub(x, y));
            }
            g = gcd_u128(ctx.from_mont(q), n);
            k += lim;
            used += lim;
            if used >= cap {
                break;
            }
        }
        if g != 1 || used >= cap {
            break;
        }
        r *= 2;
    }
    session.rho_iters_left = session.rho_iters_left.saturating_sub(used);
    if g == 1 {
        return None;
    }
    if g == n {
        g = 1;
        while g == 1 {
            ys = step(ys);
            g = gcd_u128(ctx.from_mont(ctx.sub(x, ys)), n);
        }
    }
    (g != n).then_some(g)
}

fn brent_big(n: &BigUint, c_index: u64, session: &mut Session) -> Option<BigUint> {
    fn step(y: BigUint, c: &BigUint, n: &BigUint) -> BigUint {
        (&y * &y + c) % n
    }
    let c = BigUint::from(c_index) % (n - 3u32) + 1u32;
    let cap = ATTEMPT_CAP.min(session.rho_iters_left);
    let mut used = 0u64;

    let mut y = BigUint::from(2u32);
    let mut r: u64 = 1;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut x;
    let mut ys;
    loop {
        x = y.clone();
        for _ in 0..r {
            y = step(y, &c, n);
        }
        let mut k: u64 = 0;
        ys = y.clone();
        while k < r && g.is_one() {
            ys = y.clone();
            let lim = BATCH.min(r - k);
            for _ in 0..lim {
                y = step(y, &c, n);
                let d = if x > y { &x - &y } else { &y - &x };
                q = q * d % n;
            }
            g = q.gcd(n);
            k += lim;
            used += lim;
            if used >= cap || session.out_of_time() {
                break;
            }
        }
        if !g.is_one() || used >= cap || session.out_of_time() {
            break;
        }
        r *= 2;
    }
    session.rho_iters_left = session.rho_iters_left.saturating_sub(used);
    if g.is_one() {
        return None;
    }
    if &g == n {
        g = BigUint::one();
        while g.is_one() {
            ys = step(ys, &c, n);
            let d = if x > ys { &x - &ys } else { &ys - &x };
            g = d.gcd(n);
        }
    }
    (&g != n).then_some(g)
}

pub(crate) fn u128_to_big(v: u128) -> BigUint {
    let mut b = BigUint::from((v >> 64) as u64);
    b <<= 64u32;
    b |= BigUint::from(v as u64);
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Status;

    fn big(v: u128) -> BigUint {
        u128_to_big(v)
    }

    #[test]
    fn factors_small_examples() {
        let f = factor_integer(&big(4095), &FactorBudget::default());
        assert_eq!(f.status(), Status::Complete);
        assert_eq!(f.factors_u64(), vec![(3, 2), (5, 1), (7, 1), (13, 1)]);

        let f = factor_integer(&big(1), &FactorBudget::default());
        assert_eq!(f.status(), Status::Complete);
        assert!(f.factors().is_empty());
        assert!(f.cofactor().is_one());

        // 2^29 - 1
        let f = factor_integer(&big(536_870_911), &FactorBudget::default());
        assert_eq!(f.factors_u64(), vec![(233, 1), (1103, 1), (2089, 1)]);
    }

    #[test]
    fn factors_perfect_powers() {
        let f = factor_integer(&big(1024), &FactorBudget::default());
        assert_eq!(f.factors_u64(), vec![(2, 10)]);
        // square of a prime above the trial bound
        let p = 1_000_003u128;
        let f = factor_integer(&big(p * p), &FactorBudget::default());
        assert_eq!(f.factors_u64(), vec![(1_000_003, 2)]);
        // 3^8 * 7^4 = (3^2 * 7)^4
        let f = factor_integer(&big(3u128.pow(8) * 7u128.pow(4)), &FactorBudget::default());
        assert_eq!(f.factors_u64(), vec![(3, 8), (7, 4)]);
    }

    #[test]
    fn nth_roots() {
        assert_eq!(nth_root_u64(8, 3), 2);
        assert_eq!(nth_root_u64(7, 3), 1);
        assert_eq!(nth_root_u64(u64::MAX, 2), (1u64 << 32) - 1);
        assert_eq!(peel_perfect_power_u64(729), (3, 6));
        assert_eq!(peel_perfect_power_u64(64), (2, 6));
        assert_eq!(peel_perfect_power_u64(60), (60, 1));
    }

    #[test]
    fn rho_finds_large_factors() {
        // 2^101 - 1 = 7432339208719 * 341117531003194129, both prime: the
        // hardest split the Mersenne range below 120 needs.
        let n = (BigUint::one() << 101u32) - 1u32;
        let f = factor_integer(&n, &FactorBudget::default());
        assert_eq!(f.status(), Status::Complete, "cofactor {}", f.cofactor());
        assert_eq!(
            f.factors_u64(),
            vec![(7_432_339_208_719, 1), (341_117_531_003_194_129, 1)]
        );
    }

    #[test]
    fn budget_exhaustion_is_partial_not_wrong() {
        // semiprime with 40-bit factors; a hundred rho iterations cannot
        // split it
        let n = big(550_960_620_899u128 * 567_382_586_771);
        let tiny = FactorBudget {
            trial_division_bound: 100,
            rho_iteration_cap: 128,
            wall_clock_cap_ms: 120_000,
            rng_seed: 1,
        };
        let f = factor_integer(&n, &tiny);
        assert_eq!(f.status(), Status::Partial);
        assert_eq!(f.cofactor(), &n);
        assert!(f.factors().is_empty());
        assert!(f.verify());
    }

    #[test]
    fn determinism() {
        let n = big(0xdead_beef_cafe_f00du128 * 0x1234_5678_9abcu128);
        let b = FactorBudget::with_seed(7);
        let f1 = factor_integer(&n, &b);
        let f2 = factor_integer(&n, &b);
        assert_eq!(f1, f2);
        assert_eq!(f1.status(), Status::Complete);
    }
}
