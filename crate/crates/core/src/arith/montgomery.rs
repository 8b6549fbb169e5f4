//! Montgomery arithmetic for odd moduli below 2^126. The cycle-finding
//! stage spends millions of modular multiplications on 60-120 bit inputs;
//! doing those through heap-allocated big integers would dominate the whole
//! factoring pipeline.

/// Montgomery context with R = 2^128 for an odd modulus `n < 2^126`.
#[derive(Debug, Clone, Copy)]
pub struct Mont128 {
    pub n: u128,
    neg_inv: u128, // -n^{-1} mod 2^128
}

/// 128x128 -> 256 bit product as (hi, lo).
#[inline]
fn wide_mul(a: u128, b: u128) -> (u128, u128) {
    const MASK: u128 = (1u128 << 64) - 1;
    let (a1, a0) = (a >> 64, a & MASK);
    let (b1, b0) = (b >> 64, b & MASK);

    let ll = a0 * b0;
    let lh = a0 * b1;
    let hl = a1 * b0;
    let hh = a1 * b1;

    let mid = (ll >> 64) + (lh & MASK) + (hl & MASK);
    let lo = (mid << 64) | (ll & MASK);
    let hi = hh + (lh >> 64) + (hl >> 64) + (mid >> 64);
    (hi, lo)
}

impl Mont128 {
    pub fn new(n: u128) -> Self {
        assert!(n & 1 == 1 && n > 1, "modulus must be odd and > 1");
        assert!(n < 1u128 << 126, "modulus too large for Mont128");
        // Newton-Hensel: each step doubles the number of correct low bits.
        let mut inv: u128 = 1;
        for _ in 0..7 {
            inv = inv.wrapping_mul(2u128.wrapping_sub(n.wrapping_mul(inv)));
        }
        debug_assert_eq!(n.wrapping_mul(inv), 1);
        Mont128 {
            n,
            neg_inv: inv.wrapping_neg(),
        }
    }

    /// REDC: returns a * b * 2^-128 mod n.
    #[inline]
    pub fn mul(&self, a: u128, b: u128) -> u128 {
        let (t_hi, t_lo) = wide_mul(a, b);
        let m = t_lo.wrapping_mul(self.neg_inv);
        let (mn_hi, mn_lo) = wide_mul(m, self.n);
        // t + m*n is divisible by 2^128; the low halves cancel exactly.
        let (_, carry) = t_lo.overflowing_add(mn_lo);
        let mut r = t_hi + mn_hi + carry as u128; // < 2n < 2^127, no overflow
        if r >= self.n {
            r -= self.n;
        }
        r
    }

    /// Converts into the Montgomery domain: a * 2^128 mod n.
    pub fn to_mont(&self, a: u128) -> u128 {
        let mut r = a % self.n;
        for _ in 0..128 {
            r <<= 1;
            if r >= self.n {
                r -= self.n;
            }
        }
        r
    }

    /// Leaves the Montgomery domain.
    pub fn from_mont(&self, a: u128) -> u128 {
        self.mul(a, 1)
    }

    #[inline]
    pub fn add(&self, a: u128, b: u128) -> u128 {
        let s = a + b;
        if s >= self.n {
            s - self.n
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u128, b: u128) -> u128 {
        if a >= b {
            a - b
        } else {
            self.n - b + a
        }
    }
}

pub fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        a %= b;
        std::mem::swap(&mut a, &mut b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn wide_mul_matches_bigint() {
        let cases = [
            (u128::MAX, u128::MAX),
            (0x1234_5678_9abc_def0_1122_3344_5566_7788u128, 0xfeed_face_cafe_beef_0102_0304_0506_0708u128),
            (1u128 << 127, 3),
            (0, 12345),
        ];
        for (a, b) in cases {
            let (hi, lo) = wide_mul(a, b);
            let expect = BigUint::from(a) * BigUint::from(b);
            let got = (BigUint::from(hi) << 128u32) | BigUint::from(lo);
            assert_eq!(got, expect, "a={a} b={b}");
        }
    }

    #[test]
    fn montgomery_roundtrip_and_mul() {
        // mix of sizes, all odd
        let moduli: [u128; 4] = [
            101,
            0xffff_ffff_ffff_fff1,
            (1u128 << 101) - 1,
            (1u128 << 125) - 9,
        ];
        let mut x: u128 = 0x9e3779b97f4a7c15;
        for &n in &moduli {
            let ctx = Mont128::new(n);
            for _ in 0..50 {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let a = x % n;
                let b = x.rotate_left(41) % n;
                assert_eq!(ctx.from_mont(ctx.to_mont(a)), a);
                let am = ctx.to_mont(a);
                let bm = ctx.to_mont(b);
                let prod = ctx.from_mont(ctx.mul(am, bm));
                let expect = (BigUint::from(a) * BigUint::from(b)) % BigUint::from(n);
                assert_eq!(BigUint::from(prod), expect, "n={n} a={a} b={b}");
                assert_eq!(ctx.from_mont(ctx.add(am, bm)), (a + b) % n);
                let diff = ctx.from_mont(ctx.sub(am, bm));
                assert_eq!(BigUint::from(diff), (BigUint::from(n) + a - b) % BigUint::from(n));
            }
        }
    }

    #[test]
    fn gcd_basics() {
        assert_eq!(gcd_u128(12, 18), 6);
        assert_eq!(gcd_u128(0, 5), 5);
        assert_eq!(gcd_u128(7, 0), 7);
        assert_eq!(gcd_u128((1u128 << 101) - 1, 7_432_339_208_719), 7_432_339_208_719);
    }
}
