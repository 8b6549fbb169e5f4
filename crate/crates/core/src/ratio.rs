//! Exact rationals for divisor quotients.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// A positive rational in lowest terms. Used for the divisor-gap statistics
/// `Δ(n)` and `Δ₀(n)`, where float rounding at comparison boundaries would be
/// fatal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratio {
    #[serde(with = "crate::decimal")]
    numerator: BigUint,
    #[serde(with = "crate::decimal")]
    denominator: BigUint,
}

impl Ratio {
    /// Builds `numerator / denominator` reduced to lowest terms.
    ///
    /// Panics if either argument is zero; divisor quotients are always
    /// positive.
    pub fn new(numerator: BigUint, denominator: BigUint) -> Self {
        assert!(
            !numerator.is_zero() && !denominator.is_zero(),
            "Ratio requires positive numerator and denominator"
        );
        let g = numerator.gcd(&denominator);
        Ratio {
            numerator: &numerator / &g,
            denominator: &denominator / &g,
        }
    }

    pub fn one() -> Self {
        Ratio {
            numerator: BigUint::one(),
            denominator: BigUint::one(),
        }
    }

    pub fn from_integer(n: u64) -> Self {
        Ratio::new(BigUint::from(n), BigUint::one())
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    pub fn denominator(&self) -> &BigUint {
        &self.denominator
    }

    pub fn is_integer(&self) -> bool {
        self.denominator.is_one()
    }

    pub fn to_f64(&self) -> f64 {
        // Exact conversion can overflow f64 for huge divisors; fall back to a
        // bit-length based quotient in that case.
        match (self.numerator.to_f64(), self.denominator.to_f64()) {
            (Some(a), Some(b)) if a.is_finite() && b.is_finite() => a / b,
            _ => {
                let shift = self.numerator.bits().max(self.denominator.bits()).saturating_sub(64);
                let a = (&self.numerator >> shift).to_f64().unwrap_or(f64::INFINITY);
                let b = (&self.denominator >> shift).to_f64().unwrap_or(f64::INFINITY);
                a / b
            }
        }
    }

    /// Exact comparison against an integer `z` (`self <= z`).
    pub fn le_u64(&self, z: u64) -> bool {
        self.numerator <= &self.denominator * BigUint::from(z)
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        // a/b vs c/d  <=>  a*d vs c*b, all positive
        (&self.numerator * &other.denominator).cmp(&(&other.numerator * &self.denominator))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, self.denominator)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: u64, b: u64) -> Ratio {
        Ratio::new(BigUint::from(a), BigUint::from(b))
    }

    #[test]
    fn reduces_to_lowest_terms() {
        let x = r(6, 4);
        assert_eq!(x.numerator(), &BigUint::from(3u32));
        assert_eq!(x.denominator(), &BigUint::from(2u32));
    }

    #[test]
    fn ordering_is_cross_multiplied() {
        assert!(r(3, 2) < r(2, 1));
        assert!(r(4, 3) < r(3, 2));
        assert_eq!(r(2, 1), r(4, 2));
        assert!(r(5, 1) > r(9, 2));
    }

    #[test]
    fn integer_comparison_is_exact() {
        assert!(r(2, 1).le_u64(2));
        assert!(!r(2000000001, 1000000000).le_u64(2));
        assert!(r(1999999999, 1000000000).le_u64(2));
    }

    #[test]
    fn display() {
        assert_eq!(r(3, 2).to_string(), "3/2");
        assert_eq!(r(4, 2).to_string(), "2");
    }
}
