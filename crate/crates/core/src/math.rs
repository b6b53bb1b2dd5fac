//! Float helpers over `libm`, exact fractions and dyadic threshold comparison.

use core::cmp::Ordering;
use core::fmt;

use serde::Serialize;

/// Slack added to every upper/lower bound comparison.
pub const BOUND_SLACK: f64 = 1e-12;
/// Absolute tolerance for analytic identities.
pub const IDENTITY_TOL: f64 = 1e-9;

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[inline]
pub fn powi(x: f64, k: i32) -> f64 {
    libm::pow(x, k as f64)
}

#[inline]
pub fn ceil(x: f64) -> f64 {
    libm::ceil(x)
}

#[inline]
pub fn floor(x: f64) -> f64 {
    libm::floor(x)
}

#[inline]
pub fn round(x: f64) -> f64 {
    libm::round(x)
}

#[inline]
pub fn hypot(x: f64, y: f64) -> f64 {
    libm::hypot(x, y)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Mean of a slice with a fixed left-to-right summation order.
pub fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.iter().sum::<f64>() / values.len() as f64
}

/// A non-negative fraction in lowest terms. Measures of sets are always of
/// this form with a denominator dividing a power of the group order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Fraction {
    pub num: u64,
    pub den: u64,
}

impl Fraction {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den).max(1);
        Fraction {
            num: num / g,
            den: den / g,
        }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Exact comparison against an `f64`, read as the dyadic rational it is.
    pub fn cmp_f64(self, t: f64) -> Ordering {
        cmp_ratio_dyadic(self.num, self.den, t)
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Compares `num/den` with the exact value of the finite double `t`.
///
/// `t = m * 2^e` with integer `m`; both sides are scaled to integers before
/// comparing, falling back to a magnitude argument when the shift is too wide
/// for `u128`.
pub fn cmp_ratio_dyadic(num: u64, den: u64, t: f64) -> Ordering {
    assert!(t.is_finite(), "threshold must be finite");
    assert!(den != 0);
    if t <= 0.0 {
        return if num == 0 && t == 0.0 {
            Ordering::Equal
        } else {
            Ordering::Greater
        };
    }
    let bits = t.to_bits();
    let exp_bits = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mant, exp) = if exp_bits == 0 {
        (frac, -1074i64)
    } else {
        (frac | (1u64 << 52), exp_bits - 1075)
    };
    // num/den  vs  mant * 2^exp
    let lhs = num as u128;
    let rhs = mant as u128 * den as u128; // < 2^117
    if exp >= 0 {
        // num vs mant*den*2^exp
        if exp >= 64 || rhs.leading_zeros() < exp as u32 + 1 {
            return Ordering::Less;
        }
        lhs.cmp(&(rhs << exp))
    } else {
        let shift = (-exp) as u32;
        if num == 0 {
            return Ordering::Less;
        }
        if shift >= 127 || lhs.leading_zeros() <= shift {
            // num * 2^shift overflows: it is at least 2^shift > 2^117 > rhs
            return Ordering::Greater;
        }
        (lhs << shift).cmp(&rhs)
    }
}
