//! Exact decimal rendering of enclosure endpoints.
//!
//! Endpoints are converted to exact dyadic rationals, so floors and
//! round-half-even decisions never depend on a floating-point rounding.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

/// Exact value `mantissa * 2^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Self {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }

    /// Exact value of a finite double.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite value {x}");
        if x == 0.0 {
            return Self::zero();
        }
        let bits = x.to_bits();
        let negative = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let fraction = bits & ((1u64 << 52) - 1);
        let (m, e) = if biased == 0 {
            (fraction, -1074)
        } else {
            (fraction | (1u64 << 52), biased - 1075)
        };
        let m = BigInt::from(m);
        Self {
            mantissa: if negative { -m } else { m },
            exponent: e,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    /// `floor(self * 10^places)` and the comparison of the discarded
    /// fraction with one half.
    fn scaled_floor(&self, places: u32) -> (BigInt, Ordering) {
        let scaled = &self.mantissa * BigInt::from(10u32).pow(places);
        if self.exponent >= 0 {
            return (scaled << self.exponent as usize, Ordering::Less);
        }
        let den = BigInt::one() << (-self.exponent) as usize;
        let (q, r) = scaled.div_mod_floor(&den);
        let half_cmp = (r << 1usize).cmp(&den);
        (q, half_cmp)
    }

    pub fn floor(&self) -> BigInt {
        self.scaled_floor(0).0
    }

    /// `self * 10^places` rounded to the nearest integer, ties to even.
    pub fn round_half_even(&self, places: u32) -> BigInt {
        let (q, half) = self.scaled_floor(places);
        match half {
            Ordering::Less => q,
            Ordering::Greater => q + 1,
            Ordering::Equal => {
                if q.is_even() {
                    q
                } else {
                    q + 1
                }
            }
        }
    }

    fn halve(self) -> Self {
        Self {
            mantissa: self.mantissa,
            exponent: self.exponent - 1,
        }
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        if self.mantissa.is_zero() {
            return rhs;
        }
        if rhs.mantissa.is_zero() {
            return self;
        }
        let e = self.exponent.min(rhs.exponent);
        let a = self.mantissa << (self.exponent - e) as usize;
        let b = rhs.mantissa << (rhs.exponent - e) as usize;
        Dyadic {
            mantissa: a + b,
            exponent: e,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Certainty {
    Certified,
    Indeterminate,
}

/// A value rendered at a fixed number of decimals.
///
/// When `status` is `Indeterminate`, `digits` holds the rounded midpoint and
/// carries no guarantee.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedDecimal {
    pub digits: String,
    pub places: u32,
    pub status: Certainty,
}

impl CertifiedDecimal {
    pub fn is_certified(&self) -> bool {
        self.status == Certainty::Certified
    }
}

/// Certified values print as plain digits; indeterminate ones get a
/// trailing `?`.
impl fmt::Display for CertifiedDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.status {
            Certainty::Certified => f.write_str(&self.digits),
            Certainty::Indeterminate => write!(f, "{}?", self.digits),
        }
    }
}

/// Formats `k * 10^-places`.
pub fn format_scaled(k: &BigInt, places: u32) -> String {
    let negative = k.sign() == Sign::Minus;
    let mut digits = k.abs().to_string();
    let places = places as usize;
    if digits.len() <= places {
        digits = format!("{}{}", "0".repeat(places + 1 - digits.len()), digits);
    }
    let split = digits.len() - places;
    let mut out = String::with_capacity(digits.len() + 2);
    if negative {
        out.push('-');
    }
    out.push_str(&digits[..split]);
    if places > 0 {
        out.push('.');
        out.push_str(&digits[split..]);
    }
    out
}

pub(crate) fn certified_floor(lo: &Dyadic, hi: &Dyadic) -> Option<u64> {
    if lo.is_negative() {
        return None;
    }
    let a = lo.floor();
    if a == hi.floor() {
        a.to_u64()
    } else {
        None
    }
}

pub(crate) fn certified_round(lo: &Dyadic, hi: &Dyadic, places: u32) -> CertifiedDecimal {
    let a = lo.round_half_even(places);
    let b = hi.round_half_even(places);
    if a == b {
        return CertifiedDecimal {
            digits: format_scaled(&a, places),
            places,
            status: Certainty::Certified,
        };
    }
    let mid = (lo.clone() + hi.clone()).halve();
    CertifiedDecimal {
        digits: format_scaled(&mid.round_half_even(places), places),
        places,
        status: Certainty::Indeterminate,
    }
}
