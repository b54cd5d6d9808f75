use super::decimal::Dyadic;
use super::round::{
    add_down, add_up, div_down, div_up, mul_down, mul_up, sub_down, sub_up, ulps_down, ulps_up,
};
use super::sum::CompensatedSum;
use super::Enclosure;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Ulps added on each side of a libm `ln`/`exp` result.
pub const LIBM_WIDENING_ULPS: u32 = 2;

const EXACT_INT_LIMIT: u64 = 1 << 53;

/// Closed binary64 interval `[lo, hi]` with finite endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };

    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::Range(format!("non-finite interval [{lo}, {hi}]")));
        }
        if lo > hi {
            return Err(Error::Domain(format!("inverted interval [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    pub(crate) fn from_bounds(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "inverted interval [{lo}, {hi}]");
        Self { lo, hi }
    }

    /// Degenerate interval; `x` must be finite.
    pub fn point(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite point {x}");
        Self { lo: x, hi: x }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    /// Nearest-rounded midpoint.
    pub fn mid(&self) -> f64 {
        if self.lo == self.hi {
            self.lo
        } else {
            0.5 * self.lo + 0.5 * self.hi
        }
    }

    /// Upper bound on `hi - lo`.
    pub fn width(&self) -> f64 {
        sub_up(self.hi, self.lo)
    }

    /// Upper bound on the distance from [`Interval::mid`] to either endpoint.
    pub fn radius(&self) -> f64 {
        let m = self.mid();
        sub_up(self.hi, m).max(sub_up(m, self.lo))
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Strict inclusion: `self` lies in the open interval `(outer.lo, outer.hi)`.
    pub fn strictly_inside(&self, outer: &Interval) -> bool {
        outer.lo < self.lo && self.hi < outer.hi
    }

    pub fn widen_ulps(self, n: u32) -> Self {
        Self {
            lo: ulps_down(self.lo, n),
            hi: ulps_up(self.hi, n),
        }
    }

    /// Encloses `x / n` for a positive integer `n`.
    pub fn div_u64(self, n: u64) -> Self {
        self / Interval::from_u64(n)
    }

    pub fn ln(self) -> Result<Self> {
        if self.lo <= 0.0 {
            return Err(Error::Domain(format!(
                "logarithm of non-positive interval [{}, {}]",
                self.lo, self.hi
            )));
        }
        Ok(Self {
            lo: ulps_down(self.lo.ln(), LIBM_WIDENING_ULPS),
            hi: ulps_up(self.hi.ln(), LIBM_WIDENING_ULPS),
        })
    }

    pub fn exp(self) -> Result<Self> {
        let hi = ulps_up(self.hi.exp(), LIBM_WIDENING_ULPS);
        if !hi.is_finite() {
            return Err(Error::Range(format!("exp overflow at {}", self.hi)));
        }
        let lo = ulps_down(self.lo.exp(), LIBM_WIDENING_ULPS).max(0.0);
        Ok(Self { lo, hi })
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

/// Encloses `ln x` for a positive integer `x`.
pub fn interval_log(x: u64) -> Result<Interval> {
    if x == 0 {
        return Err(Error::Domain("logarithm of zero".into()));
    }
    Interval::from_u64(x).ln()
}

/// Encloses `exp` over the whole interval.
pub fn interval_exp(iv: Interval) -> Result<Interval> {
    iv.exp()
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval::from_bounds(add_down(self.lo, rhs.lo), add_up(self.hi, rhs.hi))
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        Interval::from_bounds(sub_down(self.lo, rhs.hi), sub_up(self.hi, rhs.lo))
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::from_bounds(-self.hi, -self.lo)
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        let (a, b) = (self, rhs);
        if a.lo >= 0.0 && b.lo >= 0.0 {
            return Interval::from_bounds(mul_down(a.lo, b.lo), mul_up(a.hi, b.hi));
        }
        let pairs = [(a.lo, b.lo), (a.lo, b.hi), (a.hi, b.lo), (a.hi, b.hi)];
        let lo = pairs
            .iter()
            .map(|&(x, y)| mul_down(x, y))
            .fold(f64::INFINITY, f64::min);
        let hi = pairs
            .iter()
            .map(|&(x, y)| mul_up(x, y))
            .fold(f64::NEG_INFINITY, f64::max);
        Interval::from_bounds(lo, hi)
    }
}

impl Div for Interval {
    type Output = Interval;
    fn div(self, rhs: Interval) -> Interval {
        assert!(
            rhs.lo > 0.0 || rhs.hi < 0.0,
            "division by an interval containing zero: {rhs}"
        );
        let (a, b) = (self, rhs);
        if a.lo >= 0.0 && b.lo > 0.0 {
            return Interval::from_bounds(div_down(a.lo, b.hi), div_up(a.hi, b.lo));
        }
        let pairs = [(a.lo, b.lo), (a.lo, b.hi), (a.hi, b.lo), (a.hi, b.hi)];
        let lo = pairs
            .iter()
            .map(|&(x, y)| div_down(x, y))
            .fold(f64::INFINITY, f64::min);
        let hi = pairs
            .iter()
            .map(|&(x, y)| div_up(x, y))
            .fold(f64::NEG_INFINITY, f64::max);
        Interval::from_bounds(lo, hi)
    }
}

impl Enclosure for Interval {
    type Sum = CompensatedSum;
    const PRECISION: &'static str = "standard";

    fn from_u64(v: u64) -> Self {
        if v <= EXACT_INT_LIMIT {
            return Interval::point(v as f64);
        }
        let f = v as f64;
        let exact = f as u128;
        let v = u128::from(v);
        if exact == v {
            Interval::point(f)
        } else if exact > v {
            Interval::from_bounds(f.next_down(), f)
        } else {
            Interval::from_bounds(f, f.next_up())
        }
    }

    fn ratio(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        Interval::from_u64(num) / Interval::from_u64(den)
    }

    fn ln_u64(v: u64) -> Result<Self> {
        interval_log(v)
    }

    fn exp(self) -> Result<Self> {
        Interval::exp(self)
    }

    fn abs(self) -> Self {
        if self.lo >= 0.0 {
            self
        } else if self.hi <= 0.0 {
            -self
        } else {
            Interval::from_bounds(0.0, self.hi.max(-self.lo))
        }
    }

    fn hull(self, other: Self) -> Self {
        Interval::from_bounds(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    fn min_with(self, other: Self) -> Self {
        Interval::from_bounds(self.lo.min(other.lo), self.hi.min(other.hi))
    }

    fn max_with(self, other: Self) -> Self {
        Interval::from_bounds(self.lo.max(other.lo), self.hi.max(other.hi))
    }

    fn to_interval(self) -> Interval {
        self
    }

    fn lower_dyadic(&self) -> Dyadic {
        Dyadic::from_f64(self.lo)
    }

    fn upper_dyadic(&self) -> Dyadic {
        Dyadic::from_f64(self.hi)
    }

    fn certainly_positive(&self) -> bool {
        self.lo > 0.0
    }

    fn certainly_negative(&self) -> bool {
        self.hi < 0.0
    }
}

#[cfg(test)]
#[allow(clippy::approx_constant)]
mod tests {
    use super::*;

    fn ulp(x: f64) -> f64 {
        x.abs().next_up() - x.abs()
    }

    #[test]
    fn log_of_one() {
        let iv = interval_log(1).unwrap();
        assert!(iv.contains(0.0));
        assert!(iv.width() <= 4.0 * f64::from_bits(1));
    }

    #[test]
    fn log_of_two_contains_oracle() {
        // ln 2 = 0.693147180559945309417232121458176568...
        // the two nearest doubles bracket it
        let below = 0.693_147_180_559_945_2_f64;
        let iv = interval_log(2).unwrap();
        assert!(iv.lo() <= below && below.next_up() <= iv.hi());
        assert!(iv.width() <= 4.0 * ulp(iv.mid()));
    }

    #[test]
    fn log_of_large_prime() {
        // ln(100000007) = 18.420680813952363022144...
        let iv = interval_log(100_000_007).unwrap();
        assert!(iv.lo() < 18.420_680_813_952_363 && 18.420_680_813_952_364 < iv.hi());
        assert!(iv.width() <= 4.0 * ulp(iv.mid()));
    }

    #[test]
    fn log_of_zero_is_domain_error() {
        assert!(matches!(interval_log(0), Err(Error::Domain(_))));
    }

    #[test]
    fn exp_points() {
        assert!(Interval::ZERO.exp().unwrap().contains(1.0));
        // e = 2.718281828459045235360287...
        let e = Interval::ONE.exp().unwrap();
        assert!(e.lo() <= 2.718_281_828_459_045 && 2.718_281_828_459_045_5 <= e.hi());
        let around_ln2 = Interval::new(0.6931, 0.6932).unwrap().exp().unwrap();
        assert!(around_ln2.contains(2.0));
        assert!(matches!(Interval::point(710.0).exp(), Err(Error::Range(_))));
    }

    #[test]
    fn new_rejects_bad_bounds() {
        assert!(Interval::new(1.0, 0.0).is_err());
        assert!(Interval::new(f64::NAN, 0.0).is_err());
        assert!(Interval::new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn from_u64_brackets_large_values() {
        let v = (1u64 << 60) + 1;
        let iv = Interval::from_u64(v);
        assert!((iv.lo() as u128) <= u128::from(v) && u128::from(v) <= iv.hi() as u128);
        assert!(iv.lo() < iv.hi());
    }

    #[test]
    fn ratio_encloses_decimal_constants() {
        let c = Interval::ratio(162, 100);
        assert!(c.contains(1.62));
        assert!(c.lo() < c.hi());
        assert_eq!(Interval::ratio(1, 4), Interval::point(0.25));
    }

    #[test]
    fn mixed_sign_products() {
        let a = Interval::new(-2.0, 3.0).unwrap();
        let b = Interval::new(-5.0, 1.0).unwrap();
        assert_eq!(a * b, Interval::new(-15.0, 10.0).unwrap());
        assert_eq!(a.abs(), Interval::new(0.0, 3.0).unwrap());
        assert_eq!(a.square(), Interval::new(0.0, 9.0).unwrap());
        let q = Interval::new(-1.0, 2.0).unwrap() / Interval::new(-4.0, -2.0).unwrap();
        assert_eq!(q, Interval::new(-1.0, 0.5).unwrap());
    }

    #[test]
    #[should_panic]
    fn division_by_zero_interval_panics() {
        let _ = Interval::ONE / Interval::new(-1.0, 1.0).unwrap();
    }
}
