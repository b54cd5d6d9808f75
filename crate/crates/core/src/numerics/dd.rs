//! Double-double arithmetic and enclosures built on it.
//!
//! A [`DoubleDouble`] is the unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
//! The field operations follow the accurate variants of Hida, Li and Bailey's
//! QD library, whose relative error stays below `4 * 2^-106`. [`DdInterval`]
//! widens every result by [`OP_REL_ERR`], which leaves a 16x cushion on top of
//! that figure; `ln` and `exp` get their own, looser widening.

use super::decimal::Dyadic;
use super::interval::Interval;
use super::round::{quick_two_sum, two_prod, two_sum};
use super::sum::DdSum;
use super::Enclosure;
use crate::error::{Error, Result};
use num_bigint::BigUint;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

/// Relative error allowed for one double-double `+ - * /`.
pub const OP_REL_ERR: f64 = 7.888_609_052_210_118e-31; // 2^-100

/// Relative (plus unit absolute) error allowed for [`DoubleDouble::ln`].
pub const LN_ERR: f64 = 1.0 / (1u128 << 96) as f64;

/// Relative error allowed for [`DoubleDouble::exp`].
pub const EXP_REL_ERR: f64 = 8.077_935_669_463_161e-28; // 2^-90

// Absolute floor added to every widening so underflow cannot hide an error.
const TINY: f64 = 1e-300;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

/// ln 2 as a double-double; the remainder is below 2^-110.
pub const LN_2: DoubleDouble = DoubleDouble {
    hi: f64::from_bits(0x3fe6_2e42_fefa_39ef),
    lo: f64::from_bits(0x3c7a_bc9e_3b39_803f),
};

impl DoubleDouble {
    pub const ZERO: DoubleDouble = DoubleDouble { hi: 0.0, lo: 0.0 };
    pub const ONE: DoubleDouble = DoubleDouble { hi: 1.0, lo: 0.0 };

    /// Builds from a pair, renormalizing.
    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        Self { hi, lo }
    }

    pub const fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    /// Exact for every `u64`.
    pub fn from_u64(v: u64) -> Self {
        let hi = v as f64;
        let rest = i128::from(v) - hi as i128;
        Self {
            hi,
            lo: rest as f64,
        }
    }

    /// Exact for values below `2^106`.
    pub fn from_u128(v: u128) -> Self {
        let hi = v as f64;
        let rest = v as i128 - hi as i128;
        let (hi, lo) = quick_two_sum(hi, rest as f64);
        Self { hi, lo }
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn is_zero(&self) -> bool {
        self.hi == 0.0
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    /// Multiplies by `2^k` exactly (no overflow handling).
    pub fn ldexp(self, k: i32) -> Self {
        let f = pow2(k);
        Self {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }

    pub fn mul_f64(self, b: f64) -> Self {
        let (p1, p2) = two_prod(self.hi, b);
        let p2 = p2 + self.lo * b;
        let (hi, lo) = quick_two_sum(p1, p2);
        Self { hi, lo }
    }

    pub fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let r = self - DoubleDouble::from_f64(q1).mul_f64(b);
        let q2 = r.hi / b;
        let r = r - DoubleDouble::from_f64(q2).mul_f64(b);
        let q3 = r.hi / b;
        let (q1, q2) = quick_two_sum(q1, q2);
        DoubleDouble { hi: q1, lo: q2 } + DoubleDouble::from_f64(q3)
    }

    pub fn square(self) -> Self {
        self * self
    }

    /// Natural logarithm of a positive value.
    ///
    /// Writes `x = 2^k m` with `m` in `[1, 2)`, picks the nearest table point
    /// `c = 1 + j/64`, and sums the `atanh` series for `ln(m / c)` in
    /// `z = (m - c) / (m + c)`, `|z| <= 1/256`.
    pub fn ln(self) -> Result<Self> {
        if self.hi <= 0.0 || !self.hi.is_finite() {
            return Err(Error::Domain(format!("logarithm of {}", self.hi)));
        }
        let k = exponent_of(self.hi);
        let m = self.ldexp(-k);
        let j = ((m.hi - 1.0) * 64.0).round().clamp(0.0, 64.0);
        let c = 1.0 + j / 64.0;
        let z = (m - DoubleDouble::from_f64(c)) / (m + DoubleDouble::from_f64(c));
        let ln_m = ln_table()[j as usize] + atanh_twice(z, 8);
        Ok(LN_2.mul_f64(f64::from(k)) + ln_m)
    }

    /// Exponential; `Err` on overflow.
    ///
    /// Reduces `x = k ln 2 + r`, evaluates the Taylor series at `r / 256`
    /// and squares eight times.
    pub fn exp(self) -> Result<Self> {
        if self.hi > 709.0 {
            return Err(Error::Range(format!("exp overflow at {}", self.hi)));
        }
        if self.hi < -700.0 {
            return Ok(DoubleDouble::ZERO);
        }
        let k = (self.hi / LN_2.hi).round();
        let r = self - LN_2.mul_f64(k);
        let s = r.ldexp(-8);
        // Horner: 1 + s(1 + s/2(1 + s/3(...)))
        let mut p = DoubleDouble::ONE;
        for i in (1..=12).rev() {
            p = DoubleDouble::ONE + (s * p).div_f64(f64::from(i));
        }
        for _ in 0..8 {
            p = p.square();
        }
        Ok(p.ldexp(k as i32))
    }

    // Moves outward by at least rel * |x|; the subtraction itself is
    // covered by the factor of two.
    fn shade_down(self, rel: f64) -> Self {
        let d = self.hi.abs() * (2.0 * rel) + TINY;
        self - DoubleDouble::from_f64(d)
    }

    fn shade_up(self, rel: f64) -> Self {
        let d = self.hi.abs() * (2.0 * rel) + TINY;
        self + DoubleDouble::from_f64(d)
    }

    fn to_dyadic(self) -> Dyadic {
        Dyadic::from_f64(self.hi) + Dyadic::from_f64(self.lo)
    }
}

fn pow2(k: i32) -> f64 {
    // split to stay in the normal range for |k| up to ~2000
    let half = k / 2;
    f64::powi(2.0, half) * f64::powi(2.0, k - half)
}

// floor(log2 |x|) for a normal finite x.
fn exponent_of(x: f64) -> i32 {
    let bits = x.to_bits();
    let e = ((bits >> 52) & 0x7ff) as i32;
    if e == 0 {
        // subnormal
        let scaled = x * pow2(64);
        return exponent_of(scaled) - 64;
    }
    e - 1023
}

// 2 atanh(z) = 2 (z + z^3/3 + z^5/5 + ...), `terms` terms past the first.
fn atanh_twice(z: DoubleDouble, terms: u32) -> DoubleDouble {
    let z2 = z.square();
    let mut power = z;
    let mut sum = z;
    for i in 1..=terms {
        power = power * z2;
        sum = sum + power.div_f64(f64::from(2 * i + 1));
    }
    sum.mul_f64(2.0)
}

// ln(1 + j/64) for j = 0..=64.
fn ln_table() -> &'static [DoubleDouble; 65] {
    static TABLE: OnceLock<[DoubleDouble; 65]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [DoubleDouble::ZERO; 65];
        for (j, slot) in t.iter_mut().enumerate().skip(1) {
            // ln((128 + 2j)/128) with z = j / (128 + j), z <= 1/3
            let z = DoubleDouble::from_f64(j as f64) / DoubleDouble::from_f64(128.0 + j as f64);
            *slot = atanh_twice(z, 40);
        }
        t
    })
}

impl Neg for DoubleDouble {
    type Output = DoubleDouble;
    fn neg(self) -> DoubleDouble {
        DoubleDouble {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for DoubleDouble {
    type Output = DoubleDouble;
    fn add(self, b: DoubleDouble) -> DoubleDouble {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (hi, lo) = quick_two_sum(s1, s2);
        DoubleDouble { hi, lo }
    }
}

impl Sub for DoubleDouble {
    type Output = DoubleDouble;
    fn sub(self, b: DoubleDouble) -> DoubleDouble {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = DoubleDouble;
    fn mul(self, b: DoubleDouble) -> DoubleDouble {
        let (p1, p2) = two_prod(self.hi, b.hi);
        let p2 = p2 + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p1, p2);
        DoubleDouble { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = DoubleDouble;
    fn div(self, b: DoubleDouble) -> DoubleDouble {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        DoubleDouble { hi: q1, lo: q2 } + DoubleDouble::from_f64(q3)
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            o => Some(o),
        }
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e} + {:e}", self.hi, self.lo)
    }
}

/// Closed interval with double-double endpoints.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DdInterval {
    lo: DoubleDouble,
    hi: DoubleDouble,
}

impl DdInterval {
    pub fn new(lo: DoubleDouble, hi: DoubleDouble) -> Result<Self> {
        if !lo.hi.is_finite() || !hi.hi.is_finite() {
            return Err(Error::Range("non-finite endpoint".into()));
        }
        if lo > hi {
            return Err(Error::Domain(format!("inverted interval [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: DoubleDouble) -> Self {
        Self { lo: x, hi: x }
    }

    pub fn lo(&self) -> DoubleDouble {
        self.lo
    }

    pub fn hi(&self) -> DoubleDouble {
        self.hi
    }

    /// Encloses `x` widened by `rel * |x| + abs` on both sides.
    pub fn around(x: DoubleDouble, rel: f64, abs: f64) -> Self {
        let d = DoubleDouble::from_f64(x.hi.abs() * (2.0 * rel) + 2.0 * abs + TINY);
        Self {
            lo: x - d,
            hi: x + d,
        }
    }

    pub fn mid(&self) -> DoubleDouble {
        self.lo + (self.hi - self.lo).mul_f64(0.5)
    }

    /// Upper bound on the distance from [`DdInterval::mid`] to either endpoint.
    pub fn radius(&self) -> f64 {
        let m = self.mid();
        let a = (self.hi - m).to_f64().abs();
        let b = (m - self.lo).to_f64().abs();
        let slack = self.hi.hi.abs().max(self.lo.hi.abs()) * (4.0 * OP_REL_ERR) + TINY;
        (a.max(b) * (1.0 + 1e-12)).next_up() + slack
    }

    pub fn contains(&self, x: DoubleDouble) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, other: &DdInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Width as a binary64 upper bound.
    pub fn width(&self) -> f64 {
        let w = self.hi - self.lo;
        (w.hi + w.lo).abs().next_up() * (1.0 + 1e-12)
    }
}

impl From<Interval> for DdInterval {
    fn from(iv: Interval) -> Self {
        Self {
            lo: DoubleDouble::from_f64(iv.lo()),
            hi: DoubleDouble::from_f64(iv.hi()),
        }
    }
}

impl fmt::Display for DdInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Add for DdInterval {
    type Output = DdInterval;
    fn add(self, b: DdInterval) -> DdInterval {
        DdInterval {
            lo: (self.lo + b.lo).shade_down(OP_REL_ERR),
            hi: (self.hi + b.hi).shade_up(OP_REL_ERR),
        }
    }
}

impl Sub for DdInterval {
    type Output = DdInterval;
    fn sub(self, b: DdInterval) -> DdInterval {
        DdInterval {
            lo: (self.lo - b.hi).shade_down(OP_REL_ERR),
            hi: (self.hi - b.lo).shade_up(OP_REL_ERR),
        }
    }
}

impl Neg for DdInterval {
    type Output = DdInterval;
    fn neg(self) -> DdInterval {
        DdInterval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

fn extremes(values: [DoubleDouble; 4]) -> (DoubleDouble, DoubleDouble) {
    let mut lo = values[0];
    let mut hi = values[0];
    for v in &values[1..] {
        if *v < lo {
            lo = *v;
        }
        if *v > hi {
            hi = *v;
        }
    }
    (lo, hi)
}

impl Mul for DdInterval {
    type Output = DdInterval;
    fn mul(self, b: DdInterval) -> DdInterval {
        let (lo, hi) = extremes([
            self.lo * b.lo,
            self.lo * b.hi,
            self.hi * b.lo,
            self.hi * b.hi,
        ]);
        DdInterval {
            lo: lo.shade_down(OP_REL_ERR),
            hi: hi.shade_up(OP_REL_ERR),
        }
    }
}

impl Div for DdInterval {
    type Output = DdInterval;
    fn div(self, b: DdInterval) -> DdInterval {
        let zero = DoubleDouble::ZERO;
        assert!(
            b.lo > zero || b.hi < zero,
            "division by an interval containing zero: {b}"
        );
        let (lo, hi) = extremes([
            self.lo / b.lo,
            self.lo / b.hi,
            self.hi / b.lo,
            self.hi / b.hi,
        ]);
        DdInterval {
            lo: lo.shade_down(OP_REL_ERR),
            hi: hi.shade_up(OP_REL_ERR),
        }
    }
}

impl Enclosure for DdInterval {
    type Sum = DdSum;
    const PRECISION: &'static str = "strict";

    fn from_u64(v: u64) -> Self {
        DdInterval::point(DoubleDouble::from_u64(v))
    }

    fn ratio(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        DdInterval::from_u64(num) / DdInterval::from_u64(den)
    }

    fn ln_u64(v: u64) -> Result<Self> {
        if v == 0 {
            return Err(Error::Domain("logarithm of zero".into()));
        }
        let y = DoubleDouble::from_u64(v).ln()?;
        Ok(DdInterval::around(y, LN_ERR, LN_ERR))
    }

    fn exp(self) -> Result<Self> {
        let lo = self.lo.exp()?;
        let hi = self.hi.exp()?;
        let mut lo = lo.shade_down(EXP_REL_ERR);
        if lo.hi < 0.0 {
            lo = DoubleDouble::ZERO;
        }
        Ok(DdInterval {
            lo,
            hi: hi.shade_up(EXP_REL_ERR),
        })
    }

    fn abs(self) -> Self {
        let zero = DoubleDouble::ZERO;
        if self.lo >= zero {
            self
        } else if self.hi <= zero {
            -self
        } else {
            let m = if -self.lo > self.hi {
                -self.lo
            } else {
                self.hi
            };
            DdInterval { lo: zero, hi: m }
        }
    }

    fn hull(self, other: Self) -> Self {
        DdInterval {
            lo: if self.lo < other.lo {
                self.lo
            } else {
                other.lo
            },
            hi: if self.hi > other.hi {
                self.hi
            } else {
                other.hi
            },
        }
    }

    fn min_with(self, other: Self) -> Self {
        DdInterval {
            lo: if self.lo < other.lo {
                self.lo
            } else {
                other.lo
            },
            hi: if self.hi < other.hi {
                self.hi
            } else {
                other.hi
            },
        }
    }

    fn max_with(self, other: Self) -> Self {
        DdInterval {
            lo: if self.lo > other.lo {
                self.lo
            } else {
                other.lo
            },
            hi: if self.hi > other.hi {
                self.hi
            } else {
                other.hi
            },
        }
    }

    fn to_interval(self) -> Interval {
        let lo = if self.lo.lo < 0.0 {
            self.lo.hi.next_down()
        } else {
            self.lo.hi
        };
        let hi = if self.hi.lo > 0.0 {
            self.hi.hi.next_up()
        } else {
            self.hi.hi
        };
        Interval::from_bounds(lo, hi)
    }

    fn lower_dyadic(&self) -> Dyadic {
        self.lo.to_dyadic()
    }

    fn upper_dyadic(&self) -> Dyadic {
        self.hi.to_dyadic()
    }

    fn certainly_positive(&self) -> bool {
        self.lo > DoubleDouble::ZERO
    }

    fn certainly_negative(&self) -> bool {
        self.hi < DoubleDouble::ZERO
    }
}

/// Encloses the natural log of a positive big integer.
///
/// The top 104 bits `M` give `M 2^s <= x < (M + 1) 2^s`, so
/// `ln x` lies in `[ln M + s ln 2, ln(M + 1) + s ln 2]`.
pub fn ln_biguint(x: &BigUint) -> Result<DdInterval> {
    let bits = x.bits();
    if bits == 0 {
        return Err(Error::Domain("logarithm of zero".into()));
    }
    if bits <= 64 {
        let v = x.iter_u64_digits().next().unwrap_or(0);
        return DdInterval::ln_u64(v);
    }
    let shift = bits.saturating_sub(104);
    let top: BigUint = x >> shift;
    let top = top
        .iter_u64_digits()
        .enumerate()
        .fold(0u128, |acc, (i, d)| acc | (u128::from(d) << (64 * i)));
    let exact = shift == 0;
    let ln_lo = DoubleDouble::from_u128(top).ln()?;
    let ln_hi = if exact {
        ln_lo
    } else {
        DoubleDouble::from_u128(top + 1).ln()?
    };
    let s = shift as f64;
    let tail = DdInterval::around(LN_2.mul_f64(s), 4.0 * OP_REL_ERR, 0.0);
    let head = DdInterval {
        lo: DdInterval::around(ln_lo, LN_ERR, LN_ERR).lo,
        hi: DdInterval::around(ln_hi, LN_ERR, LN_ERR).hi,
    };
    Ok(head + tail)
}
