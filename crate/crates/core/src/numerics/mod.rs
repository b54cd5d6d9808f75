//! Certified real arithmetic.
//!
//! Two enclosure types share one interface, [`Enclosure`]:
//!
//! * [`Interval`]: binary64 endpoints. Field operations round outward exactly
//!   (the rounding error is recovered with error-free transformations), and
//!   `ln`/`exp` assume the platform libm is faithful to within one ulp, widening
//!   every endpoint by two ulps on each side.
//! * [`DdInterval`]: double-double endpoints carrying roughly 106 bits, used
//!   whenever binary64 cannot certify the digits being asked for.
//!
//! Running sums ([`CompensatedSum`], [`DdSum`]) keep a midpoint plus an error
//! radius that absorbs both the input half-widths and every rounding error
//! dropped during accumulation.

mod dd;
mod decimal;
mod interval;
pub mod round;
mod sum;

pub use dd::{ln_biguint, DdInterval, DoubleDouble};
pub use decimal::{Certainty, CertifiedDecimal, Dyadic};
pub use interval::{interval_exp, interval_log, Interval};
pub use sum::{accumulate_term, as_interval, CompensatedSum, DdSum};

use crate::error::Result;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A closed set of reals guaranteed to contain some exact value.
///
/// Arithmetic through the operator traits preserves containment. Division
/// panics when the divisor contains zero.
pub trait Enclosure:
    Copy
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Accumulator used for long sums of enclosures of this kind.
    type Sum: RunningSum<Self>;

    /// Short label for reports.
    const PRECISION: &'static str;

    fn from_u64(v: u64) -> Self;

    /// Encloses `num / den`; `den` must be non-zero.
    fn ratio(num: u64, den: u64) -> Self;

    /// Encloses the natural log of a positive integer.
    fn ln_u64(v: u64) -> Result<Self>;

    fn exp(self) -> Result<Self>;

    /// Encloses `|x|` for every `x` in `self`.
    fn abs(self) -> Self;

    /// Smallest enclosure of the union.
    fn hull(self, other: Self) -> Self;

    /// Encloses `min(x, y)` for `x` in `self`, `y` in `other`.
    fn min_with(self, other: Self) -> Self;

    /// Encloses `max(x, y)` for `x` in `self`, `y` in `other`.
    fn max_with(self, other: Self) -> Self;

    /// Outward binary64 view.
    fn to_interval(self) -> Interval;

    fn lower_dyadic(&self) -> Dyadic;
    fn upper_dyadic(&self) -> Dyadic;

    /// Every enclosed value is `> 0`.
    fn certainly_positive(&self) -> bool;

    /// Every enclosed value is `< 0`.
    fn certainly_negative(&self) -> bool;

    fn recip(self) -> Self {
        Self::from_u64(1) / self
    }

    fn square(self) -> Self {
        let a = self.abs();
        a * a
    }

    /// `floor` of the enclosed value when both endpoints agree, otherwise `None`.
    fn certified_floor(&self) -> Option<u64> {
        decimal::certified_floor(&self.lower_dyadic(), &self.upper_dyadic())
    }

    /// Round-half-even rendering at `places` decimals, certified when both
    /// endpoints round to the same string.
    fn certified_round(&self, places: u32) -> CertifiedDecimal {
        decimal::certified_round(&self.lower_dyadic(), &self.upper_dyadic(), places)
    }
}

/// Accumulator of enclosures whose total is itself an enclosure.
pub trait RunningSum<R>: Default + Clone + Debug + Send {
    fn add_term(&mut self, term: R);

    fn total(&self) -> R;

    /// Number of terms added so far.
    fn count(&self) -> u64;

    /// Absorbs another partial sum; containment holds for any merge order.
    fn merge(&mut self, other: &Self);
}

/// Certified sign of an enclosure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
    Indeterminate,
}

pub fn sign_of<R: Enclosure>(x: &R) -> Sign {
    if x.certainly_positive() {
        Sign::Positive
    } else if x.certainly_negative() {
        Sign::Negative
    } else {
        Sign::Indeterminate
    }
}
