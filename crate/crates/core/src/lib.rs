//! Certified computation of the geometric mean of the first `n` primes.
//!
//! The crate streams primes from a segmented sieve, accumulates the Chebyshev
//! sum `theta(p_n) = sum log p` with rigorous error bounds, and derives
//! `s_n = exp(theta(p_n) / n)` together with the ratio `p_n / s_n`. Every real
//! quantity is carried as an enclosure (an interval guaranteed to contain the
//! exact value), either in binary64 ([`Interval`]) or in double-double
//! precision ([`DdInterval`]) when binary64 cannot certify the requested digits.
//!
//! On top of that engine sit explicit-bound checks for the ratio, the
//! Panaitopol-type approximation family, exact-integer OEIS sequence engines,
//! and a command line front end.

pub mod approx;
pub mod bounds;
pub mod cli;
mod error;
pub mod mean_stream;
pub mod numerics;
pub mod oeis;
pub mod sieve;

pub use error::{Error, Result};
pub use mean_stream::{MeanSnapshot, MeanState, Snapshot};
pub use numerics::{
    CertifiedDecimal, CompensatedSum, DdInterval, DdSum, DoubleDouble, Enclosure, Interval,
};
pub use sieve::{PrimeEvent, PrimeStream, SieveConfig};
