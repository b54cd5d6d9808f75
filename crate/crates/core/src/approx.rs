//! Asymptotic approximations `p_n / s_n ~ exp(1 + sum_j k_j / ln^j p_n)`.
//!
//! The coefficients `k_j` (OEIS A233824: 1, 3, 13, 71, ...) come from the
//! recurrence `k_j = j * j! - sum_{i=1}^{j-1} i! * k_{j-i}` in exact integer
//! arithmetic. Order 0 is the constant `e`; order 2 is
//! `exp(1 + 1/ln p + 3/ln^2 p)`.

use crate::error::{Error, Result};
use crate::mean_stream::{sweep, Snapshot};
use crate::numerics::{Enclosure, Interval};
use crate::sieve::{PrimeStream, SieveConfig};
use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive};
use serde::Serialize;
use std::ops::ControlFlow;
use std::sync::OnceLock;

/// Leading coefficients every computed sequence must reproduce.
pub const ANCHOR: [u32; 3] = [1, 3, 13];

/// Highest supported series order (the coefficients still fit in `u64`).
pub const MAX_ORDER: usize = 19;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PanaitopolCoeffs {
    terms: Vec<BigUint>,
}

impl PanaitopolCoeffs {
    /// `k_1, ..., k_m`.
    pub fn terms(&self) -> &[BigUint] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

fn recurrence(m: usize) -> Vec<BigUint> {
    let mut factorial = vec![BigInt::one()]; // 0!
    for i in 1..=m {
        let next = &factorial[i - 1] * BigInt::from(i);
        factorial.push(next);
    }
    let mut k: Vec<BigInt> = Vec::with_capacity(m);
    for j in 1..=m {
        let mut v = BigInt::from(j) * &factorial[j];
        for i in 1..j {
            v -= &factorial[i] * &k[j - i - 1];
        }
        k.push(v);
    }
    k.into_iter()
        .map(|v| {
            assert_eq!(v.sign(), Sign::Plus, "non-positive coefficient {v}");
            v.to_biguint().expect("positive")
        })
        .collect()
}

/// The first `m` coefficients.
///
/// # Panics
///
/// If the recurrence fails to reproduce the anchor `1, 3, 13`.
pub fn panaitopol_coefficients(m: usize) -> Result<PanaitopolCoeffs> {
    if m == 0 {
        return Err(Error::Domain("need at least one coefficient".into()));
    }
    let terms = recurrence(m.max(ANCHOR.len()));
    let anchor: Vec<BigUint> = ANCHOR.iter().map(|&a| BigUint::from(a)).collect();
    assert_eq!(
        terms[..3],
        anchor[..],
        "coefficient recurrence lost its anchor"
    );
    Ok(PanaitopolCoeffs {
        terms: terms[..m].to_vec(),
    })
}

fn coefficients_u64() -> &'static [u64] {
    static COEFFS: OnceLock<Vec<u64>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        panaitopol_coefficients(MAX_ORDER)
            .expect("coefficients")
            .terms()
            .iter()
            .map(|k| k.to_u64().expect("coefficient fits in u64"))
            .collect()
    })
}

/// Number of `1/ln p` powers kept in the exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ApproxSpec {
    order: usize,
}

impl ApproxSpec {
    pub fn new(order: usize) -> Result<Self> {
        if order > MAX_ORDER {
            return Err(Error::Capacity {
                what: "approximation order",
                requested: order as u64,
                capacity: MAX_ORDER as u64,
            });
        }
        Ok(Self { order })
    }

    pub fn order(&self) -> usize {
        self.order
    }
}

/// `1 + sum_{j <= order} k_j / L^j` for `L` enclosing `ln p`.
pub fn approx_log_ratio<R: Enclosure>(log_p: R, spec: ApproxSpec) -> R {
    let one = R::from_u64(1);
    let inv = one / log_p;
    let mut power = one;
    let mut total = one;
    for &k in &coefficients_u64()[..spec.order] {
        power = power * inv;
        total = total + R::from_u64(k) * power;
    }
    total
}

/// Encloses `exp(1 + sum_{j <= order} k_j / ln^j p)`.
pub fn approx_ratio(p: u64, spec: ApproxSpec) -> Result<Interval> {
    approx_ratio_with::<Interval>(p, spec)
}

pub fn approx_ratio_with<R: Enclosure>(p: u64, spec: ApproxSpec) -> Result<R> {
    if p < 2 {
        return Err(Error::Domain(format!(
            "approximation needs p >= 2, got {p}"
        )));
    }
    approx_log_ratio(R::ln_u64(p)?, spec).exp()
}

/// `|approx / ratio - 1|` at a snapshot.
pub fn relative_error<R: Enclosure>(snap: &Snapshot<R>, spec: ApproxSpec) -> Result<R> {
    let approx = approx_log_ratio(snap.log_p, spec).exp()?;
    Ok((approx / snap.ratio - R::from_u64(1)).abs())
}

/// Certified maximum of the relative error over a prime range.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ApproxErrorReport {
    pub order: usize,
    /// Primes strictly above this are scanned.
    pub floor_p: u64,
    pub limit: u64,
    pub primes_checked: u64,
    /// Encloses the maximum relative error; `None` for an empty range.
    pub max_rel_error: Option<Interval>,
    /// Prime with the largest upper error bound.
    pub argmax: Option<u64>,
}

impl ApproxErrorReport {
    fn empty(spec: ApproxSpec, floor_p: u64, limit: u64) -> Self {
        Self {
            order: spec.order,
            floor_p,
            limit,
            primes_checked: 0,
            max_rel_error: None,
            argmax: None,
        }
    }

    /// The maximum is certified to be below `bound`.
    pub fn certified_below(&self, bound: f64) -> bool {
        self.max_rel_error.is_some_and(|m| m.hi() < bound)
    }
}

/// Scans every prime in `(floor_p, limit]`.
pub fn approx_error_scan(limit: u64, spec: ApproxSpec, floor_p: u64) -> Result<ApproxErrorReport> {
    let mut reports = approx_error_scan_orders(SieveConfig::new(limit.max(2)), &[spec], floor_p)?;
    Ok(reports.remove(0))
}

/// One sweep, several orders.
pub fn approx_error_scan_orders(
    config: SieveConfig,
    specs: &[ApproxSpec],
    floor_p: u64,
) -> Result<Vec<ApproxErrorReport>> {
    let limit = config.limit;
    let mut reports: Vec<ApproxErrorReport> = specs
        .iter()
        .map(|&s| ApproxErrorReport::empty(s, floor_p, limit))
        .collect();
    if floor_p >= limit || specs.is_empty() {
        return Ok(reports);
    }
    sweep::<Interval, _>(PrimeStream::new(config)?, |state| {
        let p = state.last().map_or(0, |e| e.prime);
        if p <= floor_p {
            return Ok(ControlFlow::Continue(()));
        }
        let snap = state.snapshot()?;
        for (report, &spec) in reports.iter_mut().zip(specs) {
            let err = relative_error(&snap, spec)?;
            report.primes_checked += 1;
            match report.max_rel_error {
                Some(m) => {
                    if err.hi() > m.hi() {
                        report.argmax = Some(p);
                    }
                    report.max_rel_error = Some(m.max_with(err));
                }
                None => {
                    report.max_rel_error = Some(err);
                    report.argmax = Some(p);
                }
            }
        }
        Ok(ControlFlow::Continue(()))
    })?;
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mean_stream::rows_at_targets;
    use crate::numerics::{DdInterval, DoubleDouble};

    fn as_u64(c: &PanaitopolCoeffs) -> Vec<u64> {
        c.terms().iter().map(|k| k.to_u64().unwrap()).collect()
    }

    #[test]
    fn anchor_terms() {
        assert_eq!(as_u64(&panaitopol_coefficients(1).unwrap()), vec![1]);
        assert_eq!(as_u64(&panaitopol_coefficients(3).unwrap()), vec![1, 3, 13]);
        assert!(panaitopol_coefficients(0).is_err());
    }

    #[test]
    fn five_terms() {
        let c = as_u64(&panaitopol_coefficients(5).unwrap());
        assert_eq!(c, vec![1, 3, 13, 71, 461]);
        // k_4 = 4 * 4! - (1! k_3 + 2! k_2 + 3! k_1)
        assert_eq!(c[3], 4 * 24 - (13 + 2 * 3 + 6));
    }

    #[test]
    fn coefficients_increase() {
        let c = panaitopol_coefficients(MAX_ORDER + 3).unwrap();
        for w in c.terms().windows(2) {
            assert!(w[0] < w[1]);
        }
        assert_eq!(coefficients_u64().len(), MAX_ORDER);
    }

    #[test]
    fn order_zero_is_e() {
        for p in [3, 11, 1_000_003] {
            let iv = approx_ratio(p, ApproxSpec::new(0).unwrap()).unwrap();
            assert!(iv.contains(std::f64::consts::E));
        }
    }

    #[test]
    fn order_two_table_values() {
        let two = ApproxSpec::new(2).unwrap();
        let r = approx_ratio(11, two).unwrap().certified_round(6);
        assert!(r.is_certified());
        assert_eq!(r.digits, "6.950270");
        let r = approx_ratio(1_000_000_007, two).unwrap().certified_round(6);
        assert_eq!(r.digits, "2.872666");
        // 6.95026951467906168700473491... from a 50-digit evaluation
        let dd = approx_ratio_with::<DdInterval>(11, two).unwrap();
        assert!(dd.contains(DoubleDouble::new(
            6.950_269_514_679_062,
            6.492_918_392_822_445e-17
        )));
        assert!(dd.width() < 1e-25);
    }

    #[test]
    fn order_two_matches_direct_formula() {
        let two = ApproxSpec::new(2).unwrap();
        for p in [3u64, 29, 1009, 65_537, 1_000_003, 999_999_937] {
            let l = Interval::ln_u64(p).unwrap();
            let one = Interval::ONE;
            let direct = (one + one / l + Interval::from_u64(3) / (l * l))
                .exp()
                .unwrap();
            let series = approx_ratio(p, two).unwrap();
            assert!(direct.overlaps(&series), "p = {p}");
        }
    }

    #[test]
    fn decreasing_in_p() {
        for order in 0..=4 {
            let spec = ApproxSpec::new(order).unwrap();
            let mut prev = f64::INFINITY;
            let mut p = 29.0f64;
            while p < 1e12 {
                let v = approx_ratio(p as u64, spec).unwrap().mid();
                if order == 0 {
                    assert!(v <= prev);
                } else {
                    assert!(v < prev, "order {order} at {p}");
                }
                prev = v;
                p *= 1.7;
            }
        }
    }

    #[test]
    fn error_at_eleven() {
        let snap = rows_at_targets(20, &[11]).unwrap().remove(0);
        let err = relative_error(&snap, ApproxSpec::new(2).unwrap()).unwrap();
        // 6.950270 / 2.337062 - 1
        assert!((err.mid() - 1.973_934).abs() < 1e-5, "{err}");
    }

    #[test]
    fn empty_scan() {
        let r = approx_error_scan(100, ApproxSpec::new(2).unwrap(), 100).unwrap();
        assert_eq!(r.primes_checked, 0);
        assert!(r.max_rel_error.is_none());
    }

    #[test]
    fn small_scan_counts_primes() {
        let r = approx_error_scan(1000, ApproxSpec::new(2).unwrap(), 100).unwrap();
        assert_eq!(r.primes_checked, 168 - 25);
        assert!(r.argmax.is_some());
        assert!(ApproxSpec::new(MAX_ORDER + 1).is_err());
    }
}
