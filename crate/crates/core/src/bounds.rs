//! Explicit bounds on `p_n / s_n` and the prime-counting inequalities behind
//! them.
//!
//! With `L = ln p_n` the main claim is
//!
//! ```text
//! 1 + 1/L + 1.62/L^2  <  ln(p_n / s_n)  <  1 + 1/L + 4.83/L^2    (p_n >= 32059)
//! ```
//!
//! Everything is checked on the log scale; exponentiation is monotone so the
//! verdicts carry over to `p_n / s_n` itself.

use crate::error::{Error, Result};
use crate::mean_stream::{sweep, MeanState, Snapshot};
use crate::numerics::{ln_biguint, DdInterval, Enclosure, Interval};
use crate::oeis::primorial;
use crate::sieve::{prime_count, PrimeStream, SieveConfig};
use serde::Serialize;
use std::ops::ControlFlow;

/// A rational constant `num / den` with the statement it comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundConstant {
    pub num: u64,
    pub den: u64,
    pub provenance: &'static str,
}

impl BoundConstant {
    pub fn value<R: Enclosure>(&self) -> R {
        R::ratio(self.num, self.den)
    }

    pub fn approx(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Threshold {
    pub value: u64,
    pub provenance: &'static str,
}

/// The named constants and thresholds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundSet {
    pub axler_lower_c: BoundConstant,
    pub axler_upper_c: BoundConstant,
    pub thm_lower_c: BoundConstant,
    pub thm_upper_c: BoundConstant,
    pub dusart_theta_threshold: Threshold,
    pub dusart_pi_threshold: Threshold,
    pub axler_threshold: Threshold,
    pub theta_gap_threshold: Threshold,
    pub theorem_threshold: Threshold,
}

pub const BOUNDS: BoundSet = BoundSet {
    axler_lower_c: BoundConstant {
        num: 383,
        den: 100,
        provenance: "Axler: x/pi(x) > ln x - 1 - 1/ln x - 3.83/ln^2 x for x >= 10^8",
    },
    axler_upper_c: BoundConstant {
        num: 262,
        den: 100,
        provenance: "Axler: x/pi(x) < ln x - 1 - 1/ln x - 2.62/ln^2 x for x >= 10^8",
    },
    thm_lower_c: BoundConstant {
        num: 162,
        den: 100,
        provenance: "lower bound: ln(p_n/s_n) > 1 + 1/ln p_n + 1.62/ln^2 p_n",
    },
    thm_upper_c: BoundConstant {
        num: 483,
        den: 100,
        provenance: "upper bound: ln(p_n/s_n) < 1 + 1/ln p_n + 4.83/ln^2 p_n",
    },
    dusart_theta_threshold: Threshold {
        value: 89_967_803,
        provenance: "Dusart: |theta(x) - x| < x/ln^3 x for x >= 89967803",
    },
    dusart_pi_threshold: Threshold {
        value: 5393,
        provenance: "Dusart: pi(x) > x/(ln x - 1) for x >= 5393",
    },
    axler_threshold: Threshold {
        value: 100_000_000,
        provenance: "Axler's bounds for x/pi(x) hold for x >= 10^8",
    },
    theta_gap_threshold: Threshold {
        value: 100_000_000,
        provenance: "|theta(x) - x|/pi(x) < 1/ln^2 x for x >= 10^8",
    },
    theorem_threshold: Threshold {
        value: 32059,
        provenance: "the two-sided bound on p_n/s_n is claimed for p_n >= 32059",
    },
};

/// `1 + 1/L + c/L^2`.
pub fn log_bound<R: Enclosure>(log_x: R, c: BoundConstant) -> R {
    let inv = log_x.recip();
    R::from_u64(1) + inv + c.value::<R>() * inv.square()
}

/// Lower and upper bounds for `ln(p_n / s_n)` given an enclosure of `ln p_n`.
pub fn theorem_log_bounds<R: Enclosure>(log_p: R) -> (R, R) {
    (
        log_bound(log_p, BOUNDS.thm_lower_c),
        log_bound(log_p, BOUNDS.thm_upper_c),
    )
}

/// `exp(1 + 1/ln p + c/ln^2 p)` for `c = 1.62` and `c = 4.83`.
pub fn theorem_bounds(p: u64) -> Result<(Interval, Interval)> {
    theorem_bounds_with::<Interval>(p)
}

pub fn theorem_bounds_with<R: Enclosure>(p: u64) -> Result<(R, R)> {
    if p < 2 {
        return Err(Error::Domain(format!("bounds need p >= 2, got {p}")));
    }
    let (lo, hi) = theorem_log_bounds(R::ln_u64(p)?);
    Ok((lo.exp()?, hi.exp()?))
}

/// Outcome of one certified comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Indeterminate,
}

impl Verdict {
    /// `Holds` when the margin is certainly positive.
    pub fn from_margin<R: Enclosure>(margin: &R) -> Self {
        if margin.certainly_positive() {
            Verdict::Holds
        } else if margin.certainly_negative() {
            Verdict::Fails
        } else {
            Verdict::Indeterminate
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    NotApplicable,
    Holds,
    Fails,
    Indeterminate,
}

/// One inequality evaluated at `x`. The margin is `rhs - lhs` oriented so
/// that a positive margin means the inequality holds; it is computed even
/// when the check is below its threshold.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCheck {
    pub name: &'static str,
    pub applicable: bool,
    pub status: CheckStatus,
    pub margin: Interval,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCheckReport {
    pub x: u64,
    pub n: u64,
    pub precision: &'static str,
    pub checks: Vec<BoundCheck>,
}

impl BoundCheckReport {
    pub fn get(&self, name: &str) -> Option<&BoundCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Every applicable check holds.
    pub fn all_applicable_hold(&self) -> bool {
        self.checks
            .iter()
            .all(|c| !c.applicable || c.status == CheckStatus::Holds)
    }
}

/// Check names, in report order.
pub const CHECK_NAMES: [&str; 11] = [
    "dusart_theta",
    "dusart_pi",
    "axler_lower",
    "axler_upper",
    "theta_gap",
    "log_gap_pi_lower",
    "log_gap_pi_upper",
    "log_gap_theta_lower",
    "log_gap_theta_upper",
    "theorem_lower",
    "theorem_upper",
];

/// Evaluates every inequality at `x = p_n`, where `pi(x) = n` and
/// `theta(x)` is the snapshot's accumulated sum.
pub fn reference_bound_report<R: Enclosure>(snap: &Snapshot<R>) -> BoundCheckReport {
    let x_int = snap.p_n;
    let x = R::from_u64(x_int);
    let pi = R::from_u64(snap.n);
    let l = snap.log_p;
    let one = R::from_u64(1);
    let inv_l = l.recip();
    let inv_l2 = inv_l.square();
    let theta_gap = (snap.theta - x).abs();
    let x_over_pi = x / pi;
    // ln x - x/pi(x)
    let gap_pi = l - x_over_pi;
    // ln x - theta(x)/pi(x)
    let gap_theta = snap.log_ratio;
    let b = &BOUNDS;

    let axler_base = l - one - inv_l;
    let margins: [(R, u64); 11] = [
        (
            x * inv_l * inv_l2 - theta_gap,
            b.dusart_theta_threshold.value,
        ),
        (pi - x / (l - one), b.dusart_pi_threshold.value),
        (
            x_over_pi - (axler_base - b.axler_lower_c.value::<R>() * inv_l2),
            b.axler_threshold.value,
        ),
        (
            axler_base - b.axler_upper_c.value::<R>() * inv_l2 - x_over_pi,
            b.axler_threshold.value,
        ),
        (inv_l2 - theta_gap / pi, b.theta_gap_threshold.value),
        (
            gap_pi - log_bound(l, b.axler_upper_c),
            b.axler_threshold.value,
        ),
        (
            log_bound(l, b.axler_lower_c) - gap_pi,
            b.axler_threshold.value,
        ),
        (
            gap_theta - log_bound(l, b.thm_lower_c),
            b.theta_gap_threshold.value,
        ),
        (
            log_bound(l, b.thm_upper_c) - gap_theta,
            b.theta_gap_threshold.value,
        ),
        (
            gap_theta - log_bound(l, b.thm_lower_c),
            b.theorem_threshold.value,
        ),
        (
            log_bound(l, b.thm_upper_c) - gap_theta,
            b.theorem_threshold.value,
        ),
    ];

    let checks = CHECK_NAMES
        .iter()
        .zip(margins)
        .map(|(&name, (margin, threshold))| {
            let applicable = x_int >= threshold;
            let status = if !applicable {
                CheckStatus::NotApplicable
            } else {
                match Verdict::from_margin(&margin) {
                    Verdict::Holds => CheckStatus::Holds,
                    Verdict::Fails => CheckStatus::Fails,
                    Verdict::Indeterminate => CheckStatus::Indeterminate,
                }
            };
            BoundCheck {
                name,
                applicable,
                status,
                margin: margin.to_interval(),
            }
        })
        .collect();

    BoundCheckReport {
        x: x_int,
        n: snap.n,
        precision: R::PRECISION,
        checks,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lower,
    Upper,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub p: u64,
    pub n: u64,
    pub side: Side,
    /// Negative for a certified violation.
    pub margin: Interval,
}

/// Outcome of checking the two-sided bound at every prime in `[lo, hi)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub range: (u64, u64),
    pub primes_checked: u64,
    /// Primes where both sides are certified.
    pub holds: u64,
    pub violations: Vec<Violation>,
    /// Primes neither side of which could be decided, even in strict mode.
    pub indeterminate: Vec<u64>,
    /// Primes that needed the strict re-evaluation.
    pub escalated: u64,
    /// Smallest certified lower/upper margins among the primes that hold.
    pub min_lower_margin: Option<Interval>,
    pub min_upper_margin: Option<Interval>,
}

impl VerificationReport {
    fn new(lo: u64, hi: u64) -> Self {
        Self {
            range: (lo, hi),
            primes_checked: 0,
            holds: 0,
            violations: Vec::new(),
            indeterminate: Vec::new(),
            escalated: 0,
            min_lower_margin: None,
            min_upper_margin: None,
        }
    }

    /// Holds, violating and indeterminate primes account for every prime
    /// checked exactly once.
    pub fn is_partition(&self) -> bool {
        let mut violating: Vec<u64> = self.violations.iter().map(|v| v.p).collect();
        violating.dedup();
        let overlap = violating
            .iter()
            .any(|p| self.indeterminate.binary_search(p).is_ok());
        !overlap
            && self.holds + violating.len() as u64 + self.indeterminate.len() as u64
                == self.primes_checked
    }

    pub fn verified(&self) -> bool {
        self.violations.is_empty() && self.indeterminate.is_empty()
    }

    pub fn largest_violation(&self) -> Option<&Violation> {
        self.violations.iter().max_by_key(|v| v.p)
    }

    fn record_holds(&mut self, lower: Interval, upper: Interval) {
        self.holds += 1;
        self.min_lower_margin = Some(self.min_lower_margin.map_or(lower, |m| m.min_with(lower)));
        self.min_upper_margin = Some(self.min_upper_margin.map_or(upper, |m| m.min_with(upper)));
    }
}

fn side_margins<R: Enclosure>(state: &MeanState<R>) -> (R, R) {
    let log_ratio = state.log_ratio().expect("non-empty state");
    let log_p = state.log_prime().expect("non-empty state");
    let (lo, hi) = theorem_log_bounds(log_p);
    (log_ratio - lo, hi - log_ratio)
}

/// Checks the log-scale bound at every prime in `[lo, hi)`.
///
/// The sweep runs in binary64; primes it cannot certify are re-evaluated once
/// in double-double before being reported as violations or indeterminate.
pub fn verify_theorem_range(lo: u64, hi: u64, config: SieveConfig) -> Result<VerificationReport> {
    if lo > hi {
        return Err(Error::Config(format!(
            "empty range: from {lo} exceeds to {hi}"
        )));
    }
    let mut report = VerificationReport::new(lo, hi);
    if hi <= lo.max(2) {
        return Ok(report);
    }
    let config = config.with_limit(hi - 1);
    let mut flagged: Vec<u64> = Vec::new();
    sweep::<Interval, _>(PrimeStream::new(config)?, |state| {
        let p = state.last().map_or(0, |e| e.prime);
        if p < lo {
            return Ok(ControlFlow::Continue(()));
        }
        report.primes_checked += 1;
        let (lower, upper) = side_margins(state);
        if lower.certainly_positive() && upper.certainly_positive() {
            report.record_holds(lower, upper);
        } else {
            flagged.push(p);
        }
        Ok(ControlFlow::Continue(()))
    })?;

    let Some(&last) = flagged.last() else {
        return Ok(report);
    };
    report.escalated = flagged.len() as u64;
    let mut pending = flagged.iter().peekable();
    sweep::<DdInterval, _>(PrimeStream::new(config.with_limit(last))?, |state| {
        let event = state.last().expect("non-empty state");
        if pending.next_if(|&&p| p == event.prime).is_none() {
            return Ok(ControlFlow::Continue(()));
        }
        let (lower, upper) = side_margins(state);
        let verdicts = (Verdict::from_margin(&lower), Verdict::from_margin(&upper));
        match verdicts {
            (Verdict::Holds, Verdict::Holds) => {
                report.record_holds(lower.to_interval(), upper.to_interval())
            }
            (Verdict::Fails, _) | (_, Verdict::Fails) => {
                for (side, margin, verdict) in [
                    (Side::Lower, lower, verdicts.0),
                    (Side::Upper, upper, verdicts.1),
                ] {
                    if verdict == Verdict::Fails {
                        report.violations.push(Violation {
                            p: event.prime,
                            n: event.index,
                            side,
                            margin: margin.to_interval(),
                        });
                    }
                }
            }
            _ => report.indeterminate.push(event.prime),
        }
        Ok(if pending.peek().is_none() {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        })
    })?;
    Ok(report)
}

/// Result of scanning below the claimed threshold.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SharpnessReport {
    pub below: u64,
    pub report: VerificationReport,
    /// Largest prime at which the bound fails (strict-mode margin).
    pub largest_violation: Option<Violation>,
    /// Margin at that prime recomputed from the exact primorial.
    pub exact_margin: Option<Interval>,
}

impl SharpnessReport {
    /// The largest violation is certified both in strict mode and from the
    /// exact primorial.
    pub fn confirmed(&self) -> bool {
        match (&self.largest_violation, self.exact_margin) {
            (Some(v), Some(m)) => v.margin.hi() < 0.0 && m.hi() < 0.0,
            _ => false,
        }
    }
}

/// Margin of one side at index `n`, with `theta` taken from the exact
/// primorial.
pub fn exact_side_margin(n: u64, p: u64, side: Side) -> Result<DdInterval> {
    let theta = ln_biguint(&primorial(n)?)?;
    let log_p = DdInterval::ln_u64(p)?;
    let log_ratio = log_p - theta / DdInterval::from_u64(n);
    let (lo, hi) = theorem_log_bounds(log_p);
    Ok(match side {
        Side::Lower => log_ratio - lo,
        Side::Upper => hi - log_ratio,
    })
}

/// Checks every prime in `[2, below)` and re-derives the largest violation
/// from the exact primorial.
pub fn sharpness_scan(below: u64, config: SieveConfig) -> Result<SharpnessReport> {
    let report = verify_theorem_range(2, below, config)?;
    let largest_violation = report.largest_violation().cloned();
    let exact_margin = match &largest_violation {
        Some(v) => Some(exact_side_margin(v.n, v.p, v.side)?.to_interval()),
        None => None,
    };
    Ok(SharpnessReport {
        below,
        report,
        largest_violation,
        exact_margin,
    })
}

/// Both sides of `e < p_n/s_n < (p_n/p_{n-1}) * p_{n+1}^(pi(n)/n)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SandorReport {
    pub n: u64,
    pub lower: Verdict,
    pub upper: Verdict,
    pub rhs: Interval,
}

impl SandorReport {
    pub fn verdict(&self) -> Verdict {
        match (self.lower, self.upper) {
            (Verdict::Holds, Verdict::Holds) => Verdict::Holds,
            (Verdict::Fails, _) | (_, Verdict::Fails) => Verdict::Fails,
            _ => Verdict::Indeterminate,
        }
    }
}

/// Evaluates the double inequality at index `n`; `pi(n)` is the number of
/// primes up to the index itself.
pub fn sandor_check<R: Enclosure>(
    n: u64,
    p_prev: u64,
    p_n: u64,
    p_next: u64,
    snap: &Snapshot<R>,
) -> Result<SandorReport> {
    if n < 10 {
        return Err(Error::NotClaimed { n, min: 10 });
    }
    if snap.n != n || snap.p_n != p_n || !(p_prev < p_n && p_n < p_next) {
        return Err(Error::Domain(format!(
            "inconsistent inputs: n = {n}, primes {p_prev} < {p_n} < {p_next}, snapshot at ({}, {})",
            snap.n, snap.p_n
        )));
    }
    let e = R::from_u64(1).exp()?;
    let exponent = R::ratio(prime_count(n)?, n) * R::ln_u64(p_next)?;
    let rhs = R::ratio(p_n, p_prev) * exponent.exp()?;
    Ok(SandorReport {
        n,
        lower: Verdict::from_margin(&(snap.ratio - e)),
        upper: Verdict::from_margin(&(rhs - snap.ratio)),
        rhs: rhs.to_interval(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mean_stream::{rows_at_targets, rows_at_targets_with, snapshots_at_indices};

    #[test]
    fn constants_match_decimals() {
        assert_eq!(BOUNDS.thm_lower_c.approx(), 1.62);
        assert_eq!(BOUNDS.thm_upper_c.approx(), 4.83);
        assert_eq!(BOUNDS.axler_upper_c.approx(), 2.62);
        assert_eq!(BOUNDS.axler_lower_c.approx(), 3.83);
        assert!(!BOUNDS.theorem_threshold.provenance.is_empty());
    }

    #[test]
    fn bounds_at_32059() {
        let (lo, hi) = theorem_bounds(32059).unwrap();
        // 3.03870536994912596..., 3.13068270844069151...
        assert!(lo.contains(3.038_705_369_949_126));
        assert!(hi.contains(3.130_682_708_440_691_5));
        assert!(lo.width() < 1e-14 && hi.width() < 1e-14);
    }

    #[test]
    fn table_ratio_between_bounds() {
        let (lo, hi) = theorem_bounds(100_000_007).unwrap();
        assert!(lo.hi() < 2.903984 && 2.903984 < hi.lo());
    }

    #[test]
    fn bounds_decrease_toward_e() {
        let e = std::f64::consts::E;
        let mut prev = (f64::INFINITY, f64::INFINITY);
        let mut p = 3.0f64;
        while p < 1e18 {
            let (lo, hi) = theorem_bounds(p as u64).unwrap();
            assert!(lo.mid() < prev.0 && hi.mid() < prev.1, "p = {p}");
            assert!(lo.lo() > e && hi.lo() > lo.hi());
            prev = (lo.mid(), hi.mid());
            p *= 1.9;
        }
        assert!(prev.1 - e < 0.12);
        assert!(theorem_bounds(1).is_err());
    }

    #[test]
    fn strict_bounds_agree() {
        for p in [2, 32059, 1_000_003] {
            let (a, b) = theorem_bounds(p).unwrap();
            let (c, d) = theorem_bounds_with::<DdInterval>(p).unwrap();
            assert!(a.contains_interval(&c.to_interval()));
            assert!(b.contains_interval(&d.to_interval()));
        }
    }

    #[test]
    fn small_x_gating() {
        let snap = rows_at_targets(20, &[11]).unwrap().remove(0);
        let r = reference_bound_report(&snap);
        assert_eq!(r.checks.len(), CHECK_NAMES.len());
        for c in &r.checks {
            assert!(!c.applicable, "{}", c.name);
            assert_eq!(c.status, CheckStatus::NotApplicable);
        }
        assert!(r.all_applicable_hold());
    }

    #[test]
    fn dusart_pi_at_10007() {
        let snap = rows_at_targets(10_007, &[10_007]).unwrap().remove(0);
        assert_eq!(snap.n, 1230);
        let r = reference_bound_report(&snap);
        let c = r.get("dusart_pi").unwrap();
        assert!(c.applicable);
        assert_eq!(c.status, CheckStatus::Holds);
        // 1230 - 1218.72501474985...
        assert!((c.margin.mid() - 11.274_985_250_15).abs() < 1e-9);
        assert!(!r.get("theta_gap").unwrap().applicable);
        assert_eq!(
            r.get("theorem_lower").unwrap().status,
            CheckStatus::NotApplicable
        );
    }

    #[test]
    fn theorem_checks_apply_from_32059() {
        let snap = rows_at_targets(40_000, &[32_059]).unwrap().remove(0);
        assert_eq!(snap.p_n, 32059);
        let r = reference_bound_report(&snap);
        assert_eq!(r.get("theorem_lower").unwrap().status, CheckStatus::Holds);
        assert_eq!(r.get("theorem_upper").unwrap().status, CheckStatus::Holds);
        assert!(r.all_applicable_hold());
    }

    #[test]
    fn pi_and_theta_gap_identity() {
        // the theta-based bounds are the pi-based ones shifted by 1/L^2
        let snap = rows_at_targets(2000, &[1009]).unwrap().remove(0);
        let l = snap.log_p;
        let inv_l2 = l.recip().square();
        let lower_pi = log_bound(l, BOUNDS.axler_upper_c);
        let lower_theta = log_bound(l, BOUNDS.thm_lower_c);
        let upper_pi = log_bound(l, BOUNDS.axler_lower_c);
        let upper_theta = log_bound(l, BOUNDS.thm_upper_c);
        assert!((lower_pi - inv_l2).overlaps(&lower_theta));
        assert!((upper_pi + inv_l2).overlaps(&upper_theta));
    }

    #[test]
    fn empty_range() {
        let r = verify_theorem_range(5, 5, SieveConfig::new(10)).unwrap();
        assert_eq!(r.primes_checked, 0);
        assert!(r.verified() && r.is_partition());
        assert!(r.min_lower_margin.is_none());
        assert!(verify_theorem_range(6, 5, SieveConfig::new(10)).is_err());
    }

    #[test]
    fn verify_short_range_above_threshold() {
        let r = verify_theorem_range(32059, 200_000, SieveConfig::new(2)).unwrap();
        assert_eq!(r.primes_checked, 17984 - 3438);
        assert!(r.verified(), "{:?}", r.violations.first());
        assert!(r.is_partition());
        assert!(r.min_lower_margin.unwrap().lo() > 0.0);
        assert!(r.min_upper_margin.unwrap().lo() > 0.0);
    }

    #[test]
    fn below_threshold_has_violations() {
        let s = sharpness_scan(32059, SieveConfig::new(2)).unwrap();
        assert!(s.report.is_partition());
        assert!(s.report.indeterminate.is_empty());
        let v = s.largest_violation.as_ref().unwrap();
        assert!(v.p < 32059);
        assert!(s.confirmed());
        let exact = s.exact_margin.unwrap();
        assert!(exact.overlaps(&v.margin));
    }

    #[test]
    fn sandor_at_ten() {
        let snap = snapshots_at_indices::<Interval>(SieveConfig::new(40), &[10])
            .unwrap()
            .remove(0);
        let r = sandor_check(10, 23, 29, 31, &snap).unwrap();
        assert_eq!(r.verdict(), Verdict::Holds);
        // (29/23) * 31^(4/10) = 4.97983369475472...
        assert!(r.rhs.contains(4.979_833_694_754_72));
        // 29 / 6469693230^(1/10) = 3.02907222715351...
        assert!(snap.ratio.contains(3.029_072_227_153_51));
    }

    #[test]
    fn sandor_lower_side_from_table() {
        let snap = rows_at_targets_with::<DdInterval>(SieveConfig::new(110), &[101])
            .unwrap()
            .remove(0);
        assert_eq!(snap.n, 26);
        let r = sandor_check(26, 97, 101, 103, &snap).unwrap();
        assert_eq!(r.lower, Verdict::Holds);
    }

    #[test]
    fn sandor_not_claimed_below_ten() {
        let snap = rows_at_targets(20, &[11]).unwrap().remove(0);
        assert!(matches!(
            sandor_check(5, 7, 11, 13, &snap),
            Err(Error::NotClaimed { n: 5, min: 10 })
        ));
        let snap = snapshots_at_indices::<Interval>(SieveConfig::new(40), &[10])
            .unwrap()
            .remove(0);
        assert!(sandor_check(10, 19, 23, 29, &snap).is_err());
    }
}
