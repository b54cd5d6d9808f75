use super::dd::{DdInterval, DoubleDouble, OP_REL_ERR};
use super::interval::Interval;
use super::round::{add_down, add_up, sub_down, two_sum};
use super::RunningSum;

/// Compensated binary64 sum of interval midpoints with a certified radius.
///
/// `principal + compensation` is kept renormalized (an unevaluated
/// double-double), and every bit dropped when folding a TwoSum residue into
/// the compensation is recovered exactly and charged to `error_radius`,
/// together with each term's half-width. The exact sum of the inputs is
/// always within `principal + compensation ± error_radius`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CompensatedSum {
    principal: f64,
    compensation: f64,
    error_radius: f64,
    count: u64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn principal(&self) -> f64 {
        self.principal
    }

    pub fn compensation(&self) -> f64 {
        self.compensation
    }

    pub fn error_radius(&self) -> f64 {
        self.error_radius
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    fn add_exact(&mut self, value: f64, extra: f64) {
        let (s, e) = two_sum(self.principal, value);
        let (c, dropped) = two_sum(self.compensation, e);
        let (p, c) = two_sum(s, c);
        self.principal = p;
        self.compensation = c;
        self.error_radius = add_up(add_up(self.error_radius, extra), dropped.abs());
    }

    pub fn add(&mut self, term: Interval) {
        let mid = term.mid();
        self.add_exact(mid, term.radius());
        self.count += 1;
    }

    pub fn interval(&self) -> Interval {
        let lo = sub_down(
            add_down(self.principal, self.compensation),
            self.error_radius,
        );
        let hi = add_up(add_up(self.principal, self.compensation), self.error_radius);
        Interval::from_bounds(lo, hi)
    }
}

impl RunningSum<Interval> for CompensatedSum {
    fn add_term(&mut self, term: Interval) {
        self.add(term);
    }

    fn total(&self) -> Interval {
        self.interval()
    }

    fn count(&self) -> u64 {
        self.count
    }

    fn merge(&mut self, other: &Self) {
        self.add_exact(other.principal, other.error_radius);
        self.add_exact(other.compensation, 0.0);
        self.count += other.count;
    }
}

/// Adds one term; see [`CompensatedSum`].
pub fn accumulate_term(mut sum: CompensatedSum, term: Interval) -> CompensatedSum {
    sum.add(term);
    sum
}

/// `[principal + compensation - radius, principal + compensation + radius]`,
/// rounded outward.
pub fn as_interval(sum: &CompensatedSum) -> Interval {
    sum.interval()
}

/// Double-double sum of enclosure midpoints with a binary64 error radius.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DdSum {
    value: DoubleDouble,
    error_radius: f64,
    count: u64,
}

impl DdSum {
    pub fn value(&self) -> DoubleDouble {
        self.value
    }

    pub fn error_radius(&self) -> f64 {
        self.error_radius
    }

    fn add_dd(&mut self, mid: DoubleDouble, radius: f64) {
        self.value = self.value + mid;
        // rounding of the double-double addition
        let rounding = self.value.hi().abs() * OP_REL_ERR;
        self.error_radius = add_up(add_up(self.error_radius, radius), rounding);
    }
}

impl RunningSum<DdInterval> for DdSum {
    fn add_term(&mut self, term: DdInterval) {
        self.add_dd(term.mid(), term.radius());
        self.count += 1;
    }

    fn total(&self) -> DdInterval {
        DdInterval::around(self.value, OP_REL_ERR, self.error_radius)
    }

    fn count(&self) -> u64 {
        self.count
    }

    fn merge(&mut self, other: &Self) {
        self.add_dd(other.value, other.error_radius);
        self.count += other.count;
    }
}

#[cfg(test)]
mod tests {
    use super::super::{interval_log, Enclosure};
    use super::*;
    use num_bigint::BigInt;
    use num_traits::Zero;
    use proptest::prelude::*;

    #[test]
    fn empty_sum_is_zero() {
        assert_eq!(as_interval(&CompensatedSum::new()), Interval::ZERO);
        let dd = DdSum::default().total();
        assert!(dd.contains(DoubleDouble::ZERO));
        assert!(dd.width() < 1e-290);
    }

    #[test]
    fn adding_zero_is_identity() {
        let mut s = CompensatedSum::new();
        s.add(Interval::point(1.5));
        let before = s;
        let after = accumulate_term(s, Interval::ZERO);
        assert_eq!(after.principal(), before.principal());
        assert_eq!(after.error_radius(), before.error_radius());
        assert_eq!(after.count(), before.count() + 1);
    }

    #[test]
    fn million_tenths() {
        // encloses the rational 1/10, midpoint 0.1
        let tenth = Interval::ratio(1, 10);
        assert_eq!(tenth.mid(), 0.1);
        let mut t = CompensatedSum::new();
        for _ in 0..1_000_000 {
            t.add(tenth);
        }
        assert!(t.interval().contains(100_000.0));
        assert!(t.interval().width() < 1e-9);
    }

    #[test]
    fn primorial_2310() {
        let mut s = CompensatedSum::new();
        for p in [2, 3, 5, 7, 11] {
            s.add(interval_log(p).unwrap());
        }
        let iv = s.interval();
        // ln 2310 = 7.7450028035158392245805330130...
        assert!(iv.lo() < 7.745_002_803_515_839 && 7.745_002_803_515_84 < iv.hi());
        assert!(iv.width() <= 1e-12);
    }

    #[test]
    fn dd_sum_of_logs() {
        let mut s = DdSum::default();
        for p in [2, 3, 5, 7, 11] {
            s.add_term(DdInterval::ln_u64(p).unwrap());
        }
        let direct = DdInterval::ln_u64(2310).unwrap();
        let total = s.total();
        assert!(total.lo() <= direct.hi() && direct.lo() <= total.hi());
        assert!(total.width() < 1e-26);
    }

    #[test]
    fn merge_matches_sequential() {
        let terms: Vec<Interval> = (2..500u64).map(|p| interval_log(p).unwrap()).collect();
        let mut all = CompensatedSum::new();
        terms.iter().for_each(|t| all.add(*t));
        let mut left = CompensatedSum::new();
        let mut right = CompensatedSum::new();
        terms[..200].iter().for_each(|t| left.add(*t));
        terms[200..].iter().for_each(|t| right.add(*t));
        left.merge(&right);
        assert_eq!(left.count(), all.count());
        let (a, b) = (left.interval(), all.interval());
        assert!(a.lo() <= b.hi() && b.lo() <= a.hi());
    }

    // exact value of a double as a rational num / 2^1074
    fn exact(x: f64) -> BigInt {
        let bits = x.to_bits();
        let neg = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if biased == 0 {
            (frac, -1074)
        } else {
            (frac | (1 << 52), biased - 1075)
        };
        let v = BigInt::from(m) << (e + 1074) as usize;
        if neg {
            -v
        } else {
            v
        }
    }

    fn contains_exact(iv: Interval, num: &BigInt) -> bool {
        exact(iv.lo()) <= *num && *num <= exact(iv.hi())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn sum_contains_exact_rational_sum(
            terms in prop::collection::vec(
                prop_oneof![
                    -1.0e6..1.0e6f64,
                    -1.0..1.0f64,
                    (-1000i64..1000).prop_map(|k| k as f64 * 1e-12),
                ],
                0..60,
            )
        ) {
            let mut s = CompensatedSum::new();
            let mut exact_sum = BigInt::zero();
            for &t in &terms {
                s.add(Interval::point(t));
                exact_sum += exact(t);
            }
            prop_assert!(contains_exact(s.interval(), &exact_sum));
        }

        #[test]
        fn any_order_contains_exact_sum(
            mut terms in prop::collection::vec(0.0..1.0e3f64, 1..40),
            seed in any::<u64>(),
        ) {
            let exact_sum: BigInt = terms.iter().map(|&t| exact(t)).sum();
            // deterministic shuffle
            let n = terms.len();
            let mut state = seed | 1;
            for i in (1..n).rev() {
                state ^= state << 13; state ^= state >> 7; state ^= state << 17;
                terms.swap(i, (state % (i as u64 + 1)) as usize);
            }
            let mut s = CompensatedSum::new();
            terms.iter().for_each(|&t| s.add(Interval::point(t)));
            prop_assert!(contains_exact(s.interval(), &exact_sum));
        }

        #[test]
        fn radius_never_decreases(terms in prop::collection::vec(-1.0e8..1.0e8f64, 1..50)) {
            let mut s = CompensatedSum::new();
            let mut last = 0.0;
            for &t in &terms {
                s.add(Interval::point(t).widen_ulps(1));
                prop_assert!(s.error_radius() >= last);
                last = s.error_radius();
            }
        }
    }
}
