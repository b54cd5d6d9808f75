//! Streaming geometric mean of the first `n` primes.
//!
//! [`MeanState`] folds prime events into a certified running value of
//! `theta(p_n) = ln(p_n#)`; a [`Snapshot`] derives `ln s_n = theta / n`,
//! `s_n`, and `p_n / s_n` from it on demand. The state is generic over the
//! enclosure type so the same code runs in binary64 ([`Interval`]) and in
//! double-double ([`DdInterval`]) precision.

use crate::error::{Error, Result};
use crate::numerics::{DdInterval, Enclosure, Interval, RunningSum};
use crate::sieve::{PrimeEvent, PrimeStream, SieveConfig};
use serde::Serialize;
use std::ops::ControlFlow;

/// Which enclosure type a computation runs in.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    /// Binary64 intervals, escalating to double-double where certification fails.
    #[default]
    Standard,
    /// Double-double throughout.
    Strict,
}

/// Running `theta(p_n)` plus the most recent prime.
#[derive(Clone, Debug)]
pub struct MeanState<R: Enclosure = Interval> {
    theta: R::Sum,
    // index of the first event this state expects minus one
    offset: u64,
    last: Option<PrimeEvent>,
    log_last: Option<R>,
}

impl<R: Enclosure> Default for MeanState<R> {
    fn default() -> Self {
        Self::new()
    }
}

impl<R: Enclosure> MeanState<R> {
    pub fn new() -> Self {
        Self {
            theta: R::Sum::default(),
            offset: 0,
            last: None,
            log_last: None,
        }
    }

    /// A partial state covering only the primes after `prev`; combine it
    /// with the state that ends at `prev` via [`MeanState::merge`].
    pub fn starting_after(prev: PrimeEvent) -> Self {
        Self {
            offset: prev.index,
            ..Self::new()
        }
    }

    /// Index of the next event this state accepts.
    pub fn next_index(&self) -> u64 {
        self.offset + self.theta.count() + 1
    }

    pub fn last(&self) -> Option<PrimeEvent> {
        self.last
    }

    /// `n`, the number of primes folded in (including any merged prefix).
    pub fn count(&self) -> u64 {
        self.offset + self.theta.count()
    }

    pub fn theta(&self) -> R {
        self.theta.total()
    }

    pub fn log_prime(&self) -> Option<R> {
        self.log_last
    }

    pub fn accumulate(&mut self, event: PrimeEvent) -> Result<()> {
        let expected = self.next_index();
        if event.index != expected {
            return Err(Error::Sequencing {
                expected,
                got: event.index,
            });
        }
        if let Some(prev) = self.last {
            if event.prime <= prev.prime {
                return Err(Error::Sequencing {
                    expected,
                    got: event.index,
                });
            }
        }
        let log_p = R::ln_u64(event.prime)?;
        self.theta.add_term(log_p);
        self.last = Some(event);
        self.log_last = Some(log_p);
        Ok(())
    }

    /// Appends a state built with [`MeanState::starting_after`] at this
    /// state's last event.
    pub fn merge(&mut self, tail: &MeanState<R>) -> Result<()> {
        if tail.offset != self.count() || self.offset != 0 {
            return Err(Error::Sequencing {
                expected: self.count(),
                got: tail.offset,
            });
        }
        self.theta.merge(&tail.theta);
        if tail.last.is_some() {
            self.last = tail.last;
            self.log_last = tail.log_last;
        }
        Ok(())
    }

    /// `ln(p_n / s_n) = ln p_n - theta / n`, the quantity the explicit bounds
    /// constrain; cheaper than a full snapshot.
    pub fn log_ratio(&self) -> Option<R> {
        let last = self.last?;
        let log_p = self.log_last?;
        Some(log_p - self.theta() / R::from_u64(last.index))
    }

    pub fn snapshot(&self) -> Result<Snapshot<R>> {
        let last = self
            .last
            .ok_or_else(|| Error::Domain("snapshot of an empty mean state".into()))?;
        if self.offset != 0 {
            return Err(Error::Domain("snapshot of a partial mean state".into()));
        }
        let log_p = self.log_last.expect("log of last prime");
        let n = R::from_u64(last.index);
        let theta = self.theta();
        if last.index == 1 {
            // s_1 = p_1 exactly; exp(ln 2) could never certify the floor of 2
            return Ok(Snapshot {
                n: 1,
                p_n: last.prime,
                theta,
                log_p,
                log_s: log_p,
                s: R::from_u64(last.prime),
                ratio: R::from_u64(1),
                log_ratio: R::from_u64(0),
            });
        }
        let log_s = theta / n;
        let s = log_s.exp()?;
        let ratio = R::from_u64(last.prime) / s;
        Ok(Snapshot {
            n: last.index,
            p_n: last.prime,
            theta,
            log_p,
            log_s,
            s,
            ratio,
            log_ratio: log_p - log_s,
        })
    }
}

/// Folds one event into a state, by value.
pub fn accumulate<R: Enclosure>(
    mut state: MeanState<R>,
    event: PrimeEvent,
) -> Result<MeanState<R>> {
    state.accumulate(event)?;
    Ok(state)
}

/// Certified view of the mean at index `n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Snapshot<R> {
    pub n: u64,
    pub p_n: u64,
    /// `theta(p_n) = ln(p_n#)`.
    pub theta: R,
    pub log_p: R,
    /// `ln s_n = theta / n`.
    pub log_s: R,
    pub s: R,
    /// `p_n / s_n`.
    pub ratio: R,
    /// `ln(p_n / s_n)`.
    pub log_ratio: R,
}

pub type MeanSnapshot = Snapshot<Interval>;
pub type StrictSnapshot = Snapshot<DdInterval>;

impl<R: Enclosure> Snapshot<R> {
    /// Outward binary64 view of every field.
    pub fn to_standard(&self) -> MeanSnapshot {
        Snapshot {
            n: self.n,
            p_n: self.p_n,
            theta: self.theta.to_interval(),
            log_p: self.log_p.to_interval(),
            log_s: self.log_s.to_interval(),
            s: self.s.to_interval(),
            ratio: self.ratio.to_interval(),
            log_ratio: self.log_ratio.to_interval(),
        }
    }
}

/// Drives `visit` over every prime of `stream`, stopping early on `Break`.
pub fn sweep<R, F>(stream: PrimeStream, mut visit: F) -> Result<MeanState<R>>
where
    R: Enclosure,
    F: FnMut(&MeanState<R>) -> Result<ControlFlow<()>>,
{
    let mut state = MeanState::<R>::new();
    for event in stream {
        state.accumulate(event)?;
        if visit(&state)?.is_break() {
            break;
        }
    }
    Ok(state)
}

/// Snapshots at the smallest prime `>= t` for each target `t`.
pub fn rows_at_targets(limit: u64, targets: &[u64]) -> Result<Vec<MeanSnapshot>> {
    rows_at_targets_with::<Interval>(SieveConfig::new(limit), targets)
}

pub fn rows_at_targets_with<R: Enclosure>(
    config: SieveConfig,
    targets: &[u64],
) -> Result<Vec<Snapshot<R>>> {
    if targets.is_empty() {
        return Ok(Vec::new());
    }
    if targets.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Config("targets must be ascending".into()));
    }
    let limit = config.limit;
    if let Some(&t) = targets.iter().find(|&&t| t > limit) {
        return Err(Error::Capacity {
            what: "target",
            requested: t,
            capacity: limit,
        });
    }
    let mut rows = Vec::with_capacity(targets.len());
    let mut pending = targets.iter().peekable();
    sweep::<R, _>(PrimeStream::new(config)?, |state| {
        let p = state.last().map(|e| e.prime).unwrap_or(0);
        while pending.next_if(|&&t| t <= p).is_some() {
            rows.push(state.snapshot()?);
        }
        Ok(if pending.peek().is_none() {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        })
    })?;
    if let Some(&&t) = pending.peek() {
        return Err(Error::Capacity {
            what: "target (no prime between it and the limit)",
            requested: t,
            capacity: limit,
        });
    }
    Ok(rows)
}

/// Snapshots at the given indices (ascending, deduplicated).
pub fn snapshots_at_indices<R: Enclosure>(
    config: SieveConfig,
    indices: &[u64],
) -> Result<Vec<Snapshot<R>>> {
    let mut out = Vec::with_capacity(indices.len());
    if indices.is_empty() {
        return Ok(out);
    }
    let mut pending = indices.iter().peekable();
    sweep::<R, _>(PrimeStream::new(config)?, |state| {
        let n = state.count();
        while pending.next_if(|&&i| i <= n).is_some() {
            out.push(state.snapshot()?);
        }
        Ok(if pending.peek().is_none() {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        })
    })?;
    if let Some(&&i) = pending.peek() {
        return Err(Error::Capacity {
            what: "prime index",
            requested: i,
            capacity: config.limit,
        });
    }
    Ok(out)
}

/// Snapshot at the largest prime `<= x`.
pub fn snapshot_at_or_below<R: Enclosure>(config: SieveConfig, x: u64) -> Result<Snapshot<R>> {
    if x < 2 {
        return Err(Error::EmptyRange { limit: x });
    }
    let state = sweep::<R, _>(PrimeStream::new(config.with_limit(x))?, |_| {
        Ok(ControlFlow::Continue(()))
    })?;
    state.snapshot()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Certainty;
    use crate::sieve::stream_primes;

    fn state_after<R: Enclosure>(limit: u64) -> MeanState<R> {
        let mut st = MeanState::<R>::new();
        for e in stream_primes(SieveConfig::new(limit)).unwrap() {
            st.accumulate(e).unwrap();
        }
        st
    }

    #[test]
    fn first_prime() {
        let st = accumulate(
            MeanState::<Interval>::new(),
            PrimeEvent { index: 1, prime: 2 },
        )
        .unwrap();
        assert!(st.theta().contains(std::f64::consts::LN_2));
        let snap = st.snapshot().unwrap();
        assert!(snap.s.contains(2.0));
        assert!(snap.ratio.contains(1.0));
    }

    #[test]
    fn out_of_order_is_rejected() {
        let mut st = MeanState::<Interval>::new();
        let err = st
            .accumulate(PrimeEvent { index: 2, prime: 3 })
            .unwrap_err();
        assert_eq!(
            err,
            Error::Sequencing {
                expected: 1,
                got: 2
            }
        );
        st.accumulate(PrimeEvent { index: 1, prime: 2 }).unwrap();
        assert!(st.accumulate(PrimeEvent { index: 2, prime: 2 }).is_err());
    }

    #[test]
    fn theta_at_eleven() {
        let st = state_after::<Interval>(11);
        // ln 2310 = 7.7450028035158392...
        assert!(st.theta().contains(7.745_002_803_515_839));
        assert_eq!(st.count(), 5);
    }

    #[test]
    fn count_at_100003() {
        let st = state_after::<Interval>(100_003);
        assert_eq!(st.count(), 9593);
        assert_eq!(st.last().unwrap().prime, 100_003);
    }

    #[test]
    fn table_first_row() {
        let snap = state_after::<Interval>(11).snapshot().unwrap();
        assert_eq!(snap.n, 5);
        assert_eq!(snap.s.certified_round(6).digits, "4.706764");
        assert_eq!(snap.ratio.certified_round(6).digits, "2.337062");
        assert_eq!(snap.s.certified_round(6).status, Certainty::Certified);
        assert_eq!(snap.s.certified_floor(), Some(4));
    }

    #[test]
    fn table_row_10007() {
        let snap = state_after::<Interval>(10_007).snapshot().unwrap();
        assert_eq!(snap.n, 1230);
        assert_eq!(snap.s.certified_round(6).to_string(), "3143.242209");
        assert_eq!(snap.ratio.certified_round(6).to_string(), "3.183655");
    }

    #[test]
    fn strict_agrees_with_standard() {
        let a = state_after::<Interval>(50_000).snapshot().unwrap();
        let b = state_after::<DdInterval>(50_000).snapshot().unwrap();
        assert!(a.s.overlaps(&b.s.to_interval()));
        assert!(a.theta.overlaps(&b.theta.to_interval()));
        assert!(b.s.width() < a.s.width());
    }

    #[test]
    fn ratio_exceeds_one_after_first_prime() {
        let mut st = MeanState::<Interval>::new();
        for e in stream_primes(SieveConfig::new(20_000)).unwrap() {
            st.accumulate(e).unwrap();
            if e.index >= 2 {
                assert!(st.snapshot().unwrap().ratio.lo() > 1.0, "n = {}", e.index);
            }
        }
    }

    #[test]
    fn resumed_run_matches_fresh_run() {
        let events: Vec<_> = stream_primes(SieveConfig::new(30_000)).unwrap().collect();
        let fresh = {
            let mut s = MeanState::<Interval>::new();
            events.iter().for_each(|e| s.accumulate(*e).unwrap());
            s.snapshot().unwrap()
        };
        for split in [1usize, 17, 1000, events.len() - 1] {
            let mut head = MeanState::<Interval>::new();
            events[..split]
                .iter()
                .for_each(|e| head.accumulate(*e).unwrap());
            let mut tail = MeanState::<Interval>::starting_after(events[split - 1]);
            events[split..]
                .iter()
                .for_each(|e| tail.accumulate(*e).unwrap());
            head.merge(&tail).unwrap();
            let merged = head.snapshot().unwrap();
            assert_eq!(merged.n, fresh.n);
            assert!(merged.s.overlaps(&fresh.s));
        }
    }

    #[test]
    fn rows_pick_next_prime() {
        let rows = rows_at_targets(200, &[10, 100]).unwrap();
        let got: Vec<_> = rows.iter().map(|r| (r.n, r.p_n)).collect();
        assert_eq!(got, vec![(5, 11), (26, 101)]);
        assert!(rows_at_targets(200, &[]).unwrap().is_empty());
        assert!(matches!(
            rows_at_targets(200, &[300]),
            Err(Error::Capacity { .. })
        ));
        assert!(matches!(
            rows_at_targets(200, &[100, 10]),
            Err(Error::Config(_))
        ));
        // repeated targets share a prime
        let rows = rows_at_targets(200, &[8, 9, 10, 11]).unwrap();
        assert_eq!(
            rows.iter().map(|r| r.p_n).collect::<Vec<_>>(),
            vec![11, 11, 11, 11]
        );
    }

    #[test]
    fn snapshot_of_empty_state_fails() {
        assert!(MeanState::<Interval>::new().snapshot().is_err());
    }

    #[test]
    fn at_or_below() {
        let s = snapshot_at_or_below::<Interval>(SieveConfig::default(), 1008).unwrap();
        assert_eq!((s.n, s.p_n), (168, 997));
    }
}
