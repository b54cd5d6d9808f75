//! Exact integer sequences: primorials (A002110), the floor of the geometric
//! mean of the first `n` primes (A062049) and the coefficients of the
//! asymptotic series (A233824), with b-file output.
//!
//! `floor(s_n) = m` exactly when `m^n <= p_n# < (m + 1)^n`; that comparison
//! is the ground truth for every floor this module reports.

use crate::approx::panaitopol_coefficients;
use crate::error::{Error, Result};
use crate::mean_stream::snapshots_at_indices;
use crate::numerics::{DdInterval, Enclosure, Interval};
use crate::sieve::{first_primes, nth_prime_upper_bound, SieveConfig};
use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

/// Largest `n` handled with exact big-integer arithmetic.
pub const EXACT_CAPACITY: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SequenceId {
    A062049,
    A002110,
    A233824,
}

impl SequenceId {
    /// Smallest index emitted.
    pub fn offset(&self) -> u64 {
        match self {
            SequenceId::A002110 => 0,
            _ => 1,
        }
    }
}

impl fmt::Display for SequenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SequenceId::A062049 => "A062049",
            SequenceId::A002110 => "A002110",
            SequenceId::A233824 => "A233824",
        };
        f.write_str(s)
    }
}

impl FromStr for SequenceId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A062049" => Ok(SequenceId::A062049),
            "A002110" => Ok(SequenceId::A002110),
            "A233824" => Ok(SequenceId::A233824),
            _ => Err(Error::Config(format!("unknown sequence {s:?}"))),
        }
    }
}

fn check_exact_capacity(n: u64) -> Result<()> {
    if n > EXACT_CAPACITY {
        return Err(Error::Capacity {
            what: "exact primorial index",
            requested: n,
            capacity: EXACT_CAPACITY,
        });
    }
    Ok(())
}

// balanced product tree; much faster than a left fold for large inputs
fn product(values: &[u64]) -> BigUint {
    match values.len() {
        0 => BigUint::one(),
        1 => BigUint::from(values[0]),
        len => {
            let (a, b) = values.split_at(len / 2);
            product(a) * product(b)
        }
    }
}

/// `p_n# = 2 * 3 * ... * p_n`; the empty product for `n = 0`.
pub fn primorial(n: u64) -> Result<BigUint> {
    check_exact_capacity(n)?;
    if n == 0 {
        return Ok(BigUint::one());
    }
    Ok(product(&first_primes(n)?))
}

/// The two halves of `m^n <= p_n# < (m + 1)^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FloorWitness {
    pub n: u64,
    pub m: u64,
    /// `m^n <= p_n#`.
    pub lower: bool,
    /// `p_n# < (m + 1)^n`.
    pub upper: bool,
}

impl FloorWitness {
    /// `floor(s_n) == m`.
    pub fn holds(&self) -> bool {
        self.lower && self.upper
    }
}

/// Decides `floor(s_n) = m` by exact comparison.
pub fn exact_floor_witness(n: u64, m: u64) -> Result<FloorWitness> {
    if n == 0 || m == 0 {
        return Err(Error::Domain(format!(
            "need n, m >= 1, got n = {n}, m = {m}"
        )));
    }
    witness_against(&primorial(n)?, n, m)
}

fn witness_against(primorial: &BigUint, n: u64, m: u64) -> Result<FloorWitness> {
    check_exact_capacity(n)?;
    let exp = u32::try_from(n).expect("capacity fits in u32");
    Ok(FloorWitness {
        n,
        m,
        lower: BigUint::from(m).pow(exp) <= *primorial,
        upper: *primorial < BigUint::from(m + 1).pow(exp),
    })
}

/// Floor of `s_n` when `ln m <= ln s_n < ln(m + 1)` is certified on the log
/// scale; a cheap filter before the exact power comparison.
fn log_candidate<R: Enclosure>(log_s: R, s: R) -> Option<u64> {
    let m = s.to_interval().mid().floor() as u64;
    if m == 0 {
        return None;
    }
    let above = log_s - R::ln_u64(m).ok()?;
    let below = R::ln_u64(m + 1).ok()? - log_s;
    (above.certainly_positive() && below.certainly_positive()).then_some(m)
}

/// Exact floor for `n` with `m` as the first guess, stepping to the
/// neighbours until the witness holds.
fn exact_floor(primorial: &BigUint, n: u64, guess: u64) -> Result<u64> {
    let mut m = guess.max(1);
    loop {
        let w = witness_against(primorial, n, m)?;
        match (w.lower, w.upper) {
            (true, true) => return Ok(m),
            (false, _) => m -= 1,
            (true, false) => m += 1,
        }
    }
}

/// How each floor of a range was certified.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FloorStats {
    pub standard: u64,
    pub strict: u64,
    pub exact: u64,
}

/// `floor(s_n)`.
pub fn a062049(n: u64) -> Result<u64> {
    Ok(a062049_range(n, n)?.0[0])
}

/// `floor(s_n)` for `n` in `lo..=hi`.
///
/// Each floor is certified from the binary64 enclosure of `s_n` when both
/// endpoints agree, otherwise from a double-double sweep, and otherwise by the
/// exact comparison, which is an error above [`EXACT_CAPACITY`].
pub fn a062049_range(lo: u64, hi: u64) -> Result<(Vec<u64>, FloorStats)> {
    if lo == 0 || lo > hi {
        return Err(Error::Config(format!("invalid index range {lo}..={hi}")));
    }
    let config = SieveConfig::new(nth_prime_upper_bound(hi)?);
    let indices: Vec<u64> = (lo..=hi).collect();
    let mut stats = FloorStats::default();
    let mut values: Vec<Option<u64>> = snapshots_at_indices::<Interval>(config, &indices)?
        .iter()
        .map(|s| s.s.certified_floor())
        .collect();
    stats.standard = values.iter().flatten().count() as u64;

    let open: Vec<u64> = indices
        .iter()
        .zip(&values)
        .filter(|(_, v)| v.is_none())
        .map(|(&n, _)| n)
        .collect();
    if open.is_empty() {
        return Ok((values.into_iter().flatten().collect(), stats));
    }
    for snap in snapshots_at_indices::<DdInterval>(config, &open)? {
        let slot = &mut values[(snap.n - lo) as usize];
        if let Some(f) = snap.s.certified_floor() {
            *slot = Some(f);
            stats.strict += 1;
        } else {
            let guess = log_candidate(snap.log_s, snap.s)
                .unwrap_or_else(|| snap.s.to_interval().mid().floor() as u64);
            check_exact_capacity(snap.n)?;
            *slot = Some(exact_floor(&primorial(snap.n)?, snap.n, guess)?);
            stats.exact += 1;
        }
    }
    Ok((
        values.into_iter().map(|v| v.expect("filled")).collect(),
        stats,
    ))
}

/// Lines `"n a(n)\n"` for `n` in `lo..=hi`.
pub fn emit_bfile(id: SequenceId, lo: u64, hi: u64) -> Result<String> {
    if lo > hi {
        return Err(Error::Config(format!(
            "empty range: from {lo} exceeds to {hi}"
        )));
    }
    if lo < id.offset() {
        return Err(Error::Config(format!(
            "{id} starts at index {}",
            id.offset()
        )));
    }
    let values: Vec<String> = match id {
        SequenceId::A062049 => a062049_range(lo, hi)?
            .0
            .iter()
            .map(u64::to_string)
            .collect(),
        SequenceId::A002110 => {
            check_exact_capacity(hi)?;
            let primes = if hi == 0 {
                Vec::new()
            } else {
                first_primes(hi)?
            };
            let mut acc = primorial(lo)?;
            let mut out = vec![acc.to_string()];
            for &p in &primes[lo as usize..] {
                acc *= p;
                out.push(acc.to_string());
            }
            out
        }
        SequenceId::A233824 => {
            let len = usize::try_from(hi).map_err(|_| Error::Capacity {
                what: "coefficient index",
                requested: hi,
                capacity: usize::MAX as u64,
            })?;
            panaitopol_coefficients(len)?.terms()[lo as usize - 1..]
                .iter()
                .map(BigUint::to_string)
                .collect()
        }
    };
    let mut text = String::new();
    for (n, v) in (lo..=hi).zip(values) {
        text.push_str(&format!("{n} {v}\n"));
    }
    Ok(text)
}

/// Parses b-file text; blank lines and `#` comments are skipped.
pub fn parse_bfile(text: &str) -> Result<Vec<(u64, BigUint)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || Error::Config(format!("b-file line {}: {line:?}", i + 1));
        let mut parts = line.split_ascii_whitespace();
        let n = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
        let v = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
        if parts.next().is_some() {
            return Err(bad());
        }
        out.push((n, v));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const LISTING: [u64; 21] = [
        2, 2, 3, 3, 4, 5, 6, 7, 8, 9, 10, 11, 13, 14, 15, 16, 17, 19, 20, 21, 23,
    ];

    #[test]
    fn primorial_examples() {
        assert_eq!(primorial(0).unwrap(), BigUint::one());
        assert_eq!(primorial(1).unwrap(), BigUint::from(2u32));
        assert_eq!(primorial(3).unwrap(), BigUint::from(30u32));
        assert_eq!(primorial(5).unwrap(), BigUint::from(2310u32));
        assert_eq!(primorial(10).unwrap(), BigUint::from(6_469_693_230u64));
        assert!(matches!(
            primorial(EXACT_CAPACITY + 1),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn primorial_recurrence() {
        let primes = first_primes(300).unwrap();
        let mut prev = primorial(0).unwrap();
        for (i, &p) in primes.iter().enumerate() {
            let next = primorial(i as u64 + 1).unwrap();
            assert_eq!(next, &prev * p);
            prev = next;
        }
    }

    #[test]
    fn witness_examples() {
        assert!(exact_floor_witness(1, 2).unwrap().holds());
        assert!(exact_floor_witness(5, 4).unwrap().holds());
        let w = exact_floor_witness(5, 5).unwrap();
        assert!(!w.lower && w.upper && !w.holds());
        let w = exact_floor_witness(5, 3).unwrap();
        assert!(w.lower && !w.upper);
        assert!(exact_floor_witness(0, 3).is_err());
    }

    #[test]
    fn listing_prefix() {
        let (v, stats) = a062049_range(1, 21).unwrap();
        assert_eq!(v, LISTING);
        assert_eq!(stats.standard, 21);
        assert_eq!(a062049(5).unwrap(), 4);
        assert_eq!(a062049(1230).unwrap(), 3143);
    }

    #[test]
    fn exact_fallback_decides_integer_means() {
        // an enclosure straddling an integer defers to the exact comparison
        let p = primorial(1).unwrap();
        assert_eq!(exact_floor(&p, 1, 1).unwrap(), 2);
        assert_eq!(exact_floor(&p, 1, 3).unwrap(), 2);
    }

    #[test]
    fn exact_floor_steps_to_answer() {
        let p = primorial(21).unwrap();
        for guess in [1, 20, 23, 40] {
            assert_eq!(exact_floor(&p, 21, guess).unwrap(), 23);
        }
    }

    #[test]
    fn log_candidate_agrees() {
        for snap in
            snapshots_at_indices::<Interval>(SieveConfig::new(2000), &[5, 100, 300]).unwrap()
        {
            let m = log_candidate(snap.log_s, snap.s).unwrap();
            assert_eq!(Some(m), snap.s.certified_floor());
        }
    }

    #[test]
    fn non_decreasing() {
        let (v, _) = a062049_range(1, 5000).unwrap();
        assert!(v.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn bfile_examples() {
        assert_eq!(
            emit_bfile(SequenceId::A062049, 1, 3).unwrap(),
            "1 2\n2 2\n3 3\n"
        );
        assert_eq!(
            emit_bfile(SequenceId::A233824, 1, 3).unwrap(),
            "1 1\n2 3\n3 13\n"
        );
        assert_eq!(
            emit_bfile(SequenceId::A002110, 1, 3).unwrap(),
            "1 2\n2 6\n3 30\n"
        );
        assert_eq!(emit_bfile(SequenceId::A002110, 0, 1).unwrap(), "0 1\n1 2\n");
        for id in [
            SequenceId::A062049,
            SequenceId::A002110,
            SequenceId::A233824,
        ] {
            assert!(emit_bfile(id, 4, 3).is_err());
        }
        assert!(emit_bfile(SequenceId::A062049, 0, 3).is_err());
    }

    #[test]
    fn ids_parse() {
        assert_eq!(
            "a062049".parse::<SequenceId>().unwrap(),
            SequenceId::A062049
        );
        assert_eq!(
            SequenceId::A233824
                .to_string()
                .parse::<SequenceId>()
                .unwrap(),
            SequenceId::A233824
        );
        assert!("A000045".parse::<SequenceId>().is_err());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_bfile("1 2 3\n").is_err());
        assert!(parse_bfile("x 2\n").is_err());
        assert_eq!(
            parse_bfile("# c\n\n7 11\n").unwrap(),
            vec![(7, BigUint::from(11u32))]
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn bfile_round_trip(lo in 1u64..200, len in 0u64..60) {
            let hi = lo + len;
            let text = emit_bfile(SequenceId::A062049, lo, hi).unwrap();
            let parsed = parse_bfile(&text).unwrap();
            let (values, _) = a062049_range(lo, hi).unwrap();
            prop_assert_eq!(parsed.len() as u64, len + 1);
            for ((n, v), (k, want)) in parsed.iter().zip((lo..=hi).zip(values)) {
                prop_assert_eq!(*n, k);
                prop_assert_eq!(v, &BigUint::from(want));
            }
            let text = emit_bfile(SequenceId::A002110, lo, hi).unwrap();
            let parsed = parse_bfile(&text).unwrap();
            prop_assert_eq!(&parsed[0].1, &primorial(lo).unwrap());
        }
    }
}
