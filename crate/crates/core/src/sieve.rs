//! Segmented sieve of Eratosthenes over odd numbers.
//!
//! Primes are delivered through [`PrimeStream`], a pull-based iterator of
//! [`PrimeEvent`]s carrying both the prime `p_n` and its index `n = pi(p_n)`.
//! Each segment is a bitset of odd candidates, sized so that it stays cache
//! resident; the base primes up to `sqrt(limit)` are sieved once up front.

use crate::error::{Error, Result};

/// Largest supported sieve limit.
pub const MAX_LIMIT: u64 = 1 << 40;

/// Numbers covered by one segment unless configured otherwise (about 10^6 odd
/// candidates, a 128 KiB bitset).
pub const DEFAULT_SEGMENT_SIZE: u64 = 1 << 21;

/// Default cap on the memory used by a single segment plus the base primes.
pub const DEFAULT_MEMORY_BUDGET: u64 = 256 << 20;

// One bitset word covers 64 odd numbers, i.e. 128 consecutive integers.
const NUMBERS_PER_WORD: u64 = 128;

/// The `n`-th prime, `n` counted from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeEvent {
    pub index: u64,
    pub prime: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SieveConfig {
    /// Inclusive upper bound on the primes produced.
    pub limit: u64,
    /// Integers covered per segment.
    pub segment_size: u64,
    /// Memory budget in bytes for one segment and the base-prime table.
    pub memory_budget: u64,
}

impl SieveConfig {
    pub fn new(limit: u64) -> Self {
        Self {
            limit,
            segment_size: DEFAULT_SEGMENT_SIZE,
            memory_budget: DEFAULT_MEMORY_BUDGET,
        }
    }

    pub fn with_limit(self, limit: u64) -> Self {
        Self { limit, ..self }
    }

    pub fn with_segment_size(self, segment_size: u64) -> Self {
        Self {
            segment_size,
            ..self
        }
    }

    pub fn with_memory_budget(self, memory_budget: u64) -> Self {
        Self {
            memory_budget,
            ..self
        }
    }

    fn words_per_segment(&self) -> u64 {
        self.segment_size.div_ceil(NUMBERS_PER_WORD)
    }

    /// Bytes needed by one segment bitset plus the base primes and their
    /// running multiples.
    pub fn memory_required(&self) -> u64 {
        let base = base_prime_estimate(self.limit.isqrt());
        self.words_per_segment() * 8 + base * 12
    }

    pub fn validate(&self) -> Result<()> {
        if self.limit < 2 {
            return Err(Error::EmptyRange { limit: self.limit });
        }
        if self.limit > MAX_LIMIT {
            return Err(Error::Capacity {
                what: "sieve limit",
                requested: self.limit,
                capacity: MAX_LIMIT,
            });
        }
        if self.segment_size < 2 {
            return Err(Error::Config(format!(
                "segment size must be at least 2, got {}",
                self.segment_size
            )));
        }
        let need = self.memory_required();
        if need > self.memory_budget {
            return Err(Error::Config(format!(
                "segment of {} numbers needs {need} bytes, over the budget of {} bytes",
                self.segment_size, self.memory_budget
            )));
        }
        Ok(())
    }
}

impl Default for SieveConfig {
    fn default() -> Self {
        Self::new(DEFAULT_SEGMENT_SIZE)
    }
}

// Upper estimate of pi(x), good enough for sizing.
fn base_prime_estimate(x: u64) -> u64 {
    if x < 17 {
        return 7;
    }
    let xf = x as f64;
    (1.26 * xf / xf.ln()) as u64 + 1
}

/// Odd primes up to `bound`, by a plain sieve.
fn small_odd_primes(bound: u64) -> Vec<u32> {
    if bound < 3 {
        return Vec::new();
    }
    let size = ((bound - 1) / 2) as usize; // index i <-> 2i + 3
    let mut composite = vec![false; size];
    let mut out = Vec::new();
    for i in 0..size {
        if composite[i] {
            continue;
        }
        let p = 2 * i as u64 + 3;
        out.push(p as u32);
        let mut j = ((p * p - 3) / 2) as usize;
        while j < size {
            composite[j] = true;
            j += p as usize;
        }
    }
    out
}

/// Segment-at-a-time sieve; bit `i` of the current segment stands for the
/// odd number `low + 2i + 1`.
struct SegmentedSieve {
    limit: u64,
    span: u64,
    low: u64,
    words: Vec<u64>,
    base: Vec<u32>,
    next: Vec<u64>,
    started: bool,
}

impl SegmentedSieve {
    fn new(config: &SieveConfig) -> Result<Self> {
        config.validate()?;
        let words = config.words_per_segment().max(1);
        let base = small_odd_primes(config.limit.isqrt());
        let next = base.iter().map(|&p| u64::from(p) * u64::from(p)).collect();
        Ok(Self {
            limit: config.limit,
            span: words * NUMBERS_PER_WORD,
            low: 0,
            words: vec![0; words as usize],
            base,
            next,
            started: false,
        })
    }

    /// Sieves the next segment, returning its base or `None` past the limit.
    fn advance(&mut self) -> Option<u64> {
        if self.started {
            self.low += self.span;
        }
        self.started = true;
        if self.low > self.limit {
            return None;
        }
        let low = self.low;
        let high = low + self.span;
        self.words.fill(!0);
        let nbits = self.words.len() as u64 * 64;
        for (p, next) in self.base.iter().zip(self.next.iter_mut()) {
            let p = u64::from(*p);
            if *next >= high {
                if p * p >= high {
                    break;
                }
                continue;
            }
            let mut i = (*next - low) >> 1;
            while i < nbits {
                self.words[(i >> 6) as usize] &= !(1u64 << (i & 63));
                i += p;
            }
            *next = low + 2 * i + 1;
        }
        if low == 0 {
            // 1 is not prime
            self.words[0] &= !1;
        }
        // drop candidates above the limit
        if high > self.limit + 1 {
            let valid = (self.limit + 1 - low) / 2; // odd numbers <= limit in segment
            let full = (valid / 64) as usize;
            let rem = valid % 64;
            if full < self.words.len() {
                self.words[full] &= if rem == 0 { 0 } else { (1u64 << rem) - 1 };
                for w in &mut self.words[full + 1..] {
                    *w = 0;
                }
            }
        }
        Some(low)
    }

    fn odd_number(&self, bit: u64) -> u64 {
        self.low + 2 * bit + 1
    }
}

/// Ordered stream of primes `2, 3, 5, ...` up to the configured limit.
pub struct PrimeStream {
    config: SieveConfig,
    sieve: SegmentedSieve,
    word: usize,
    bits: u64,
    index: u64,
    emitted_two: bool,
    exhausted: bool,
}

impl PrimeStream {
    pub fn new(config: SieveConfig) -> Result<Self> {
        let sieve = SegmentedSieve::new(&config)?;
        Ok(Self {
            config,
            sieve,
            word: 0,
            bits: 0,
            index: 0,
            emitted_two: false,
            exhausted: false,
        })
    }

    pub fn config(&self) -> &SieveConfig {
        &self.config
    }

    pub fn limit(&self) -> u64 {
        self.config.limit
    }

    fn load_segment(&mut self) -> bool {
        match self.sieve.advance() {
            Some(_) => {
                self.word = 0;
                self.bits = self.sieve.words[0];
                true
            }
            None => false,
        }
    }
}

impl Iterator for PrimeStream {
    type Item = PrimeEvent;

    fn next(&mut self) -> Option<PrimeEvent> {
        if self.exhausted {
            return None;
        }
        if !self.emitted_two {
            self.emitted_two = true;
            if !self.load_segment() {
                self.exhausted = true;
            }
            self.index = 1;
            return Some(PrimeEvent { index: 1, prime: 2 });
        }
        loop {
            if self.bits != 0 {
                let tz = u64::from(self.bits.trailing_zeros());
                self.bits &= self.bits - 1;
                let prime = self.sieve.odd_number(self.word as u64 * 64 + tz);
                self.index += 1;
                return Some(PrimeEvent {
                    index: self.index,
                    prime,
                });
            }
            self.word += 1;
            if self.word < self.sieve.words.len() {
                self.bits = self.sieve.words[self.word];
            } else if !self.load_segment() {
                self.exhausted = true;
                return None;
            }
        }
    }
}

/// Streams every prime up to `config.limit`.
pub fn stream_primes(config: SieveConfig) -> Result<PrimeStream> {
    PrimeStream::new(config)
}

/// Collects the primes `<= limit`.
pub fn primes_up_to(limit: u64) -> Result<Vec<u64>> {
    if limit < 2 {
        return Ok(Vec::new());
    }
    Ok(PrimeStream::new(SieveConfig::new(limit))?
        .map(|e| e.prime)
        .collect())
}

/// The first `n` primes.
pub fn first_primes(n: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let limit = nth_prime_upper_bound(n)?;
    Ok(PrimeStream::new(SieveConfig::new(limit))?
        .take(n as usize)
        .map(|e| e.prime)
        .collect())
}

/// An upper bound for `p_n` (Rosser's `n (ln n + ln ln n)` for `n >= 6`).
pub fn nth_prime_upper_bound(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Domain("prime index must be at least 1".into()));
    }
    let bound = if n < 6 {
        13
    } else {
        let nf = n as f64;
        (nf * (nf.ln() + nf.ln().ln())).ceil() as u64 + 3
    };
    if bound > MAX_LIMIT {
        return Err(Error::Capacity {
            what: "prime index",
            requested: n,
            capacity: max_index(),
        });
    }
    Ok(bound)
}

// pi(2^40), rounded down to a safe index bound.
fn max_index() -> u64 {
    39_000_000_000
}

/// The `n`-th prime.
pub fn nth_prime(n: u64) -> Result<u64> {
    nth_prime_with(n, SieveConfig::new(nth_prime_upper_bound(n)?))
}

pub fn nth_prime_with(n: u64, config: SieveConfig) -> Result<u64> {
    if n == 0 {
        return Err(Error::Domain("prime index must be at least 1".into()));
    }
    if n == 1 {
        return Ok(2);
    }
    let mut sieve = SegmentedSieve::new(&config)?;
    let mut seen = 1u64; // the prime 2
    while sieve.advance().is_some() {
        let here: u64 = sieve.words.iter().map(|w| u64::from(w.count_ones())).sum();
        if seen + here < n {
            seen += here;
            continue;
        }
        for (wi, &w) in sieve.words.iter().enumerate() {
            let c = u64::from(w.count_ones());
            if seen + c < n {
                seen += c;
                continue;
            }
            let mut bits = w;
            loop {
                let tz = u64::from(bits.trailing_zeros());
                seen += 1;
                if seen == n {
                    return Ok(sieve.odd_number(wi as u64 * 64 + tz));
                }
                bits &= bits - 1;
            }
        }
    }
    Err(Error::Capacity {
        what: "prime index",
        requested: n,
        capacity: seen,
    })
}

/// `pi(x)`, the number of primes `<= x`.
pub fn prime_count(x: u64) -> Result<u64> {
    if x < 2 {
        return Ok(0);
    }
    prime_count_with(SieveConfig::new(x))
}

/// `pi(config.limit)`.
pub fn prime_count_with(config: SieveConfig) -> Result<u64> {
    if config.limit < 2 {
        return Ok(0);
    }
    let mut sieve = SegmentedSieve::new(&config)?;
    let mut count = 1u64;
    while sieve.advance().is_some() {
        count += sieve
            .words
            .iter()
            .map(|w| u64::from(w.count_ones()))
            .sum::<u64>();
    }
    Ok(count)
}
