//! Command-line front end.
//!
//! [`run`] does all the work and returns the text and exit status instead of
//! printing, so the binary is a thin wrapper and tests can drive it directly.

use crate::approx::{approx_error_scan_orders, approx_ratio_with, ApproxSpec};
use crate::bounds::{reference_bound_report, sharpness_scan, verify_theorem_range, CheckStatus};
use crate::error::Error;
use crate::mean_stream::{rows_at_targets_with, snapshot_at_or_below, Precision, Snapshot};
use crate::numerics::{CertifiedDecimal, DdInterval, Enclosure, Interval};
use crate::oeis::{a062049_range, emit_bfile, parse_bfile, SequenceId};
use crate::sieve::{SieveConfig, DEFAULT_MEMORY_BUDGET};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use std::fmt::Write as _;

/// Environment variable holding the sieve memory budget in bytes.
pub const MEMORY_BUDGET_ENV: &str = "GEOMEAN_MEMORY_BUDGET";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INDETERMINATE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_CAPACITY: i32 = 65;
pub const EXIT_FAILURE: i32 = 70;

/// Default table targets, `10^1 .. 10^9`.
pub const TABLE_TARGETS: [u64; 9] = [
    10,
    100,
    1_000,
    10_000,
    100_000,
    1_000_000,
    10_000_000,
    100_000_000,
    1_000_000_000,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
    Bfile,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PrecisionArg {
    Standard,
    Strict,
}

impl From<PrecisionArg> for Precision {
    fn from(p: PrecisionArg) -> Self {
        match p {
            PrecisionArg::Standard => Precision::Standard,
            PrecisionArg::Strict => Precision::Strict,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "geomean",
    version,
    about = "Certified geometric means of the first n primes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format (seq defaults to bfile, everything else to tsv).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[arg(long, global = true, value_enum, default_value = "standard")]
    pub precision: PrecisionArg,

    /// Decimal places for rendered values.
    #[arg(long, global = true, default_value_t = 6)]
    pub places: u32,

    /// Sieve segment size in numbers.
    #[arg(long, global = true)]
    pub segment_size: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rows of n, p_n, s_n, p_n/s_n and the order-2 approximation.
    Table {
        #[arg(long, default_value_t = 100_000_100)]
        limit: u64,
        /// Comma-separated targets; each row is at the smallest prime >= target.
        #[arg(long, value_delimiter = ',')]
        targets: Option<Vec<u64>>,
    },
    /// Check the two-sided bound at every prime in [from, to).
    Verify(RangeArgs),
    /// Look for failures of the bound at primes below a threshold.
    Sharpness {
        #[arg(long, default_value_t = 32059)]
        below: u64,
    },
    /// Emit an OEIS sequence.
    Seq {
        #[arg(long)]
        id: String,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
    /// Maximum relative error of an approximation over primes in (from, to].
    Approx {
        #[arg(long, default_value_t = 2)]
        order: usize,
        #[command(flatten)]
        range: RangeArgs,
    },
    /// Every reference inequality at the largest prime <= at.
    Bounds {
        #[arg(long)]
        at: u64,
    },
}

#[derive(Debug, Args)]
pub struct RangeArgs {
    #[arg(long)]
    pub from: u64,
    #[arg(long)]
    pub to: u64,
}

/// Exit status and captured output of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn with_status(status: i32, stdout: String) -> Self {
        Self {
            status,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(err: &Error) -> Self {
        let status = match err {
            Error::Capacity { .. } => EXIT_CAPACITY,
            Error::Config(_) | Error::EmptyRange { .. } => EXIT_USAGE,
            _ => EXIT_FAILURE,
        };
        Self {
            status,
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        }
    }
}

/// Parses arguments (including the program name) and runs them.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let status = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    status,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::with_status(status, text)
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok(outcome) => outcome,
        Err(e) => Outcome::error(&e),
    }
}

fn sieve_config(cli: &Cli, limit: u64) -> crate::Result<SieveConfig> {
    let mut config = SieveConfig::new(limit);
    if let Some(size) = cli.segment_size {
        config = config.with_segment_size(size);
    }
    let budget = match std::env::var(MEMORY_BUDGET_ENV) {
        Ok(v) => v.trim().parse::<u64>().map_err(|_| {
            Error::Config(format!(
                "{MEMORY_BUDGET_ENV} must be a byte count, got {v:?}"
            ))
        })?,
        Err(_) => DEFAULT_MEMORY_BUDGET,
    };
    Ok(config.with_memory_budget(budget))
}

fn dispatch(cli: &Cli) -> crate::Result<Outcome> {
    let format = cli.format;
    match &cli.command {
        Command::Table { limit, targets } => table(cli, *limit, targets.as_deref()),
        Command::Verify(range) => verify(cli, range),
        Command::Sharpness { below } => sharpness(cli, *below),
        Command::Seq { id, from, to } => {
            let id: SequenceId = id.parse()?;
            seq(id, *from, *to, format.unwrap_or(Format::Bfile))
        }
        Command::Approx { order, range } => approx(cli, *order, range),
        Command::Bounds { at } => bounds(cli, *at),
    }
}

fn reject_bfile(cli: &Cli, command: &str) -> crate::Result<Format> {
    match cli.format.unwrap_or(Format::Tsv) {
        Format::Bfile => Err(Error::Config(format!("{command} has no bfile output"))),
        f => Ok(f),
    }
}

#[derive(Clone, Debug, Serialize)]
struct TableRow {
    n: u64,
    p_n: u64,
    s_n: CertifiedDecimal,
    ratio: CertifiedDecimal,
    approx: CertifiedDecimal,
    precision: &'static str,
}

impl TableRow {
    fn certified(&self) -> bool {
        self.s_n.is_certified() && self.ratio.is_certified() && self.approx.is_certified()
    }
}

fn render_row<R: Enclosure>(snap: &Snapshot<R>, places: u32) -> crate::Result<TableRow> {
    let approx = approx_ratio_with::<R>(snap.p_n, ApproxSpec::new(2)?)?;
    Ok(TableRow {
        n: snap.n,
        p_n: snap.p_n,
        s_n: snap.s.certified_round(places),
        ratio: snap.ratio.certified_round(places),
        approx: approx.certified_round(places),
        precision: R::PRECISION,
    })
}

fn table(cli: &Cli, limit: u64, targets: Option<&[u64]>) -> crate::Result<Outcome> {
    let format = reject_bfile(cli, "table")?;
    let config = sieve_config(cli, limit)?;
    config.validate()?;
    let targets: Vec<u64> = match targets {
        Some(t) => t.to_vec(),
        None => TABLE_TARGETS
            .iter()
            .copied()
            .filter(|&t| t <= limit)
            .collect(),
    };
    let places = cli.places;
    let mut rows: Vec<TableRow> = match Precision::from(cli.precision) {
        Precision::Strict => rows_at_targets_with::<DdInterval>(config, &targets)?
            .iter()
            .map(|s| render_row(s, places))
            .collect::<crate::Result<_>>()?,
        Precision::Standard => rows_at_targets_with::<Interval>(config, &targets)?
            .iter()
            .map(|s| render_row(s, places))
            .collect::<crate::Result<_>>()?,
    };

    // escalate rows binary64 could not certify
    let open: Vec<usize> = (0..rows.len())
        .filter(|&i| !rows[i].certified() && rows[i].precision != DdInterval::PRECISION)
        .collect();
    if let Some(&last) = open.last() {
        let retry: Vec<u64> = open.iter().map(|&i| rows[i].p_n).collect();
        let strict = rows_at_targets_with::<DdInterval>(config.with_limit(rows[last].p_n), &retry)?;
        for (&i, snap) in open.iter().zip(&strict) {
            rows[i] = render_row(snap, places)?;
        }
    }

    let status = if rows.iter().all(TableRow::certified) {
        EXIT_OK
    } else {
        EXIT_INDETERMINATE
    };
    let text = match format {
        Format::Json => json_text(&json!({ "rows": rows })),
        _ => {
            let mut out = String::from("n\tp_n\ts_n\tratio\tapprox\n");
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}",
                    r.n, r.p_n, r.s_n, r.ratio, r.approx
                );
            }
            out
        }
    };
    Ok(Outcome::with_status(status, text))
}

fn json_text<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn fmt_opt(iv: Option<Interval>) -> String {
    iv.map_or_else(|| "-".to_string(), |i| i.to_string())
}

fn verify(cli: &Cli, range: &RangeArgs) -> crate::Result<Outcome> {
    let format = reject_bfile(cli, "verify")?;
    let config = sieve_config(cli, range.to.max(2))?;
    let report = verify_theorem_range(range.from, range.to, config)?;
    let status = if !report.violations.is_empty() {
        EXIT_VIOLATION
    } else if !report.indeterminate.is_empty() {
        EXIT_INDETERMINATE
    } else {
        EXIT_OK
    };
    let text = match format {
        Format::Json => json_text(&report),
        _ => {
            let mut out = String::new();
            let _ = writeln!(out, "range\t[{}, {})", report.range.0, report.range.1);
            let _ = writeln!(out, "primes_checked\t{}", report.primes_checked);
            let _ = writeln!(out, "holds\t{}", report.holds);
            let _ = writeln!(out, "violations\t{}", report.violations.len());
            let _ = writeln!(out, "indeterminate\t{}", report.indeterminate.len());
            let _ = writeln!(out, "escalated\t{}", report.escalated);
            let _ = writeln!(
                out,
                "min_lower_margin\t{}",
                fmt_opt(report.min_lower_margin)
            );
            let _ = writeln!(
                out,
                "min_upper_margin\t{}",
                fmt_opt(report.min_upper_margin)
            );
            for v in &report.violations {
                let _ = writeln!(
                    out,
                    "violation\t{}\t{}\t{:?}\t{}",
                    v.p, v.n, v.side, v.margin
                );
            }
            for p in &report.indeterminate {
                let _ = writeln!(out, "indeterminate\t{p}");
            }
            out
        }
    };
    Ok(Outcome::with_status(status, text))
}

fn sharpness(cli: &Cli, below: u64) -> crate::Result<Outcome> {
    let format = reject_bfile(cli, "sharpness")?;
    let config = sieve_config(cli, below.max(2))?;
    let scan = sharpness_scan(below, config)?;
    let status = if scan.largest_violation.is_some() && !scan.confirmed() {
        EXIT_INDETERMINATE
    } else {
        EXIT_OK
    };
    let text = match format {
        Format::Json => json_text(&json!({ "scan": scan, "confirmed": scan.confirmed() })),
        _ => {
            let mut out = String::new();
            let _ = writeln!(out, "below\t{}", scan.below);
            let _ = writeln!(out, "primes_checked\t{}", scan.report.primes_checked);
            let _ = writeln!(out, "violating_primes\t{}", scan.report.violations.len());
            match &scan.largest_violation {
                Some(v) => {
                    let _ = writeln!(out, "largest_violation\t{}", v.p);
                    let _ = writeln!(out, "largest_violation_index\t{}", v.n);
                    let _ = writeln!(out, "largest_violation_side\t{:?}", v.side);
                    let _ = writeln!(out, "strict_margin\t{}", v.margin);
                    let _ = writeln!(out, "exact_margin\t{}", fmt_opt(scan.exact_margin));
                    let _ = writeln!(out, "confirmed\t{}", scan.confirmed());
                }
                None => {
                    let _ = writeln!(out, "largest_violation\t-");
                }
            }
            out.push_str("p\tn\tside\tmargin\n");
            for v in &scan.report.violations {
                let _ = writeln!(out, "{}\t{}\t{:?}\t{}", v.p, v.n, v.side, v.margin);
            }
            out
        }
    };
    Ok(Outcome::with_status(status, text))
}

fn seq(id: SequenceId, from: u64, to: u64, format: Format) -> crate::Result<Outcome> {
    let mut stderr = String::new();
    let bfile = if id == SequenceId::A062049 && from >= 1 && from <= to {
        let (values, stats) = a062049_range(from, to)?;
        // certification statistics go to stderr so the b-file stays clean
        stderr = format!(
            "certified: {} standard, {} strict, {} exact\n",
            stats.standard, stats.strict, stats.exact
        );
        (from..=to)
            .zip(values)
            .map(|(n, v)| format!("{n} {v}\n"))
            .collect()
    } else {
        emit_bfile(id, from, to)?
    };
    let text = match format {
        Format::Bfile => bfile,
        Format::Tsv => bfile.replace(' ', "\t"),
        Format::Json => {
            let terms: Vec<(u64, String)> = parse_bfile(&bfile)?
                .into_iter()
                .map(|(n, v)| (n, v.to_string()))
                .collect();
            json_text(&json!({ "id": id.to_string(), "terms": terms }))
        }
    };
    Ok(Outcome {
        status: EXIT_OK,
        stdout: text,
        stderr,
    })
}

fn approx(cli: &Cli, order: usize, range: &RangeArgs) -> crate::Result<Outcome> {
    let format = reject_bfile(cli, "approx")?;
    if range.from > range.to {
        return Err(Error::Config(format!(
            "empty range: from {} exceeds to {}",
            range.from, range.to
        )));
    }
    let spec = ApproxSpec::new(order)?;
    let config = sieve_config(cli, range.to.max(2))?;
    let report = approx_error_scan_orders(config, &[spec], range.from)?.remove(0);
    let text = match format {
        Format::Json => json_text(&report),
        _ => {
            let mut out = String::new();
            let _ = writeln!(out, "order\t{}", report.order);
            let _ = writeln!(out, "range\t({}, {}]", report.floor_p, report.limit);
            let _ = writeln!(out, "primes_checked\t{}", report.primes_checked);
            let _ = writeln!(out, "max_rel_error\t{}", fmt_opt(report.max_rel_error));
            let argmax = report.argmax.map_or_else(|| "-".into(), |p| p.to_string());
            let _ = writeln!(out, "argmax\t{argmax}");
            let _ = writeln!(out, "below_1_percent\t{}", report.certified_below(0.01));
            out
        }
    };
    Ok(Outcome::with_status(EXIT_OK, text))
}

fn bounds(cli: &Cli, at: u64) -> crate::Result<Outcome> {
    let format = reject_bfile(cli, "bounds")?;
    let config = sieve_config(cli, at.max(2))?;
    let report = match Precision::from(cli.precision) {
        Precision::Standard => {
            reference_bound_report(&snapshot_at_or_below::<Interval>(config, at)?)
        }
        Precision::Strict => {
            reference_bound_report(&snapshot_at_or_below::<DdInterval>(config, at)?)
        }
    };
    let text = match format {
        Format::Json => json_text(&report),
        _ => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "x\t{}\nn\t{}\nprecision\t{}",
                report.x, report.n, report.precision
            );
            out.push_str("check\tapplicable\tstatus\tmargin\n");
            for c in &report.checks {
                let status = serde_json::to_value(c.status).expect("serializable");
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}\t{}",
                    c.name,
                    c.applicable,
                    status.as_str().unwrap_or("?"),
                    c.margin
                );
            }
            out
        }
    };
    let failed = report.checks.iter().any(|c| c.status == CheckStatus::Fails);
    let undecided = report
        .checks
        .iter()
        .any(|c| c.status == CheckStatus::Indeterminate);
    let status = if failed {
        EXIT_VIOLATION
    } else if undecided {
        EXIT_INDETERMINATE
    } else {
        EXIT_OK
    };
    Ok(Outcome::with_status(status, text))
}
