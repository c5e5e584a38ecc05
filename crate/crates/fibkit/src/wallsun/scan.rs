//! Range scanner: sieve primes segment by segment, run the Wall-Sun-Sun
//! check on each, and merge per-segment results in ascending order so the
//! output is a pure function of the requested range and threshold — the
//! worker count and any interrupt/resume cycles cannot change a byte of it.

use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modarith::LegendreSymbol;
use crate::sieve;
use crate::wallsun::checkpoint::{ScanCheckpoint, CHECKPOINT_SCHEMA_VERSION};
use crate::wallsun::{self, NearMiss, SCAN_PRIME_CAP};

/// Candidates per segment: small enough that a segment completes in well
/// under a second, so an interrupt loses almost no work.
pub const DEFAULT_SEGMENT_SIZE: u64 = 1 << 20;

/// Default near-miss threshold on min(α, p − α).
pub const DEFAULT_NEAR_MISS_THRESHOLD: u64 = 100;

/// Everything a scan needs to know. Construct with [`ScanOptions::new`] and
/// override fields as needed.
#[derive(Debug, Clone)]
pub struct ScanOptions {
    /// Inclusive lower bound, at least 2.
    pub range_lo: u64,
    /// Inclusive upper bound, below 2^31.
    pub range_hi: u64,
    /// Primes with min(α, p − α) at or below this are recorded.
    pub near_miss_threshold: u64,
    /// Worker count; 0 means one per available core.
    pub jobs: usize,
    /// Segment width in candidates.
    pub segment_size: u64,
    /// Where to persist checkpoints; None disables persistence.
    pub checkpoint_path: Option<PathBuf>,
    /// Continue from the checkpoint at `checkpoint_path` instead of starting
    /// over. Requires the checkpoint to match the requested range, threshold,
    /// and segment alignment.
    pub resume: bool,
    /// Stop after merging this many segments (this run) — the hook the
    /// interrupt/resume tests use to cut a scan at a segment boundary.
    pub stop_after_segments: Option<u64>,
}

impl ScanOptions {
    #[must_use]
    pub fn new(range_lo: u64, range_hi: u64) -> Self {
        ScanOptions {
            range_lo,
            range_hi,
            near_miss_threshold: DEFAULT_NEAR_MISS_THRESHOLD,
            jobs: 0,
            segment_size: DEFAULT_SEGMENT_SIZE,
            checkpoint_path: None,
            resume: false,
            stop_after_segments: None,
        }
    }
}

/// Outcome of a scan (or a deliberately cut-short prefix of one).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub range_lo: u64,
    pub range_hi: u64,
    pub primes_checked: u64,
    pub near_misses: Vec<NearMiss>,
    pub wss_found: Vec<u64>,
    /// Largest candidate whose segment has been fully processed.
    pub completed_through: u64,
    pub complete: bool,
}

struct SegmentOutcome {
    seg_hi: u64,
    primes: u64,
    near: Vec<NearMiss>,
    wss: Vec<u64>,
}

fn unix_now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Sieve one segment and run the squared-modulus check on every prime in it.
fn scan_segment(lo: u64, hi: u64, base: &[u64], threshold: u64) -> Result<SegmentOutcome> {
    let primes = sieve::segment_primes(lo, hi + 1, base);
    let mut near = Vec::new();
    let mut wss = Vec::new();
    for &p in &primes {
        let report = wallsun::wss_check_unchecked(p)?;
        let distance = report.near_miss_distance();
        if distance <= threshold {
            near.push(NearMiss { p, alpha: report.alpha.value, distance });
        }
        if report.is_wss {
            wss.push(p);
        }
    }
    Ok(SegmentOutcome { seg_hi: hi, primes: primes.len() as u64, near, wss })
}

/// Counts primes in [lo, hi] by sieving, for rebuilding the checked-prime
/// tally of an already-completed prefix on resume.
fn count_primes(lo: u64, hi: u64, base: &[u64], segment_size: u64) -> u64 {
    let mut count = 0u64;
    let mut cursor = lo;
    while cursor <= hi {
        let seg_hi = hi.min(cursor + segment_size - 1);
        count += sieve::segment_primes(cursor, seg_hi + 1, base).len() as u64;
        cursor = seg_hi + 1;
    }
    count
}

/// Runs the scan described by `opts`.
///
/// Segments are processed in waves of up to one per worker; merging and
/// checkpointing always happen in ascending segment order. When a
/// checkpoint path is set, the file is rewritten atomically after every
/// merged segment; without `resume`, any existing file there is replaced.
pub fn scan(opts: &ScanOptions) -> Result<ScanSummary> {
    if opts.range_lo < 2 {
        return Err(Error::domain("scan range must start at 2 or above"));
    }
    if opts.range_lo > opts.range_hi {
        return Err(Error::domain(format!(
            "scan range [{}, {}] is empty",
            opts.range_lo, opts.range_hi
        )));
    }
    if opts.range_hi >= SCAN_PRIME_CAP {
        return Err(Error::capacity("scan upper bound", opts.range_hi as u128, SCAN_PRIME_CAP as u128));
    }
    if opts.segment_size == 0 {
        return Err(Error::domain("segment size must be positive"));
    }

    let base = sieve::primes_below(opts.range_hi.isqrt() + 1);

    let mut primes_checked = 0u64;
    let mut near_misses: Vec<NearMiss> = Vec::new();
    let mut wss_found: Vec<u64> = Vec::new();
    let mut completed_through = opts.range_lo - 1;
    let mut started_at = unix_now();

    if opts.resume {
        let path = opts.checkpoint_path.as_deref().ok_or_else(|| {
            Error::domain("resume requested but no checkpoint path was given")
        })?;
        let cp = ScanCheckpoint::load(path)?;
        if (cp.range_lo, cp.range_hi) != (opts.range_lo, opts.range_hi) {
            return Err(Error::checkpoint(format!(
                "checkpoint covers [{}, {}] but the requested range is [{}, {}]",
                cp.range_lo, cp.range_hi, opts.range_lo, opts.range_hi
            )));
        }
        if let Some(bad) = cp.near_misses.iter().find(|nm| nm.distance > opts.near_miss_threshold) {
            return Err(Error::checkpoint(format!(
                "checkpoint holds a near miss at p = {} with distance {}, beyond the requested \
                 threshold {} — resume with the threshold the scan started with",
                bad.p, bad.distance, opts.near_miss_threshold
            )));
        }
        let scanned = cp.last_completed - cp.range_lo + 1;
        if cp.last_completed != cp.range_hi && scanned % opts.segment_size != 0 {
            return Err(Error::checkpoint(format!(
                "checkpoint stopped at {}, which is not a multiple of {} candidates into the \
                 range — resume with the segment size the scan started with",
                cp.last_completed, opts.segment_size
            )));
        }
        primes_checked = count_primes(cp.range_lo, cp.last_completed, &base, opts.segment_size);
        near_misses = cp.near_misses;
        wss_found = cp.wss_found;
        completed_through = cp.last_completed;
        started_at = cp.started_at;
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::internal(format!("worker pool construction failed: {e}")))?;
    let wave_width = pool.current_num_threads().max(1);

    let mut next = completed_through + 1;
    let mut merged_segments = 0u64;
    'waves: while next <= opts.range_hi {
        let budget = opts
            .stop_after_segments
            .map(|k| k.saturating_sub(merged_segments))
            .unwrap_or(u64::MAX);
        if budget == 0 {
            break;
        }
        let mut wave: Vec<(u64, u64)> = Vec::new();
        let mut cursor = next;
        while cursor <= opts.range_hi && (wave.len() as u64) < (wave_width as u64).min(budget) {
            let seg_hi = opts.range_hi.min(cursor + opts.segment_size - 1);
            wave.push((cursor, seg_hi));
            cursor = seg_hi + 1;
        }
        let outcomes: Result<Vec<SegmentOutcome>> = pool.install(|| {
            wave.par_iter()
                .map(|&(a, b)| scan_segment(a, b, &base, opts.near_miss_threshold))
                .collect()
        });
        for out in outcomes? {
            primes_checked += out.primes;
            near_misses.extend(out.near);
            wss_found.extend(out.wss);
            completed_through = out.seg_hi;
            merged_segments += 1;
            if let Some(path) = &opts.checkpoint_path {
                ScanCheckpoint {
                    schema_version: CHECKPOINT_SCHEMA_VERSION,
                    range_lo: opts.range_lo,
                    range_hi: opts.range_hi,
                    last_completed: completed_through,
                    near_misses: near_misses.clone(),
                    wss_found: wss_found.clone(),
                    started_at,
                    updated_at: unix_now(),
                }
                .save(path)?;
            }
            if opts.stop_after_segments.is_some_and(|k| merged_segments >= k) {
                break 'waves;
            }
        }
        next = cursor;
    }

    Ok(ScanSummary {
        range_lo: opts.range_lo,
        range_hi: opts.range_hi,
        primes_checked,
        near_misses,
        wss_found,
        completed_through,
        complete: completed_through == opts.range_hi,
    })
}

/// The findings as comma-separated rows `p,legendre,index,alpha,
/// near_miss_distance,is_wss`, ascending by p. Byte-identical for equal
/// summaries, whatever schedule produced them.
#[must_use]
pub fn render_report(summary: &ScanSummary) -> String {
    use std::fmt::Write;

    let mut out = String::new();
    for nm in &summary.near_misses {
        let legendre = match nm.p % 5 {
            0 => LegendreSymbol::Zero,
            1 | 4 => LegendreSymbol::PlusOne,
            _ => LegendreSymbol::MinusOne,
        };
        let index = match legendre {
            LegendreSymbol::PlusOne => nm.p - 1,
            LegendreSymbol::MinusOne => nm.p + 1,
            LegendreSymbol::Zero => nm.p,
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            nm.p,
            legendre.value(),
            index,
            nm.alpha,
            nm.distance,
            nm.alpha == 0
        );
    }
    out
}

/// One human-readable line of totals.
#[must_use]
pub fn summary_line(summary: &ScanSummary) -> String {
    let state = if summary.complete {
        "complete".to_string()
    } else {
        format!("stopped after {}", summary.completed_through)
    };
    format!(
        "scanned [{}, {}]: {} primes checked, {} near misses, {} wall-sun-sun primes; {}",
        summary.range_lo,
        summary.range_hi,
        summary.primes_checked,
        summary.near_misses.len(),
        summary.wss_found.len(),
        state
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(lo: u64, hi: u64, threshold: u64) -> ScanOptions {
        let mut o = ScanOptions::new(lo, hi);
        o.near_miss_threshold = threshold;
        o.jobs = 1;
        o
    }

    #[test]
    fn small_range_counts_and_misses() {
        let summary = scan(&opts(2, 100, 1)).unwrap();
        assert_eq!(summary.primes_checked, 25);
        assert!(summary.wss_found.is_empty());
        assert!(summary.complete);
        assert_eq!(summary.completed_through, 100);
        let ps: Vec<u64> = summary.near_misses.iter().map(|nm| nm.p).collect();
        assert_eq!(ps, vec![2, 3, 5, 17]);
    }

    #[test]
    fn report_rows_are_exact() {
        let summary = scan(&opts(2, 20, 1)).unwrap();
        assert_eq!(render_report(&summary), "2,-1,3,1,1,false\n3,-1,4,1,1,false\n5,0,5,1,1,false\n17,-1,18,16,1,false\n");
        assert_eq!(
            summary_line(&summary),
            "scanned [2, 20]: 8 primes checked, 4 near misses, 0 wall-sun-sun primes; complete"
        );
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let mut baseline = opts(2, 1 << 18, 5);
        baseline.segment_size = 1 << 14; // many segments, to exercise merging
        let reference = scan(&baseline).unwrap();
        for jobs in [2usize, 8] {
            let mut o = baseline.clone();
            o.jobs = jobs;
            let other = scan(&o).unwrap();
            assert_eq!(other, reference, "jobs = {jobs}");
            assert_eq!(render_report(&other), render_report(&reference));
        }
    }

    #[test]
    fn interrupt_and_resume_reproduce_the_full_run() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.toml");

        let mut uninterrupted = opts(2, 200_000, 30);
        uninterrupted.segment_size = 1 << 15;
        let reference = scan(&uninterrupted).unwrap();

        let mut first_leg = uninterrupted.clone();
        first_leg.checkpoint_path = Some(path.clone());
        first_leg.stop_after_segments = Some(3);
        let partial = scan(&first_leg).unwrap();
        assert!(!partial.complete);
        assert_eq!(partial.completed_through, 2 + 3 * (1 << 15) - 1);

        let cp = ScanCheckpoint::load(&path).unwrap();
        assert_eq!(cp.last_completed, partial.completed_through);
        assert_eq!((cp.range_lo, cp.range_hi), (2, 200_000));

        let mut second_leg = uninterrupted.clone();
        second_leg.checkpoint_path = Some(path.clone());
        second_leg.resume = true;
        let resumed = scan(&second_leg).unwrap();
        assert_eq!(resumed, reference);
        assert_eq!(render_report(&resumed), render_report(&reference));

        // Resuming a finished scan is a no-op that reports completion.
        let again = scan(&second_leg).unwrap();
        assert_eq!(again, reference);
    }

    #[test]
    fn resume_rejects_mismatched_requests() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.toml");
        let mut o = opts(2, 100_000, 100);
        o.segment_size = 1 << 15;
        o.checkpoint_path = Some(path.clone());
        o.stop_after_segments = Some(1);
        scan(&o).unwrap();

        let mut wrong_range = o.clone();
        wrong_range.resume = true;
        wrong_range.stop_after_segments = None;
        wrong_range.range_hi = 200_000;
        assert!(matches!(scan(&wrong_range), Err(Error::Checkpoint(_))));

        let mut wrong_threshold = o.clone();
        wrong_threshold.resume = true;
        wrong_threshold.stop_after_segments = None;
        wrong_threshold.near_miss_threshold = 1;
        assert!(matches!(scan(&wrong_threshold), Err(Error::Checkpoint(_))));

        let mut wrong_segment = o.clone();
        wrong_segment.resume = true;
        wrong_segment.stop_after_segments = None;
        wrong_segment.segment_size = (1 << 14) + 3;
        assert!(matches!(scan(&wrong_segment), Err(Error::Checkpoint(_))));

        let mut no_path = o.clone();
        no_path.resume = true;
        no_path.checkpoint_path = None;
        assert!(matches!(scan(&no_path), Err(Error::Domain(_))));
    }

    #[test]
    fn rejects_bad_ranges() {
        assert!(matches!(scan(&opts(1, 10, 1)), Err(Error::Domain(_))));
        assert!(matches!(scan(&opts(10, 9, 1)), Err(Error::Domain(_))));
        assert!(matches!(scan(&opts(2, 1 << 31, 1)), Err(Error::Capacity { .. })));
    }
}
