//! Parallel driver for the enumeration oracles.
//!
//! The candidate space is split into contiguous rank ranges, one per
//! worker; each worker runs the single-threaded scan for its range and the
//! partial results are merged in range order. The merged report is
//! identical for any worker count, including one. Set `PIMETRIC_WORKERS`
//! to cap the worker count.

use std::ops::Range;
use std::thread;
use std::time::Instant;

use pimetric::oracle::{self, EnumerationKind, EnumerationReport, ScanChunk};
use pimetric::{PiSpace, Result};

/// Environment variable capping the number of enumeration workers.
pub const WORKERS_ENV: &str = "PIMETRIC_WORKERS";

/// Worker count from the environment, else the machine's parallelism.
pub fn default_workers() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&w| w >= 1)
        .unwrap_or_else(|| thread::available_parallelism().map_or(1, |p| p.get()))
}

fn split_ranges(total: u64, workers: usize) -> Vec<Range<u64>> {
    let workers = (workers.max(1) as u64).min(total.max(1));
    let base = total / workers;
    let extra = total % workers;
    let mut ranges = Vec::with_capacity(workers as usize);
    let mut start = 0;
    for i in 0..workers {
        let len = base + u64::from(i < extra);
        ranges.push(start..start + len);
        start += len;
    }
    ranges
}

/// Run one oracle enumeration with the given worker count, filling in the
/// wall time.
pub fn enumerate_parallel(
    space: &PiSpace,
    kind: EnumerationKind,
    keep_maps: bool,
    workers: usize,
) -> Result<EnumerationReport> {
    let started = Instant::now();
    let candidates = match kind {
        EnumerationKind::Symmetries => oracle::symmetry_candidates(space)?,
        EnumerationKind::Automorphisms => oracle::automorphism_candidates(space)?,
        EnumerationKind::BlockTuples => oracle::block_tuple_candidates(space)?,
    };
    let ranges = split_ranges(candidates, workers);
    let chunks: Result<Vec<ScanChunk>> = thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|range| {
                scope.spawn(move || match kind {
                    EnumerationKind::Symmetries => oracle::scan_symmetries(space, range, keep_maps),
                    EnumerationKind::Automorphisms => {
                        oracle::scan_automorphisms(space, range, keep_maps)
                    }
                    EnumerationKind::BlockTuples => {
                        oracle::scan_block_tuples(space, range, keep_maps)
                    }
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("scan worker panicked"))
            .collect()
    });
    let mut report = oracle::merge_chunks(space, kind, candidates, chunks?);
    report.elapsed = Some(started.elapsed());
    Ok(report)
}
