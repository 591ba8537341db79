//! Deterministic partitioned scans.

use std::ops::Range;
use std::thread;

/// Splits `0..len` into at most `workers` contiguous ranges, runs `scan` on
/// each (on its own thread when `workers > 1`) and returns the partial
/// results in range order. Callers fold the partials left to right, so the
/// outcome does not depend on the worker count as long as the fold is
/// associative.
pub fn scan_ranges<A, F>(len: u64, workers: usize, scan: F) -> Vec<A>
where
    A: Send,
    F: Fn(Range<u64>) -> A + Sync,
{
    let ranges = split(len, workers.max(1));
    if ranges.len() <= 1 {
        return ranges.into_iter().map(&scan).collect();
    }
    thread::scope(|s| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|r| {
                let scan = &scan;
                s.spawn(move || scan(r))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("scan worker panicked"))
            .collect()
    })
}

fn split(len: u64, parts: usize) -> Vec<Range<u64>> {
    let parts = (parts as u64).min(len.max(1));
    let base = len / parts;
    let extra = len % parts;
    let mut start = 0;
    (0..parts)
        .map(|i| {
            let size = base + u64::from(i < extra);
            let r = start..start + size;
            start += size;
            r
        })
        .collect()
}
