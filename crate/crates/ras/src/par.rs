//! Thread fan-out for sweeps and searches. Results are merged in a fixed
//! order, so output does not depend on the number of jobs.

use std::thread;

use ras_core::enumerate::{sweep_composition, CompositionSweep, SearchOutcome, SearchSpace, SearchSpec, Shard, SweepReport};
use ras_core::Result;

/// Runs `f` once per shard on `jobs` threads and returns results by shard index.
pub fn sharded<T, F>(jobs: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Shard) -> T + Sync,
{
    let count = jobs.max(1);
    if count == 1 {
        return vec![f(Shard::ALL)];
    }
    thread::scope(|s| {
        let handles: Vec<_> = (0..count)
            .map(|index| {
                let f = &f;
                s.spawn(move || f(Shard { index, count }))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    })
}

pub fn sweep<F>(jobs: usize, f: F) -> Result<SweepReport>
where
    F: Fn(Shard) -> Result<SweepReport> + Sync,
{
    let mut parts = sharded(jobs, f).into_iter();
    let mut acc = parts.next().expect("at least one shard")?;
    for p in parts {
        acc.merge(p?);
    }
    Ok(acc)
}

pub fn composition(jobs: usize, n: usize) -> Result<CompositionSweep> {
    let mut acc = CompositionSweep::default();
    for p in sharded(jobs, |s| sweep_composition(n, s)) {
        acc.merge(p?);
    }
    Ok(acc)
}

const CHUNK: u64 = 1 << 18;

/// Scans consecutive chunks in rounds of `jobs`, stopping after the first
/// round that reaches the match limit.
pub fn search(jobs: usize, spec: &SearchSpec) -> Result<SearchOutcome> {
    let space = SearchSpace::new(spec)?;
    let end = space.scan_len();
    let jobs = jobs.max(1) as u64;
    let mut matches = Vec::new();
    let mut start = 0;
    while start < end && matches.len() < spec.limit {
        let want = spec.limit - matches.len();
        let round: Vec<_> = if jobs == 1 {
            let stop = end.min(start + CHUNK);
            vec![space.scan(start..stop, want)]
        } else {
            thread::scope(|s| {
                let handles: Vec<_> = (0..jobs)
                    .map(|k| {
                        let lo = (start + k * CHUNK).min(end);
                        let hi = (lo + CHUNK).min(end);
                        let space = &space;
                        s.spawn(move || space.scan(lo..hi, want))
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
            })
        };
        for part in round {
            matches.extend(part);
        }
        start = end.min(start + jobs * CHUNK);
    }
    Ok(space.finish(matches))
}
