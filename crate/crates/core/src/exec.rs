//! Execution strategy for the data-parallel loops.
//!
//! Every hot loop in the crate (per-source reachability searches, exhaustive
//! enumerations, permutation sweeps) goes through the helpers here. With the
//! `parallel` feature they run on the rayon pool; without it, or when
//! [`Execution::Sequential`] is requested, they run on the calling thread.
//! Results are identical either way.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential when the `parallel` feature is off.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// `f(i)` for every `i in 0..len`, in index order.
pub(crate) fn map_indices<R, F>(exec: Execution, len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..len).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..len).map(f).collect()
}

/// Splits `0..total` into contiguous chunks and applies `f` to each, returning
/// per-chunk results in range order.
pub(crate) fn map_chunks<R, F>(exec: Execution, total: u64, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(Range<u64>) -> R + Sync + Send,
{
    let chunks = if exec.is_parallel() {
        chunk_count(total)
    } else {
        1
    };
    let size = total.div_ceil(chunks.max(1));
    let ranges: Vec<Range<u64>> = (0..chunks)
        .map(|c| (c * size).min(total)..((c + 1) * size).min(total))
        .filter(|r| !r.is_empty() || total == 0)
        .collect();
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return ranges.into_par_iter().map(f).collect();
    }
    ranges.into_iter().map(f).collect()
}

/// Parallel `find_map` that returns the match with the lowest index.
pub(crate) fn find_first<T, R, F>(exec: Execution, items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().find_map_first(f);
    }
    let _ = exec;
    items.iter().find_map(f)
}

#[cfg(feature = "parallel")]
fn chunk_count(total: u64) -> u64 {
    let threads = rayon::current_num_threads() as u64;
    total.min(threads * 8).max(1)
}

#[cfg(not(feature = "parallel"))]
fn chunk_count(_total: u64) -> u64 {
    1
}
