//! Deterministic data-parallel building blocks.
//!
//! Floating-point summation is not associative, so a naive parallel reduce
//! would make results depend on thread scheduling. Every reduction here
//! splits the index range into fixed-size chunks, sums each chunk
//! sequentially in index order, and folds the per-chunk partials in index
//! order. The parallel and sequential paths therefore return bit-identical
//! values; only the wall-clock time differs.
//!
//! Small workloads stay on the current thread: forking the pool costs more
//! than a few hundred pmf or Bayes factor evaluations.

use crate::error::Result;

#[cfg(feature = "parallel")]
use crate::runtime;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

const CHUNK: u64 = 1024;

/// Work items per task below which parallel dispatch is not worthwhile.
pub(crate) const PAR_THRESHOLD: u64 = 512;

/// Sum `f(y)` over the inclusive range `lo..=hi`.
pub(crate) fn sum_range<F>(lo: u64, hi: u64, f: F) -> Result<f64>
where
    F: Fn(u64) -> Result<f64> + Sync + Send,
{
    if hi < lo {
        return Ok(0.0);
    }
    let chunks = (hi - lo) / CHUNK + 1;
    let chunk_sum = |c: u64| -> Result<f64> {
        let start = lo + c * CHUNK;
        let end = hi.min(start + CHUNK - 1);
        let mut acc = 0.0;
        for y in start..=end {
            acc += f(y)?;
        }
        Ok(acc)
    };
    let partials = run_indexed_if(chunks > 1, chunks, chunk_sum)?;
    Ok(partials.into_iter().sum())
}

/// Evaluate `f` at every index in `0..count`, preserving index order;
/// parallel only when `parallel_worthwhile` says the items are heavy enough.
pub(crate) fn run_indexed_if<T, F>(parallel_worthwhile: bool, count: u64, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel_worthwhile && runtime::parallel_enabled() {
        return (0..count).into_par_iter().map(f).collect();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = parallel_worthwhile;
    (0..count).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_sums_are_bit_identical() {
        let f = |y: u64| Ok((y as f64).sqrt().sin() / (y as f64 + 1.0));
        crate::runtime::set_parallel(true);
        let par = sum_range(0, 50_000, f).unwrap();
        crate::runtime::set_parallel(false);
        let seq = sum_range(0, 50_000, f).unwrap();
        crate::runtime::set_parallel(true);
        assert_eq!(par.to_bits(), seq.to_bits());
    }

    #[test]
    fn empty_range_sums_to_zero() {
        assert_eq!(sum_range(5, 4, |_| Ok(1.0)).unwrap(), 0.0);
    }
}
