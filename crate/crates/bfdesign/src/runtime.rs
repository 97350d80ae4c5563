//! Runtime switch between the data-parallel and sequential execution paths.
//!
//! Both paths produce bit-identical results — parallel reductions use a
//! fixed chunk decomposition and fold partial sums in index order — so the
//! switch only affects wall-clock time. It exists so benchmarks (and users
//! who want single-threaded runs) can compare the two paths in one process.
//! Without the `parallel` feature the sequential path is always used.

use std::sync::atomic::{AtomicBool, Ordering};

static PARALLEL: AtomicBool = AtomicBool::new(true);

/// Enable or disable data-parallel execution. No effect unless the crate
/// was built with the `parallel` feature.
pub fn set_parallel(enabled: bool) {
    PARALLEL.store(enabled, Ordering::Relaxed);
}

/// Whether the data-parallel path is currently active.
pub fn parallel_enabled() -> bool {
    cfg!(feature = "parallel") && PARALLEL.load(Ordering::Relaxed)
}
