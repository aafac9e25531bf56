//! Worker-thread control.
//!
//! The `TCUL_THREADS` environment variable caps the number of worker threads
//! used by the parallel sections (embedding extraction, per-query evaluation,
//! ablation rows). It defaults to 1 so runs are sequential unless the caller
//! opts in. All parallel maps preserve element order and reduce sequentially,
//! so results are identical for any thread count.

use std::sync::OnceLock;

static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();

/// Number of worker threads requested via `TCUL_THREADS` (default 1).
pub fn thread_count() -> usize {
    std::env::var("TCUL_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(1)
}

/// The crate-wide thread pool, created on first use.
pub fn pool() -> &'static rayon::ThreadPool {
    POOL.get_or_init(|| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(thread_count())
            .build()
            .expect("failed to build worker pool")
    })
}

/// True when more than one worker thread is available.
pub fn parallel_enabled() -> bool {
    pool().current_num_threads() > 1
}
