//! Switch between rayon and sequential iteration.
//!
//! Every parallel site in the crate goes through these macros so that the
//! `parallel` feature can be turned off without touching call sites. Parallel
//! loops only ever write to disjoint, index-determined slots, which keeps the
//! output bit-identical to the sequential build.

macro_rules! if_rayon {
    ($rayon_value:expr, $else_value:expr) => {{
        #[cfg(feature = "parallel")]
        {
            $rayon_value
        }
        #[cfg(not(feature = "parallel"))]
        {
            $else_value
        }
    }};
}
pub(crate) use if_rayon;

/// Runs `f` on a dedicated single-thread pool when `parallel` is enabled.
///
/// Used by determinism checks to compare one-thread and many-thread output.
pub fn with_single_thread<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    if_rayon!(
        {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(1)
                .build()
                .expect("single-thread pool");
            pool.install(f)
        },
        f()
    )
}

/// Number of worker threads the current context would use.
pub fn current_threads() -> usize {
    if_rayon!(rayon::current_num_threads(), 1)
}
