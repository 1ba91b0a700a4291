//! Data-parallel map helpers.
//!
//! The hot loops (word-kernel scans, axiom sweeps) are independent pure
//! computations merged in a deterministic order, so results never depend on
//! scheduling. With the `parallel` feature disabled everything runs
//! sequentially on the calling thread.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over the items, in parallel when `par` is set and the `parallel`
/// feature is enabled. Output order always matches input order.
pub fn map_collect<T, U, F>(items: &[T], par: bool, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if par {
        return items.par_iter().map(f).collect();
    }
    let _ = par;
    items.iter().map(f).collect()
}

/// Whether the default execution mode is parallel.
pub fn default_parallel() -> bool {
    cfg!(feature = "parallel")
}
