//! Execution strategy for the data-parallel sweeps (grid checks, censuses).
//!
//! With the `parallel` feature the work is spread over rayon's pool; without
//! it every strategy runs sequentially. Results never depend on the strategy:
//! searches return the first hit in index order either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// First `Some` produced by `f` over `0..len`, in index order.
pub fn find_map_first<T, F>(exec: Execution, len: usize, f: F) -> Option<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..len).into_par_iter().find_map_first(f);
    }
    let _ = exec;
    (0..len).find_map(f)
}

/// `f` applied to every index of `0..len`, collected in order.
pub fn map_collect<T, F>(exec: Execution, len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..len).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..len).map(f).collect()
}
