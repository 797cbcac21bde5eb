//! Execution policy for the data-parallel inner loops.
//!
//! Every hot loop in the crate (tuple signatures, generating-tuple searches,
//! class-pair scans) goes through the helpers here. With the `parallel`
//! feature they dispatch to rayon when asked to; without it, or with
//! [`Exec::Sequential`], they run on the calling thread. Results are identical
//! either way: reductions only use associative, order-insensitive operators or
//! preserve index order.

use std::ops::Range;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Map `f` over `range`, keeping index order.
pub fn map_range<T, F>(exec: Exec, range: Range<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return range.into_par_iter().map(f).collect();
    }
    let _ = exec;
    range.map(f).collect()
}

/// Map `f` over the items of a slice, keeping order.
pub fn map_slice<S, T, F>(exec: Exec, items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Smallest index in `range` for which `f` returns `Some`, with its value.
pub fn find_first<T, F>(exec: Exec, range: Range<usize>, f: F) -> Option<(usize, T)>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return range.into_par_iter().find_map_first(|i| f(i).map(|v| (i, v)));
    }
    let _ = exec;
    range.into_iter().find_map(|i| f(i).map(|v| (i, v)))
}

/// Minimum of `f` over `range` by `Ord` on the value, ties broken by the
/// smaller index.
pub fn min_by_key<K, F>(exec: Exec, range: Range<usize>, f: F) -> Option<(K, usize)>
where
    K: Ord + Send,
    F: Fn(usize) -> Option<K> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return range
            .into_par_iter()
            .filter_map(|i| f(i).map(|k| (k, i)))
            .min();
    }
    let _ = exec;
    range.filter_map(|i| f(i).map(|k| (k, i))).min()
}

/// Whether `f` holds for some index in `range`.
pub fn any<F>(exec: Exec, range: Range<usize>, f: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return range.into_par_iter().any(f);
    }
    let _ = exec;
    range.into_iter().any(f)
}
