//! Slice mapping helpers for the embarrassingly parallel parts of the crate:
//! metric grid sweeps, convergence tables, and per-image detection scoring.
//!
//! With the `parallel` feature (on by default) [`map`] fans work out over a
//! rayon thread pool; without it the crate stays dependency-light and [`map`]
//! degrades to the sequential path. Output order always matches input order,
//! so results are deterministic either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, in parallel when the `parallel` feature is enabled.
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        map_parallel(items, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_sequential(items, f)
    }
}

/// Single-threaded mapping, always available.
pub fn map_sequential<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.iter().map(f).collect()
}

/// Rayon-backed mapping; results are collected back in input order.
#[cfg(feature = "parallel")]
pub fn map_parallel<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}
