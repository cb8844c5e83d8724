//! Parallel iteration with a sequential fallback.
//!
//! With the default `parallel` feature, maps run on the rayon pool; without
//! it they degrade to plain iterators. Result order is preserved in both
//! cases, so every caller produces bit-identical output regardless of the
//! thread count. Callers that want the sequential path inside a parallel
//! build (benchmark baselines) pass `sequential = true`.

#[cfg(feature = "parallel")]
pub(crate) fn map_collect<T, O, F>(items: Vec<T>, sequential: bool, f: F) -> Vec<O>
where
    T: Send,
    O: Send,
    F: Fn(T) -> O + Sync + Send,
{
    use rayon::prelude::*;
    if sequential {
        items.into_iter().map(f).collect()
    } else {
        items.into_par_iter().map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_collect<T, O, F>(items: Vec<T>, _sequential: bool, f: F) -> Vec<O>
where
    F: Fn(T) -> O,
{
    items.into_iter().map(f).collect()
}
