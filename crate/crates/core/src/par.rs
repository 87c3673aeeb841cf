//! Data-parallel helpers with a sequential fallback.
//!
//! Everything embarrassingly parallel in this crate (sign-vector enumeration,
//! certification over `(a, i)` pairs, decode trials, prime scans) funnels
//! through these three functions. With the `parallel` feature enabled they run
//! on rayon; without it they are plain loops. Merging always happens in fixed
//! chunk order, so results — including floating-point sums — are identical for
//! any thread count and for the sequential build.

pub(crate) const CHUNK: usize = 1024;

#[cfg(feature = "parallel")]
pub(crate) fn map_indexed<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indexed<R, F>(n: usize, f: F) -> Vec<R>
where
    F: Fn(usize) -> R,
{
    (0..n).map(f).collect()
}

#[cfg(feature = "parallel")]
pub(crate) fn try_map_indexed<R, F>(n: usize, f: F) -> crate::error::Result<Vec<R>>
where
    R: Send,
    F: Fn(usize) -> crate::error::Result<R> + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn try_map_indexed<R, F>(n: usize, f: F) -> crate::error::Result<Vec<R>>
where
    F: Fn(usize) -> crate::error::Result<R>,
{
    (0..n).map(f).collect()
}

/// Fold `0..n` into an accumulator in fixed-size chunks, then merge the
/// per-chunk partials in ascending chunk order.
pub(crate) fn chunked_fold<Acc, Step, Merge>(n: usize, init: Acc, step: Step, merge: Merge) -> Acc
where
    Acc: Clone + Send + Sync,
    Step: Fn(Acc, usize) -> Acc + Sync + Send,
    Merge: Fn(Acc, Acc) -> Acc,
{
    let chunks = n.div_ceil(CHUNK).max(1);
    let partials = map_indexed(chunks, |c| {
        let lo = c * CHUNK;
        let hi = ((c + 1) * CHUNK).min(n);
        (lo..hi).fold(init.clone(), &step)
    });
    partials.into_iter().fold(init, merge)
}
