//! Data-parallel helpers. With the `parallel` feature these run on rayon's
//! pool unless disabled at runtime; otherwise they are plain iterators.
//! Output order always matches input order.

use std::sync::atomic::{AtomicBool, Ordering};

static ENABLED: AtomicBool = AtomicBool::new(true);

/// Runtime switch, used by benchmarks to compare both code paths in one binary.
pub fn set_parallel(on: bool) {
    ENABLED.store(on, Ordering::Relaxed);
}

pub fn parallel_enabled() -> bool {
    cfg!(feature = "parallel") && ENABLED.load(Ordering::Relaxed)
}

#[cfg(feature = "parallel")]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    if parallel_enabled() {
        items.par_iter().map(f).collect()
    } else {
        items.iter().map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn filter<'a, T, F>(items: &'a [T], pred: F) -> Vec<&'a T>
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    use rayon::prelude::*;
    if parallel_enabled() {
        items.par_iter().filter(|x| pred(x)).collect()
    } else {
        items.iter().filter(|x| pred(x)).collect()
    }
}

#[cfg(not(feature = "parallel"))]
pub fn filter<'a, T, F>(items: &'a [T], pred: F) -> Vec<&'a T>
where
    F: Fn(&T) -> bool,
{
    items.iter().filter(|x| pred(x)).collect()
}

/// Index range map, convenient for per-row work.
pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    let idx: Vec<usize> = (0..n).collect();
    map(&idx, |&i| f(i))
}
