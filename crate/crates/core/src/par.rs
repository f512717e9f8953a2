//! Data-parallel helpers. With the `parallel` feature they run on the rayon
//! pool; without it they are plain sequential loops. Results never depend on
//! scheduling: searches return the match with the smallest index and maps keep
//! input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Smallest `i < n` for which `f` returns `Some`, with that value.
#[cfg(feature = "parallel")]
pub fn find_first<T, F>(n: u64, f: F) -> Option<(u64, T)>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    (0..n).into_par_iter().find_map_first(|i| f(i).map(|t| (i, t)))
}

#[cfg(not(feature = "parallel"))]
pub fn find_first<T, F>(n: u64, f: F) -> Option<(u64, T)>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    (0..n).find_map(|i| f(i).map(|t| (i, t)))
}

#[cfg(feature = "parallel")]
pub fn map_range<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_range<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_slice<I, T, F>(items: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_slice<I, T, F>(items: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    items.iter().map(f).collect()
}

/// First item (in slice order) for which `f` returns `Some`.
#[cfg(feature = "parallel")]
pub fn find_first_in<I, T, F>(items: &[I], f: F) -> Option<(usize, T)>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> Option<T> + Sync + Send,
{
    items
        .par_iter()
        .enumerate()
        .find_map_first(|(i, x)| f(x).map(|t| (i, t)))
}

#[cfg(not(feature = "parallel"))]
pub fn find_first_in<I, T, F>(items: &[I], f: F) -> Option<(usize, T)>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> Option<T> + Sync + Send,
{
    items
        .iter()
        .enumerate()
        .find_map(|(i, x)| f(x).map(|t| (i, t)))
}

/// Outcome of one index in a [`scan`].
pub enum Step<T> {
    Skip,
    Pass,
    Hit(T),
}

/// Totals of a [`scan`]: indices that were tested, how many of them hit, and
/// the hit with the smallest index.
pub struct ScanResult<T> {
    pub tested: u64,
    pub hits: u64,
    pub first: Option<(u64, T)>,
}

fn merge<T>(a: (u64, u64, Option<(u64, T)>), b: (u64, u64, Option<(u64, T)>)) -> (u64, u64, Option<(u64, T)>) {
    let first = match (a.2, b.2) {
        (Some(x), Some(y)) => Some(if x.0 <= y.0 { x } else { y }),
        (x, y) => x.or(y),
    };
    (a.0 + b.0, a.1 + b.1, first)
}

fn lift<T>(i: u64, s: Step<T>) -> (u64, u64, Option<(u64, T)>) {
    match s {
        Step::Skip => (0, 0, None),
        Step::Pass => (1, 0, None),
        Step::Hit(t) => (1, 1, Some((i, t))),
    }
}

/// Visit every index in `0..n`, counting tested indices and hits.
#[cfg(feature = "parallel")]
pub fn scan<T, F>(n: u64, f: F) -> ScanResult<T>
where
    T: Send,
    F: Fn(u64) -> Step<T> + Sync + Send,
{
    let (tested, hits, first) = (0..n)
        .into_par_iter()
        .map(|i| lift(i, f(i)))
        .reduce(|| (0, 0, None), merge);
    ScanResult { tested, hits, first }
}

#[cfg(not(feature = "parallel"))]
pub fn scan<T, F>(n: u64, f: F) -> ScanResult<T>
where
    T: Send,
    F: Fn(u64) -> Step<T> + Sync + Send,
{
    let (tested, hits, first) = (0..n).map(|i| lift(i, f(i))).fold((0, 0, None), merge);
    ScanResult { tested, hits, first }
}
