//! Data-parallel helpers. With the `parallel` feature disabled every helper
//! runs sequentially and the `parallel` flag is ignored.

/// Whether parallel execution is compiled in.
pub const AVAILABLE: bool = cfg!(feature = "parallel");

/// `(0..len).map(f).collect()`, on the rayon pool when `parallel` is set.
pub fn map_range<T, F>(len: usize, parallel: bool, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return (0..len).into_par_iter().map(f).collect();
    }
    let _ = parallel;
    (0..len).map(f).collect()
}

/// Maps over a slice, preserving order.
pub fn map_slice<S, T, F>(items: &[S], parallel: bool, f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = parallel;
    items.iter().map(f).collect()
}
