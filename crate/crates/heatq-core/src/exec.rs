//! Parallel fan-out helpers.
//!
//! Grid evaluations are embarrassingly parallel: every item is a pure
//! function of its input and the output order is fixed by the input order,
//! so results are identical whichever strategy runs them.
//!
//! With the `parallel` feature (default) the work runs on a rayon pool;
//! without it everything is sequential. `HC_THREADS` caps the pool size
//! (0 or unset = rayon's default).

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExecMode {
    Sequential,
    /// Rayon pool; falls back to sequential when the feature is disabled.
    #[default]
    Parallel,
}

/// Thread cap from the HC_THREADS environment variable (0 = auto).
pub fn thread_cap() -> Option<usize> {
    std::env::var("HC_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

#[cfg(feature = "parallel")]
fn pool() -> Option<&'static rayon::ThreadPool> {
    use std::sync::OnceLock;
    static POOL: OnceLock<Option<rayon::ThreadPool>> = OnceLock::new();
    POOL.get_or_init(|| {
        thread_cap().map(|n| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .expect("failed to build thread pool")
        })
    })
    .as_ref()
}

/// Map `f` over `items`, preserving order.
pub fn par_map<T, R, F>(mode: ExecMode, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    match mode {
        ExecMode::Sequential => items.iter().map(f).collect(),
        ExecMode::Parallel => par_map_impl(items, f),
    }
}

#[cfg(feature = "parallel")]
fn par_map_impl<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    use rayon::prelude::*;
    match pool() {
        Some(p) => p.install(|| items.par_iter().map(&f).collect()),
        None => items.par_iter().map(&f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn par_map_impl<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_order_and_matches_sequential() {
        let xs: Vec<f64> = (0..100).map(|i| i as f64 * 0.1).collect();
        let seq = par_map(ExecMode::Sequential, &xs, |x| x.sin() * x.exp());
        let par = par_map(ExecMode::Parallel, &xs, |x| x.sin() * x.exp());
        assert_eq!(seq, par);
    }
}
