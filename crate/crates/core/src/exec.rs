//! Execution policy for the data-parallel kernels.
//!
//! With the `parallel` feature (default) the helpers fan out over rayon's
//! current pool; without it, or with [`Exec::Sequential`], they are plain
//! iterator loops. All reductions are order-independent (sums, conjunctions,
//! minimum index), so results never depend on the schedule.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Whether work will actually be split across threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// First index (lowest) for which `f` returns `Some`, with its value.
pub fn find_map_first<T, R, F>(exec: Exec, items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().find_map_first(f);
    }
    let _ = exec;
    items.iter().find_map(f)
}

pub fn map_collect<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

pub fn sum_range<F>(exec: Exec, range: std::ops::Range<usize>, f: F) -> u64
where
    F: Fn(usize) -> u64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return range.into_par_iter().map(f).sum();
    }
    let _ = exec;
    range.map(f).sum()
}

pub fn map_range<R, F>(exec: Exec, range: std::ops::Range<usize>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return range.into_par_iter().map(f).collect();
    }
    let _ = exec;
    range.map(f).collect()
}

/// Run `f` inside a pool of `threads` workers (0 = rayon default). Without
/// the `parallel` feature this just calls `f`.
pub fn with_threads<R: Send, F: FnOnce() -> R + Send>(threads: usize, f: F) -> R {
    #[cfg(feature = "parallel")]
    {
        if threads == 0 {
            return f();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(f),
            Err(e) => {
                log::warn!("could not build a {threads}-thread pool ({e}); using the global pool");
                f()
            }
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        f()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_is_lowest_index() {
        let v: Vec<usize> = (0..10_000).collect();
        for exec in [Exec::Sequential, Exec::Parallel] {
            let r = find_map_first(exec, &v, |&x| (x % 997 == 996).then_some(x));
            assert_eq!(r, Some(996));
        }
    }

    #[test]
    fn sums_agree() {
        let a = sum_range(Exec::Sequential, 0..1000, |i| i as u64);
        let b = with_threads(3, || sum_range(Exec::Parallel, 0..1000, |i| i as u64));
        assert_eq!(a, b);
        assert_eq!(a, 499_500);
    }
}
