//! Order-preserving map that runs on rayon with the `parallel` feature and
//! on the calling thread without it.

/// Maps `f` over `items`, keeping input order in the output. `threads`
/// bounds the worker count; `Some(1)` forces the sequential path.
pub(crate) fn map_ordered<T, R, F>(items: Vec<T>, threads: Option<usize>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    if threads == Some(1) || items.len() < 2 {
        return items.into_iter().map(f).collect();
    }
    imp::map_ordered(items, threads, f)
}

/// Whether the crate was built with rayon.
pub const fn parallel_enabled() -> bool {
    cfg!(feature = "parallel")
}

#[cfg(feature = "parallel")]
mod imp {
    use rayon::prelude::*;

    pub(super) fn map_ordered<T, R, F>(items: Vec<T>, threads: Option<usize>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        let run = || items.into_par_iter().map(&f).collect();
        match threads {
            Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
                Ok(pool) => pool.install(run),
                Err(_) => run(),
            },
            None => run(),
        }
    }
}

#[cfg(not(feature = "parallel"))]
mod imp {
    pub(super) fn map_ordered<T, R, F>(items: Vec<T>, _threads: Option<usize>, f: F) -> Vec<R>
    where
        F: Fn(T) -> R,
    {
        items.into_iter().map(f).collect()
    }
}
