//! Data-parallel map over independent work items, with a sequential path that
//! is always compiled and used when the `parallel` feature is off.

use serde::{Deserialize, Serialize};

/// How many worker threads to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Parallelism {
    Sequential,
    /// The global pool (all cores).
    #[default]
    Auto,
    Threads(usize),
}

impl Parallelism {
    /// `0` means automatic, `1` sequential.
    pub fn from_threads(n: usize) -> Self {
        match n {
            0 => Parallelism::Auto,
            1 => Parallelism::Sequential,
            n => Parallelism::Threads(n),
        }
    }

    /// Runs `f` inside a pool of the requested size. Calls to [`map`] made
    /// from `f` use that pool.
    ///
    /// [`map`]: Parallelism::map
    pub fn install<R: Send>(self, f: impl FnOnce() -> R + Send) -> R {
        match self {
            #[cfg(feature = "parallel")]
            Parallelism::Threads(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
                Ok(pool) => pool.install(f),
                Err(e) => {
                    log::warn!("thread pool unavailable ({e}); using the global pool");
                    f()
                }
            },
            _ => f(),
        }
    }

    /// Maps `f` over `items`, keeping input order in the output.
    pub fn map<T, R, F>(self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Send + Sync,
    {
        match self {
            Parallelism::Sequential => items.into_iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            _ => {
                use rayon::prelude::*;
                items.into_par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            _ => items.into_iter().map(f).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_kept() {
        for p in [Parallelism::Sequential, Parallelism::Auto, Parallelism::Threads(3)] {
            let out = p.install(|| p.map((0..100).collect(), |x: u64| x * x));
            assert_eq!(out, (0..100).map(|x| x * x).collect::<Vec<_>>());
        }
    }
}
