//! Data-parallel helpers. With the `parallel` feature the independent
//! per-degree work items run on rayon's pool; without it, or in
//! [`ExecMode::Sequential`], they run in order on the calling thread.

/// How independent work items are scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExecMode {
    #[default]
    Parallel,
    Sequential,
}

impl ExecMode {
    /// Maps `f` over `items`, preserving order.
    pub fn map<T, R, Func>(self, items: Vec<T>, f: Func) -> Vec<R>
    where
        T: Send,
        R: Send,
        Func: Fn(T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == ExecMode::Parallel && items.len() > 1 {
            use rayon::prelude::*;
            return items.into_par_iter().map(f).collect();
        }
        items.into_iter().map(f).collect()
    }

    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == ExecMode::Parallel
    }
}
