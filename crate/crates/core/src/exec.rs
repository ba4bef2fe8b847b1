//! Sequential / data-parallel execution switch.
//!
//! Every bulk loop in the crate (grid evaluation, membership scans, direction
//! sweeps, weight sweeps) goes through these helpers. Results are always
//! collected in input order so both modes produce identical output.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Execution {
    Sequential,
    /// Uses the rayon global pool when the `parallel` feature is enabled,
    /// otherwise falls back to [`Execution::Sequential`].
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// Maps `f` over `0..n`, preserving order.
    pub fn map_range<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Send + Sync,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }

    /// Index of the first element satisfying `pred`.
    pub fn position_first<F>(self, n: usize, pred: F) -> Option<usize>
    where
        F: Fn(usize) -> bool + Send + Sync,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() && n >= PAR_SCAN_MIN {
            use rayon::prelude::*;
            return (0..n).into_par_iter().position_first(pred);
        }
        (0..n).position(pred)
    }

    /// Reduces `0..n` in blocks of `block` with `fold` then `merge`; `merge`
    /// must be associative for the two modes to agree.
    pub fn fold_blocks<T, F, M>(self, n: usize, block: usize, fold: F, merge: M) -> Option<T>
    where
        T: Send,
        F: Fn(std::ops::Range<usize>) -> T + Send + Sync,
        M: Fn(T, T) -> T + Send + Sync,
    {
        let block = block.max(1);
        let nblocks = n.div_ceil(block);
        let partial = self.map_range(nblocks, |b| fold(b * block..((b + 1) * block).min(n)));
        partial.into_iter().reduce(merge)
    }
}

#[cfg(feature = "parallel")]
const PAR_SCAN_MIN: usize = 4096;
