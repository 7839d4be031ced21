//! Execution strategy for the batch loops (set enumeration, degree sweeps).
//!
//! With the `parallel` feature the loops run on the rayon global pool;
//! without it, [`Execution::Parallel`] silently runs sequentially. Results
//! are collected in index order either way.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this strategy actually runs on more than one thread.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Map `f` over `items`, preserving order.
pub fn map<T, U, F>(exec: Execution, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.into_par_iter().map(f).collect();
    }
    let _ = exec;
    items.into_iter().map(f).collect()
}

/// Odd integers in `[1, max]` satisfying `pred`, ascending.
pub fn filter_odd<F>(exec: Execution, max: u64, pred: F) -> Vec<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    let count = max.div_ceil(2);
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..count).into_par_iter().map(|k| 2 * k + 1).filter(|&i| pred(i)).collect();
    }
    let _ = exec;
    (0..count).map(|k| 2 * k + 1).filter(|&i| pred(i)).collect()
}

/// Number of odd integers in `[1, max]` satisfying `pred`.
pub fn count_odd<F>(exec: Execution, max: u64, pred: F) -> u64
where
    F: Fn(u64) -> bool + Sync + Send,
{
    let count = max.div_ceil(2);
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..count).into_par_iter().filter(|&k| pred(2 * k + 1)).count() as u64;
    }
    let _ = exec;
    (0..count).filter(|&k| pred(2 * k + 1)).count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let pred = |i: u64| !i.is_multiple_of(3) && i % 7 != 1;
        let a = filter_odd(Execution::Sequential, 10_001, pred);
        let b = filter_odd(Execution::Parallel, 10_001, pred);
        assert_eq!(a, b);
        assert_eq!(count_odd(Execution::Parallel, 10_001, pred), a.len() as u64);
        let sq = map(Execution::Parallel, (0..100u64).collect(), |x| x * x);
        assert_eq!(sq[99], 9801);
    }

    #[test]
    fn odd_range_bounds() {
        assert_eq!(filter_odd(Execution::Sequential, 0, |_| true), Vec::<u64>::new());
        assert_eq!(filter_odd(Execution::Sequential, 1, |_| true), vec![1]);
        assert_eq!(filter_odd(Execution::Sequential, 6, |_| true), vec![1, 3, 5]);
    }
}
