//! Execution strategy for the embarrassingly parallel scans (subset
//! enumerations, per-class analyses).
//!
//! `Exec::Parallel` uses rayon when the `parallel` feature is enabled and
//! silently degrades to a sequential loop otherwise, so callers never need
//! their own `cfg` switches. Results are always returned in input order.

use std::ops::Range;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    #[default]
    Parallel,
    Sequential,
}

impl Exec {
    /// True when this strategy will actually fan out to a thread pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    pub fn map_range<R, F>(self, range: Range<usize>, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            use rayon::prelude::*;
            return range.into_par_iter().map(f).collect();
        }
        range.map(f).collect()
    }

    /// Like [`Exec::map_range`] but keeps only the `Some` results.
    pub fn filter_map_range<R, F>(self, range: Range<usize>, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> Option<R> + Sync + Send,
    {
        self.map_range(range, f).into_iter().flatten().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree_and_keep_order() {
        let xs: Vec<u64> = (0..500).collect();
        let par = Exec::Parallel.map(&xs, |x| x * x);
        let seq = Exec::Sequential.map(&xs, |x| x * x);
        assert_eq!(par, seq);
        assert_eq!(
            Exec::Parallel.filter_map_range(0..100, |i| (i % 7 == 0).then_some(i)),
            (0..100).filter(|i| i % 7 == 0).collect::<Vec<_>>()
        );
    }
}
