//! Data-parallel helpers. With the `parallel` feature (default) these fan out
//! over rayon's global pool; without it, or under [`Strategy::Sequential`],
//! they run on the calling thread. Output order always follows input order.

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    #[default]
    Parallel,
    Sequential,
}

impl Strategy {
    /// Whether work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Strategy::Parallel
    }
}

pub fn map<T, R, F>(items: &[T], strategy: Strategy, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy == Strategy::Parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = strategy;
    items.iter().map(f).collect()
}

pub fn flat_map<T, R, F>(items: &[T], strategy: Strategy, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Vec<R> + Sync + Send,
{
    map(items, strategy, f).into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let xs: Vec<u64> = (0..1000).collect();
        let a = map(&xs, Strategy::Parallel, |x| x * x);
        let b = map(&xs, Strategy::Sequential, |x| x * x);
        assert_eq!(a, b);
        let c = flat_map(&xs[..4], Strategy::Parallel, |&x| vec![x; x as usize]);
        assert_eq!(c, vec![1, 2, 2, 3, 3, 3]);
    }
}
