//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) these run on the rayon
//! global pool; without it they are plain iterator adaptors. Results are
//! order-stable either way: `find_first` returns the earliest hit in slice
//! order and `map`/`filter` preserve input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub fn find_first<T, R, F>(items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    items.par_iter().find_map_first(f)
}

#[cfg(not(feature = "parallel"))]
pub fn find_first<T, R, F>(items: &[T], f: F) -> Option<R>
where
    F: Fn(&T) -> Option<R>,
{
    items.iter().find_map(f)
}

#[cfg(feature = "parallel")]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn filter<T, F>(items: &[T], f: F) -> Vec<T>
where
    T: Sync + Send + Clone,
    F: Fn(&T) -> bool + Sync + Send,
{
    items.par_iter().filter(|t| f(t)).cloned().collect()
}

#[cfg(not(feature = "parallel"))]
pub fn filter<T, F>(items: &[T], f: F) -> Vec<T>
where
    T: Clone,
    F: Fn(&T) -> bool,
{
    items.iter().filter(|t| f(t)).cloned().collect()
}

#[cfg(feature = "parallel")]
pub fn all<T, F>(items: &[T], f: F) -> bool
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    items.par_iter().all(f)
}

#[cfg(not(feature = "parallel"))]
pub fn all<T, F>(items: &[T], f: F) -> bool
where
    F: Fn(&T) -> bool,
{
    items.iter().all(f)
}

/// Number of items for which `f` holds.
#[cfg(feature = "parallel")]
pub fn count<T, F>(items: &[T], f: F) -> usize
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    items.par_iter().filter(|t| f(t)).count()
}

#[cfg(not(feature = "parallel"))]
pub fn count<T, F>(items: &[T], f: F) -> usize
where
    F: Fn(&T) -> bool,
{
    items.iter().filter(|t| f(t)).count()
}

#[cfg(test)]
mod tests {
    #[test]
    fn find_first_is_order_stable() {
        let items: Vec<usize> = (0..10_000).collect();
        let hit = super::find_first(&items, |&i| (i % 997 == 996).then_some(i));
        assert_eq!(hit, Some(996));
        assert_eq!(super::map(&items[..5], |i| i * 2), vec![0, 2, 4, 6, 8]);
        assert_eq!(super::filter(&items[..10], |i| i % 3 == 0), vec![0, 3, 6, 9]);
        assert_eq!(super::count(&items, |i| i % 2 == 0), 5000);
    }
}
