//! Execution strategy for the embarrassingly parallel inner loops
//! (verification corpora, enumeration filters). The parallel path must
//! produce output identical to the sequential one, so only order-preserving
//! map/collect shapes are used.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Order-preserving map over owned items; parallel when the `parallel`
/// feature is enabled.
pub fn map_collect<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().map(f).collect()
    }
}

/// Sequential reference path, always available (used by the benches to
/// compare against the parallel path).
pub fn map_collect_seq<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    F: Fn(T) -> R,
{
    items.into_iter().map(f).collect()
}

/// Order-preserving filter keeping items that satisfy `f`.
pub fn filter_collect<T, F>(items: Vec<T>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&T) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.into_par_iter().filter(|t| f(t)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().filter(|t| f(t)).collect()
    }
}
