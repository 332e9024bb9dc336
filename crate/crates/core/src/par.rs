//! Order-preserving parallel maps; sequential without the `parallel` feature.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub fn map<T: Sync, R: Send>(xs: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    xs.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T: Sync, R: Send>(xs: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    xs.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn flat_map<T: Sync, R: Send>(xs: &[T], f: impl Fn(&T) -> Vec<R> + Sync + Send) -> Vec<R> {
    xs.par_iter().flat_map_iter(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn flat_map<T: Sync, R: Send>(xs: &[T], f: impl Fn(&T) -> Vec<R> + Sync + Send) -> Vec<R> {
    xs.iter().flat_map(f).collect()
}
