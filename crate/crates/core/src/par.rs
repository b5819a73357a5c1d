//! Order-preserving map over independent work items, parallel when the
//! crate is built with the `parallel` feature.

#[cfg(feature = "parallel")]
pub fn par_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn par_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    items.into_iter().map(f).collect()
}

/// Always-sequential map with the same signature, kept so benchmarks can
/// compare the two paths.
pub fn seq_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    items.into_iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maps_preserve_order() {
        let squares = |v: Vec<u64>| -> Vec<u64> { v.iter().map(|x| x * x).collect() };
        let input: Vec<u64> = (0..100).collect();
        assert_eq!(par_map(input.clone(), |x| x * x), squares(input.clone()));
        assert_eq!(seq_map(input.clone(), |x| x * x), squares(input));
    }
}
