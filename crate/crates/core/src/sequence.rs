//! Periodic coin sequences and their temporal mirrors.
//!
//! A k-periodic walk cycles a base block of k coin angles. The two-period
//! base block applies theta_2 first (block [theta_2, theta_1] in application
//! order); for k >= 3 the block applies the angles in the order given.
//! "Reverse" is the exact temporal mirror of the length-N forward list, so
//! for N not a multiple of k it starts with the reversed partial block and
//! then runs whole blocks in reversed order.

use crate::state::CoinSpec;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Order {
    Forward,
    Reverse,
    /// 1-based positions into the theta list; entry j means theta_j.
    Permutation(Vec<usize>),
}

#[derive(Clone, Debug)]
pub struct PeriodicWalkSpec {
    pub thetas: Vec<f64>,
    pub steps: usize,
    pub order: Order,
}

impl PeriodicWalkSpec {
    pub fn new(thetas: Vec<f64>, steps: usize, order: Order) -> Self {
        PeriodicWalkSpec {
            thetas,
            steps,
            order,
        }
    }

    pub fn k(&self) -> usize {
        self.thetas.len()
    }
}

/// The per-step coin list, time index 0..N in application order.
pub fn periodic_sequence(spec: &PeriodicWalkSpec) -> Result<Vec<CoinSpec>> {
    let k = spec.k();
    if k == 0 {
        return Err(Error::Spec("empty theta list".into()));
    }
    let base: Vec<f64> = match &spec.order {
        Order::Forward | Order::Reverse => {
            if k == 2 {
                vec![spec.thetas[1], spec.thetas[0]]
            } else {
                spec.thetas.clone()
            }
        }
        Order::Permutation(perm) => {
            if perm.len() != k {
                return Err(Error::Spec(format!(
                    "permutation length {} != period {}",
                    perm.len(),
                    k
                )));
            }
            let mut seen = vec![false; k];
            for &j in perm {
                if j == 0 || j > k || seen[j - 1] {
                    return Err(Error::Spec(format!(
                        "permutation {perm:?} is not a permutation of 1..={k}"
                    )));
                }
                seen[j - 1] = true;
            }
            perm.iter().map(|&j| spec.thetas[j - 1]).collect()
        }
    };
    let forward: Vec<CoinSpec> = (0..spec.steps)
        .map(|t| CoinSpec::new(base[t % k]))
        .collect();
    Ok(match spec.order {
        Order::Reverse => forward.into_iter().rev().collect(),
        _ => forward,
    })
}

/// Temporal mirror of an explicit coin list.
pub fn mirror_sequence(seq: &[CoinSpec]) -> Vec<CoinSpec> {
    seq.iter().rev().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn thetas_of(seq: &[CoinSpec]) -> Vec<f64> {
        seq.iter().map(|c| c.theta).collect()
    }

    #[test]
    fn two_period_forward_applies_second_angle_first() {
        let spec = PeriodicWalkSpec::new(vec![0.1, 0.2], 5, Order::Forward);
        assert_eq!(
            thetas_of(&periodic_sequence(&spec).unwrap()),
            vec![0.2, 0.1, 0.2, 0.1, 0.2]
        );
    }

    #[test]
    fn two_period_reverse_mirrors_forward() {
        let spec = PeriodicWalkSpec::new(vec![0.1, 0.2], 4, Order::Reverse);
        assert_eq!(
            thetas_of(&periodic_sequence(&spec).unwrap()),
            vec![0.1, 0.2, 0.1, 0.2]
        );
        // odd N: a two-period mirror is a palindrome, equal to forward
        let odd_f = PeriodicWalkSpec::new(vec![0.1, 0.2], 5, Order::Forward);
        let odd_r = PeriodicWalkSpec::new(vec![0.1, 0.2], 5, Order::Reverse);
        assert_eq!(
            thetas_of(&periodic_sequence(&odd_f).unwrap()),
            thetas_of(&periodic_sequence(&odd_r).unwrap())
        );
    }

    #[test]
    fn single_period_cycles_one_angle() {
        let spec = PeriodicWalkSpec::new(vec![0.7], 3, Order::Forward);
        assert_eq!(
            thetas_of(&periodic_sequence(&spec).unwrap()),
            vec![0.7, 0.7, 0.7]
        );
    }

    #[test]
    fn three_period_forward_and_mirror() {
        let f = PeriodicWalkSpec::new(vec![0.1, 0.2, 0.3], 7, Order::Forward);
        let fs = periodic_sequence(&f).unwrap();
        assert_eq!(
            thetas_of(&fs),
            vec![0.1, 0.2, 0.3, 0.1, 0.2, 0.3, 0.1]
        );
        let r = PeriodicWalkSpec::new(vec![0.1, 0.2, 0.3], 7, Order::Reverse);
        let rs = periodic_sequence(&r).unwrap();
        // mirror: reversed partial tail first, then whole blocks descending
        assert_eq!(
            thetas_of(&rs),
            vec![0.1, 0.3, 0.2, 0.1, 0.3, 0.2, 0.1]
        );
        assert_eq!(thetas_of(&mirror_sequence(&fs)), thetas_of(&rs));
    }

    #[test]
    fn permutation_order() {
        let p = PeriodicWalkSpec::new(
            vec![0.1, 0.2, 0.3],
            6,
            Order::Permutation(vec![3, 2, 1]),
        );
        assert_eq!(
            thetas_of(&periodic_sequence(&p).unwrap()),
            vec![0.3, 0.2, 0.1, 0.3, 0.2, 0.1]
        );
        // a two-period permutation is taken literally, no swap
        let lit = PeriodicWalkSpec::new(vec![0.1, 0.2], 4, Order::Permutation(vec![1, 2]));
        assert_eq!(
            thetas_of(&periodic_sequence(&lit).unwrap()),
            vec![0.1, 0.2, 0.1, 0.2]
        );
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(periodic_sequence(&PeriodicWalkSpec::new(vec![], 4, Order::Forward)).is_err());
        assert!(periodic_sequence(&PeriodicWalkSpec::new(
            vec![0.1, 0.2],
            4,
            Order::Permutation(vec![1, 1])
        ))
        .is_err());
        assert!(periodic_sequence(&PeriodicWalkSpec::new(
            vec![0.1, 0.2],
            4,
            Order::Permutation(vec![1, 3])
        ))
        .is_err());
        assert!(periodic_sequence(&PeriodicWalkSpec::new(
            vec![0.1, 0.2],
            4,
            Order::Permutation(vec![1])
        ))
        .is_err());
    }
}
