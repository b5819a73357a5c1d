//! Dense-matrix reference implementations.
//!
//! Everything here rebuilds the walk from explicit matrices so the fast
//! state-vector engine can be checked against an independent route. Sizes
//! are capped because these are correctness oracles, not workhorses.

use crate::dense::DenseOperator;
use crate::state::{coin_matrix, CoinSpec};
use crate::{C64, Error, Result};

/// Coin-conditioned cyclic shift as a 2L x 2L matrix, index c * L + s.
pub fn shift_matrix(l: usize) -> Result<DenseOperator> {
    if l == 0 || l % 2 == 0 {
        return Err(Error::Lattice { l });
    }
    let mut s = DenseOperator::zeros(2 * l);
    for x in 0..l {
        s.set((x + l - 1) % l, x, C64::new(1.0, 0.0));
        s.set(l + (x + 1) % l, l + x, C64::new(1.0, 0.0));
    }
    Ok(s)
}

/// Coin rotation acting identically on every site, as a 2L x 2L matrix.
pub fn coin_embed(spec: &CoinSpec, l: usize) -> Result<DenseOperator> {
    if l == 0 || l % 2 == 0 {
        return Err(Error::Lattice { l });
    }
    let c = coin_matrix(spec);
    let mut m = DenseOperator::zeros(2 * l);
    for ci in 0..2 {
        for cj in 0..2 {
            let v = c.get(ci, cj);
            if v.norm_sqr() == 0.0 {
                continue;
            }
            for x in 0..l {
                m.set(ci * l + x, cj * l + x, v);
            }
        }
    }
    Ok(m)
}

/// One walk step as a matrix: shift times coin.
pub fn step_matrix(spec: &CoinSpec, l: usize) -> Result<DenseOperator> {
    Ok(shift_matrix(l)?.mul(&coin_embed(spec, l)?)?)
}

/// Product of step matrices for a coin list in application order
/// (steps[0] acts first, so it sits rightmost in the product).
pub fn brute_force_operator(steps: &[CoinSpec], l: usize) -> Result<DenseOperator> {
    if 2 * l > 1024 {
        return Err(Error::Budget(format!(
            "dense operator dimension {} exceeds 1024",
            2 * l
        )));
    }
    let mut op = DenseOperator::identity(2 * l);
    for spec in steps {
        op = step_matrix(spec, l)?.mul(&op)?;
    }
    Ok(op)
}

/// One weighted coin list from expanding a two-branch step power.
#[derive(Clone, Debug)]
pub struct SequenceTerm {
    pub weight: C64,
    /// Application order; steps[0] acts first.
    pub steps: Vec<CoinSpec>,
}

/// Expand (cos ts * [theta_2 then theta_1] + sin ts * [theta_1 then theta_2])^(n/2)
/// into its 2^(n/2) weighted coin lists. Subset bit i set means block i took
/// the sin branch.
pub fn enumerate_step_sequences(
    theta1: f64,
    theta2: f64,
    theta_s: f64,
    n: usize,
) -> Result<Vec<SequenceTerm>> {
    if n % 2 != 0 {
        return Err(Error::Precondition(format!(
            "step count {n} must be even to pair into blocks"
        )));
    }
    if n > 12 {
        return Err(Error::Budget(format!(
            "enumeration of {n} steps needs 2^{} terms",
            n / 2
        )));
    }
    let m = n / 2;
    let (w_cos, w_sin) = (theta_s.cos(), theta_s.sin());
    let block_cos = [CoinSpec::new(theta2), CoinSpec::new(theta1)];
    let block_sin = [CoinSpec::new(theta1), CoinSpec::new(theta2)];
    let mut terms = Vec::with_capacity(1 << m);
    for subset in 0..(1_usize << m) {
        let j = subset.count_ones() as usize;
        let weight = C64::new(w_cos.powi((m - j) as i32) * w_sin.powi(j as i32), 0.0);
        let mut steps = Vec::with_capacity(n);
        for i in 0..m {
            if (subset >> i) & 1 == 1 {
                steps.extend_from_slice(&block_sin);
            } else {
                steps.extend_from_slice(&block_cos);
            }
        }
        terms.push(SequenceTerm { weight, steps });
    }
    Ok(terms)
}

#[derive(Clone, Copy, Debug)]
pub struct IdentityReport {
    pub max_abs_diff: f64,
    pub pass: bool,
}

/// Entrywise comparison of two operators.
pub fn verify_identity(a: &DenseOperator, b: &DenseOperator, tol: f64) -> Result<IdentityReport> {
    let d = a.max_abs_diff(b)?;
    Ok(IdentityReport {
        max_abs_diff: d,
        pass: d <= tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{make_localized_state, walk_step, WalkerState};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn empty_product_is_identity() {
        let op = brute_force_operator(&[], 5).unwrap();
        assert!(op.max_abs_diff(&DenseOperator::identity(10)).unwrap() < 1e-15);
    }

    #[test]
    fn zero_angle_step_is_pure_shift() {
        let op = brute_force_operator(&[CoinSpec::new(0.0)], 5).unwrap();
        assert!(op.max_abs_diff(&shift_matrix(5).unwrap()).unwrap() < 1e-15);
    }

    #[test]
    fn matrix_route_matches_state_route() {
        let seq = [CoinSpec::new(FRAC_PI_4), CoinSpec::new(FRAC_PI_6)];
        let op = brute_force_operator(&seq, 9).unwrap();
        let init = make_localized_state(c(0.6, 0.0), c(0.0, 0.8), 0, 9).unwrap();
        let via_matrix = op.apply_vec(init.as_slice()).unwrap();
        let mut via_steps = init;
        for s in &seq {
            via_steps = walk_step(&via_steps, s);
        }
        let wrapped = WalkerState::from_amplitudes(9, via_matrix).unwrap();
        assert!(wrapped.max_abs_diff(&via_steps).unwrap() < 1e-14);
    }

    #[test]
    fn step_products_are_unitary() {
        let seq = [
            CoinSpec::new(0.3),
            CoinSpec::general(1.1, 0.2, 0.7),
            CoinSpec::new(FRAC_PI_2),
        ];
        assert!(brute_force_operator(&seq, 7).unwrap().is_unitary(1e-12));
    }

    #[test]
    fn budget_rejected() {
        assert!(matches!(
            brute_force_operator(&[], 513),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn enumeration_counts_and_weights() {
        let t2 = enumerate_step_sequences(0.1, 0.2, FRAC_PI_4, 2).unwrap();
        assert_eq!(t2.len(), 2);

        let t6 = enumerate_step_sequences(0.1, 0.2, FRAC_PI_6, 6).unwrap();
        assert_eq!(t6.len(), 8);
        // weight classes follow binomial multiplicities (1, 3, 3, 1)
        let (wc, ws) = (FRAC_PI_6.cos(), FRAC_PI_6.sin());
        for j in 0..=3 {
            let expect = wc.powi(3 - j) * ws.powi(j);
            let count = t6
                .iter()
                .filter(|t| (t.weight.re - expect).abs() < 1e-15)
                .count();
            assert_eq!(count, [1, 3, 3, 1][j as usize]);
        }
        // every term lists n steps
        assert!(t6.iter().all(|t| t.steps.len() == 6));
    }

    #[test]
    fn enumeration_swap_duality() {
        let n = 6;
        let m = n / 2;
        let a = enumerate_step_sequences(0.1, 0.2, 0.4, n).unwrap();
        let b = enumerate_step_sequences(0.2, 0.1, FRAC_PI_2 - 0.4, n).unwrap();
        for subset in 0..(1usize << m) {
            let comp = !subset & ((1 << m) - 1);
            let sa: Vec<f64> = a[subset].steps.iter().map(|s| s.theta).collect();
            let sb: Vec<f64> = b[comp].steps.iter().map(|s| s.theta).collect();
            assert_eq!(sa, sb);
            assert!((a[subset].weight - b[comp].weight).norm() < 1e-15);
        }
    }

    #[test]
    fn enumeration_rejections() {
        assert!(matches!(
            enumerate_step_sequences(0.1, 0.2, 0.3, 5),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            enumerate_step_sequences(0.1, 0.2, 0.3, 14),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn identity_report() {
        let i5 = DenseOperator::identity(5);
        let r = verify_identity(&i5, &i5, 1e-12).unwrap();
        assert!(r.pass);
        assert_eq!(r.max_abs_diff, 0.0);
        let mut off = DenseOperator::identity(5);
        off.set(0, 0, c(1.0 + 1e-6, 0.0));
        let r = verify_identity(&i5, &off, 1e-12).unwrap();
        assert!(!r.pass);
        assert!((r.max_abs_diff - 1e-6).abs() < 1e-12);
    }
}
