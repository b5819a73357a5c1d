//! Commutator of two walk steps, computed and in closed form.
//!
//! A step M = S (C tensor I) has the block structure
//! [[a T-, b T-], [g T+, d T+]] over the coin index, where T+/- translate
//! position by one site and (a, b, g, d) are the coin entries. Multiplying
//! two such steps and subtracting gives the closed form
//!
//!   [M1, M2] = [[(b1 g2 - b2 g1) I,            (a1 b2 - a2 b1) T-^2 + (b1 d2 - b2 d1) I],
//!               [(g1 a2 - g2 a1) I + (d1 g2 - d2 g1) T+^2,            (g1 b2 - g2 b1) I]]
//!
//! because T- T+ = I on a cycle. For the single-parameter coin this
//! collapses to off-diagonal blocks -i sin(t2 - t1) (I - T-+^2) with zero
//! diagonal, so the steps commute exactly when t2 - t1 is a multiple of pi.

use crate::dense::DenseOperator;
use crate::oracle::step_matrix;
use crate::state::CoinSpec;
use crate::{C64, Error, Result};

/// Cyclic translation by `offset` sites on the L-dimensional position space.
pub fn translation_matrix(l: usize, offset: i64) -> Result<DenseOperator> {
    if l == 0 || l % 2 == 0 {
        return Err(Error::Lattice { l });
    }
    let mut t = DenseOperator::zeros(l);
    let li = l as i64;
    for x in 0..l {
        let target = ((x as i64 + offset).rem_euclid(li)) as usize;
        t.set(target, x, C64::new(1.0, 0.0));
    }
    Ok(t)
}

fn assemble_blocks(
    b00: &DenseOperator,
    b01: &DenseOperator,
    b10: &DenseOperator,
    b11: &DenseOperator,
) -> DenseOperator {
    let l = b00.dim();
    let mut m = DenseOperator::zeros(2 * l);
    for (ci, cj, block) in [(0, 0, b00), (0, 1, b01), (1, 0, b10), (1, 1, b11)] {
        for i in 0..l {
            for j in 0..l {
                let v = block.get(i, j);
                if v.norm_sqr() != 0.0 {
                    m.set(ci * l + i, cj * l + j, v);
                }
            }
        }
    }
    m
}

fn check_lattice(l: usize) -> Result<()> {
    if l == 0 || l % 2 == 0 {
        return Err(Error::Lattice { l });
    }
    if l < 5 {
        // on 3 sites T^2 aliases T^-1 and the closed form degenerates
        return Err(Error::Precondition(format!(
            "lattice {l} too small to separate two-site translations"
        )));
    }
    Ok(())
}

/// Computed and closed-form commutator for two general coins.
pub fn commutator_general(
    spec1: &CoinSpec,
    spec2: &CoinSpec,
    l: usize,
) -> Result<(DenseOperator, DenseOperator)> {
    check_lattice(l)?;
    let m1 = step_matrix(spec1, l)?;
    let m2 = step_matrix(spec2, l)?;
    let computed = m1.mul(&m2)?.sub(&m2.mul(&m1)?)?;

    let e1 = spec1.entries();
    let e2 = spec2.entries();
    let (a1, b1, g1, d1) = (e1[0][0], e1[0][1], e1[1][0], e1[1][1]);
    let (a2, b2, g2, d2) = (e2[0][0], e2[0][1], e2[1][0], e2[1][1]);

    let id = DenseOperator::identity(l);
    let tm2 = translation_matrix(l, -2)?;
    let tp2 = translation_matrix(l, 2)?;

    let b00 = id.scale(b1 * g2 - b2 * g1);
    let b01 = tm2.scale(a1 * b2 - a2 * b1).add(&id.scale(b1 * d2 - b2 * d1))?;
    let b10 = id.scale(g1 * a2 - g2 * a1).add(&tp2.scale(d1 * g2 - d2 * g1))?;
    let b11 = id.scale(g1 * b2 - g2 * b1);
    let predicted = assemble_blocks(&b00, &b01, &b10, &b11);
    Ok((computed, predicted))
}

/// Computed and closed-form commutator for two single-parameter coins:
/// zero diagonal, off-diagonal blocks -i sin(t2 - t1) (I - T^2).
pub fn commutator_single_param(
    theta1: f64,
    theta2: f64,
    l: usize,
) -> Result<(DenseOperator, DenseOperator)> {
    check_lattice(l)?;
    let s1 = CoinSpec::new(theta1);
    let s2 = CoinSpec::new(theta2);
    let m1 = step_matrix(&s1, l)?;
    let m2 = step_matrix(&s2, l)?;
    let computed = m1.mul(&m2)?.sub(&m2.mul(&m1)?)?;

    let coef = C64::new(0.0, -(theta2 - theta1).sin());
    let id = DenseOperator::identity(l);
    let zero = DenseOperator::zeros(l);
    let b01 = id.sub(&translation_matrix(l, -2)?)?.scale(coef);
    let b10 = id.sub(&translation_matrix(l, 2)?)?.scale(coef);
    let predicted = assemble_blocks(&zero, &b01, &b10, &zero);
    Ok((computed, predicted))
}
