//! Walker states on a cyclic lattice and the elementary coin / shift /
//! step operations.
//!
//! Layout: amplitudes are coin-major, `amp[c * L + s]` for coin `c` in
//! {0,1} and site index `s` in 0..L. Site `s` represents position
//! `x = s - (L-1)/2`, so an odd lattice holds positions symmetrically
//! around the origin. The shift is cyclic, which keeps it exactly unitary;
//! choosing `L >= 2N+3` keeps an N-step light cone from ever wrapping.

use std::f64::consts::FRAC_PI_2;

use crate::dense::{hermitian_eigenvalues_2x2, DenseOperator};
use crate::{C64, Error, Result};

/// Coin parameters. Defaults (xi = 0, zeta = pi/2) give the single-parameter
/// coin [[cos t, i sin t], [i sin t, cos t]].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoinSpec {
    pub theta: f64,
    pub xi: f64,
    pub zeta: f64,
}

impl CoinSpec {
    pub fn new(theta: f64) -> Self {
        CoinSpec {
            theta,
            xi: 0.0,
            zeta: FRAC_PI_2,
        }
    }

    pub fn general(theta: f64, xi: f64, zeta: f64) -> Self {
        CoinSpec { theta, xi, zeta }
    }

    /// The four coin-matrix entries [[a, b], [g, d]].
    pub fn entries(&self) -> [[C64; 2]; 2] {
        let (ct, st) = (self.theta.cos(), self.theta.sin());
        let exi = C64::from_polar(1.0, self.xi);
        let eze = C64::from_polar(1.0, self.zeta);
        [
            [exi * ct, eze * st],
            [-eze.conj() * st, exi.conj() * ct],
        ]
    }
}

/// The 2x2 coin unitary for a spec.
pub fn coin_matrix(spec: &CoinSpec) -> DenseOperator {
    let e = spec.entries();
    DenseOperator::from_rows(&[vec![e[0][0], e[0][1]], vec![e[1][0], e[1][1]]])
        .expect("2x2 construction cannot fail")
}

#[derive(Clone, Debug)]
pub struct WalkerState {
    l: usize,
    amp: Vec<C64>,
}

impl WalkerState {
    pub fn from_amplitudes(l: usize, amp: Vec<C64>) -> Result<Self> {
        if l == 0 || l % 2 == 0 {
            return Err(Error::Lattice { l });
        }
        if amp.len() != 2 * l {
            return Err(Error::DimMismatch {
                a: 2 * l,
                b: amp.len(),
            });
        }
        Ok(WalkerState { l, amp })
    }

    pub fn zero(l: usize) -> Result<Self> {
        Self::from_amplitudes(l, vec![C64::new(0.0, 0.0); 2 * l])
    }

    pub fn lattice_size(&self) -> usize {
        self.l
    }

    fn half(&self) -> i64 {
        ((self.l - 1) / 2) as i64
    }

    fn site(&self, x: i64) -> Option<usize> {
        let s = x + self.half();
        if s < 0 || s >= self.l as i64 {
            None
        } else {
            Some(s as usize)
        }
    }

    /// Amplitude at (coin, position). Positions run -(L-1)/2 ..= (L-1)/2.
    pub fn amplitude(&self, coin: usize, x: i64) -> C64 {
        match self.site(x) {
            Some(s) => self.amp[coin * self.l + s],
            None => C64::new(0.0, 0.0),
        }
    }

    /// Raw coin-major amplitude slice, matching the dense-operator index
    /// convention (coin * L + site).
    pub fn as_slice(&self) -> &[C64] {
        &self.amp
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scaled(&self, w: C64) -> WalkerState {
        WalkerState {
            l: self.l,
            amp: self.amp.iter().map(|a| a * w).collect(),
        }
    }

    pub fn normalized(&self) -> Result<WalkerState> {
        let n = self.norm();
        if n < crate::DESTRUCTIVE_NORM_TOL {
            return Err(Error::DegenerateState);
        }
        Ok(self.scaled(C64::new(1.0 / n, 0.0)))
    }

    pub fn inner(&self, other: &WalkerState) -> Result<C64> {
        if self.l != other.l {
            return Err(Error::DimMismatch {
                a: self.l,
                b: other.l,
            });
        }
        Ok(self
            .amp
            .iter()
            .zip(other.amp.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// |<self|other>| / (norms); 1 means equal up to global phase.
    pub fn fidelity(&self, other: &WalkerState) -> Result<f64> {
        let ip = self.inner(other)?.norm();
        Ok(ip / (self.norm() * other.norm()))
    }

    pub fn max_abs_diff(&self, other: &WalkerState) -> Result<f64> {
        if self.l != other.l {
            return Err(Error::DimMismatch {
                a: self.l,
                b: other.l,
            });
        }
        Ok(self
            .amp
            .iter()
            .zip(other.amp.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

/// w1 * s1 + w2 * s2.
pub fn linear_combination(
    w1: C64,
    s1: &WalkerState,
    w2: C64,
    s2: &WalkerState,
) -> Result<WalkerState> {
    if s1.l != s2.l {
        return Err(Error::DimMismatch { a: s1.l, b: s2.l });
    }
    let amp = s1
        .amp
        .iter()
        .zip(s2.amp.iter())
        .map(|(a, b)| w1 * a + w2 * b)
        .collect();
    Ok(WalkerState { l: s1.l, amp })
}

/// State localized at position x0 with coin amplitudes (alpha, beta).
pub fn make_localized_state(alpha: C64, beta: C64, x0: i64, l: usize) -> Result<WalkerState> {
    let norm_sq = alpha.norm_sqr() + beta.norm_sqr();
    if (norm_sq - 1.0).abs() > 1e-12 {
        return Err(Error::Normalization { norm_sq });
    }
    let mut st = WalkerState::zero(l)?;
    let s = st.site(x0).ok_or(Error::Bounds { x0, l })?;
    st.amp[s] = alpha;
    st.amp[l + s] = beta;
    Ok(st)
}

/// Coin rotation applied identically at every site.
pub fn apply_coin(state: &WalkerState, spec: &CoinSpec) -> WalkerState {
    let e = spec.entries();
    let l = state.l;
    let mut amp = vec![C64::new(0.0, 0.0); 2 * l];
    for s in 0..l {
        let a = state.amp[s];
        let b = state.amp[l + s];
        amp[s] = e[0][0] * a + e[0][1] * b;
        amp[l + s] = e[1][0] * a + e[1][1] * b;
    }
    WalkerState { l, amp }
}

/// Coin-conditioned cyclic shift: coin 0 moves x -> x-1, coin 1 moves x -> x+1.
pub fn apply_shift(state: &WalkerState) -> WalkerState {
    let l = state.l;
    let mut amp = vec![C64::new(0.0, 0.0); 2 * l];
    for s in 0..l {
        // target site s receives coin-0 amplitude from s+1 and coin-1 from s-1
        amp[s] = state.amp[(s + 1) % l];
        amp[l + s] = state.amp[l + (s + l - 1) % l];
    }
    WalkerState { l, amp }
}

/// One walk step: coin rotation, then conditional shift.
pub fn walk_step(state: &WalkerState, spec: &CoinSpec) -> WalkerState {
    apply_shift(&apply_coin(state, spec))
}

/// Position distribution p(x) = sum_c |amp(c,x)|^2, ordered by x.
pub fn probability_distribution(state: &WalkerState) -> Vec<(i64, f64)> {
    let l = state.l;
    let half = state.half();
    (0..l)
        .map(|s| {
            let p = state.amp[s].norm_sqr() + state.amp[l + s].norm_sqr();
            (s as i64 - half, p)
        })
        .collect()
}

/// Reduced coin state, 2x2.
#[derive(Clone, Copy, Debug)]
pub struct CoinDensityMatrix {
    pub m: [[C64; 2]; 2],
}

impl CoinDensityMatrix {
    pub fn new(m: [[C64; 2]; 2]) -> Self {
        CoinDensityMatrix { m }
    }

    pub fn trace(&self) -> C64 {
        self.m[0][0] + self.m[1][1]
    }

    /// Tr rho^2.
    pub fn purity(&self) -> f64 {
        let m = &self.m;
        let t = m[0][0] * m[0][0]
            + m[0][1] * m[1][0]
            + m[1][0] * m[0][1]
            + m[1][1] * m[1][1];
        t.re
    }

    /// Ascending eigenvalues by the Hermitian 2x2 closed form.
    pub fn eigenvalues(&self) -> [f64; 2] {
        hermitian_eigenvalues_2x2(self.m[0][0], self.m[0][1], self.m[1][1])
    }

    /// Hermitian within 1e-12, unit trace within 1e-12, eigenvalues >= -1e-12.
    pub fn validate(&self) -> Result<()> {
        let m = &self.m;
        if m[0][0].im.abs() > 1e-12
            || m[1][1].im.abs() > 1e-12
            || (m[0][1] - m[1][0].conj()).norm() > 1e-12
        {
            return Err(Error::Domain("not Hermitian".into()));
        }
        let tr = self.trace().re;
        if (tr - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!("trace {tr} != 1")));
        }
        if self.eigenvalues()[0] < -1e-12 {
            return Err(Error::Domain(format!(
                "negative eigenvalue {}",
                self.eigenvalues()[0]
            )));
        }
        Ok(())
    }
}

/// Trace out position. Renormalizes internally when the state norm is not 1.
pub fn partial_trace_position(state: &WalkerState) -> Result<CoinDensityMatrix> {
    let n2 = state.norm_sqr();
    if n2 < crate::DESTRUCTIVE_NORM_TOL * crate::DESTRUCTIVE_NORM_TOL {
        return Err(Error::DegenerateState);
    }
    let l = state.l;
    let mut r00 = C64::new(0.0, 0.0);
    let mut r01 = C64::new(0.0, 0.0);
    let mut r11 = C64::new(0.0, 0.0);
    for s in 0..l {
        let a = state.amp[s];
        let b = state.amp[l + s];
        r00 += a * a.conj();
        r01 += a * b.conj();
        r11 += b * b.conj();
    }
    let inv = C64::new(1.0 / n2, 0.0);
    Ok(CoinDensityMatrix::new([
        [r00 * inv, r01 * inv],
        [(r01 * inv).conj(), r11 * inv],
    ]))
}
