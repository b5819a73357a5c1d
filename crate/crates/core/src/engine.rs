//! Evolution engines.
//!
//! Three execution models share the elementary step:
//!
//! * definite order: apply a periodic coin sequence step by step;
//! * superposed order (trajectory form): at every time t superpose the
//!   t-step prefix evolution with the evolution under that prefix's
//!   temporal mirror, renormalizing the snapshot and recording the raw
//!   norm of the combination;
//! * superposed order (per-block form): superpose the two application
//!   orders inside each two-step block and carry the combined state
//!   forward without intermediate renormalization.
//!
//! The per-block form also has an exact expansion into weighted definite
//! sequences, implemented against the dense oracle for verification.

use crate::oracle::{brute_force_operator, enumerate_step_sequences};
use crate::dense::DenseOperator;
use crate::sequence::{mirror_sequence, periodic_sequence, PeriodicWalkSpec};
use crate::state::{linear_combination, walk_step, CoinSpec, WalkerState};
use crate::{C64, Error, Result, DESTRUCTIVE_NORM_TOL};

/// States indexed by step count 0..=N together with the norm each
/// combination had before it was stored (renormalized where evolution is
/// not norm-preserving).
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub states: Vec<WalkerState>,
    pub norms_before_renormalization: Vec<f64>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn final_state(&self) -> &WalkerState {
        self.states.last().expect("trajectory holds at least t = 0")
    }
}

fn evolve_definite_impl(
    initial: &WalkerState,
    spec: &PeriodicWalkSpec,
    check_light_cone: bool,
) -> Result<Trajectory> {
    let l = initial.lattice_size();
    if check_light_cone && l < 2 * spec.steps + 3 {
        return Err(Error::LightCone { l, n: spec.steps });
    }
    let seq = periodic_sequence(spec)?;
    let mut states = Vec::with_capacity(spec.steps + 1);
    let mut norms = Vec::with_capacity(spec.steps + 1);
    states.push(initial.clone());
    norms.push(initial.norm());
    let mut cur = initial.clone();
    for coin in &seq {
        cur = walk_step(&cur, coin);
        norms.push(cur.norm());
        states.push(cur.clone());
    }
    Ok(Trajectory {
        states,
        norms_before_renormalization: norms,
    })
}

/// Periodic evolution on a lattice large enough that the light cone never
/// wraps (L >= 2N + 3).
pub fn evolve_definite(initial: &WalkerState, spec: &PeriodicWalkSpec) -> Result<Trajectory> {
    evolve_definite_impl(initial, spec, true)
}

/// Periodic evolution where cyclic wrap-around is accepted.
pub fn evolve_definite_wrapped(
    initial: &WalkerState,
    spec: &PeriodicWalkSpec,
) -> Result<Trajectory> {
    evolve_definite_impl(initial, spec, false)
}

/// Trajectory of the order-superposed walk.
///
/// At step t the two branches are the t-step prefix of the coin sequence
/// and the temporal mirror of that same prefix. The combination
/// cos(theta_s) branch1 + sin(theta_s) branch2 is stored normalized with
/// its raw norm recorded. theta_s = 0 reproduces the definite trajectory;
/// theta_s = pi/2 runs every prefix mirrored, which at t = N lands on the
/// reversed-sequence final state.
pub fn ico_trajectory(
    initial: &WalkerState,
    spec: &PeriodicWalkSpec,
    theta_s: f64,
) -> Result<Trajectory> {
    ico_trajectory_impl(initial, spec, theta_s, true)
}

/// Order-superposed trajectory where cyclic wrap-around is accepted.
pub fn ico_trajectory_wrapped(
    initial: &WalkerState,
    spec: &PeriodicWalkSpec,
    theta_s: f64,
) -> Result<Trajectory> {
    ico_trajectory_impl(initial, spec, theta_s, false)
}

fn ico_trajectory_impl(
    initial: &WalkerState,
    spec: &PeriodicWalkSpec,
    theta_s: f64,
    check_light_cone: bool,
) -> Result<Trajectory> {
    let l = initial.lattice_size();
    if check_light_cone && l < 2 * spec.steps + 3 {
        return Err(Error::LightCone { l, n: spec.steps });
    }
    let seq = periodic_sequence(spec)?;
    let (w1, w2) = (
        C64::new(theta_s.cos(), 0.0),
        C64::new(theta_s.sin(), 0.0),
    );
    let mut states = Vec::with_capacity(spec.steps + 1);
    let mut norms = Vec::with_capacity(spec.steps + 1);
    let mut forward = initial.clone();
    for t in 0..=spec.steps {
        if t > 0 {
            forward = walk_step(&forward, &seq[t - 1]);
        }
        let mirrored = {
            let mut s = initial.clone();
            for coin in mirror_sequence(&seq[..t]) {
                s = walk_step(&s, &coin);
            }
            s
        };
        let combo = linear_combination(w1, &forward, w2, &mirrored)?;
        let norm = combo.norm();
        if norm < DESTRUCTIVE_NORM_TOL {
            return Err(Error::DestructiveInterference { norm });
        }
        states.push(combo.normalized()?);
        norms.push(norm);
    }
    Ok(Trajectory {
        states,
        norms_before_renormalization: norms,
    })
}

/// Control parameters for the extended (walker + control qubit) run.
#[derive(Clone, Copy, Debug)]
pub struct SwitchSpec {
    pub theta_s: f64,
    /// Control-qubit state to post-select on.
    pub postselect: [C64; 2],
}

impl SwitchSpec {
    /// Post-selects on (|0> + |1>)/sqrt(2) unless overridden.
    pub fn new(theta_s: f64) -> Self {
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        SwitchSpec {
            theta_s,
            postselect: [h, h],
        }
    }

    pub fn with_postselect(theta_s: f64, postselect: [C64; 2]) -> Result<Self> {
        check_unit_qubit(&postselect)?;
        Ok(SwitchSpec {
            theta_s,
            postselect,
        })
    }
}

fn check_unit_qubit(v: &[C64; 2]) -> Result<()> {
    let norm_sq = v[0].norm_sqr() + v[1].norm_sqr();
    if (norm_sq - 1.0).abs() > 1e-12 {
        return Err(Error::Normalization { norm_sq });
    }
    Ok(())
}

/// Walker entangled with a control qubit. Amplitude layout is
/// amp[(s * 2 + c) * L + x] for control branch s, coin c, site x, so each
/// branch is a contiguous coin-major walker block.
#[derive(Clone, Debug)]
pub struct SwitchedState {
    l: usize,
    amp: Vec<C64>,
}

impl SwitchedState {
    pub fn lattice_size(&self) -> usize {
        self.l
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// The walker block entangled with control basis state s, unnormalized.
    pub fn branch(&self, s: usize) -> WalkerState {
        let block = &self.amp[s * 2 * self.l..(s + 1) * 2 * self.l];
        WalkerState::from_amplitudes(self.l, block.to_vec())
            .expect("branch block has walker shape")
    }
}

/// Run both coin orderings conditioned on the control qubit:
/// cos(theta_s) |psi_A> |0> + sin(theta_s) |psi_B> |1>, where psi_A and
/// psi_B are the full evolutions under the two sequences.
pub fn switch_extended_evolve(
    initial: &WalkerState,
    spec_a: &PeriodicWalkSpec,
    spec_b: &PeriodicWalkSpec,
    sw: &SwitchSpec,
) -> Result<SwitchedState> {
    if spec_a.steps != spec_b.steps {
        return Err(Error::Spec(format!(
            "branch step counts differ: {} vs {}",
            spec_a.steps, spec_b.steps
        )));
    }
    let psi_a = evolve_definite_wrapped(initial, spec_a)?;
    let psi_b = evolve_definite_wrapped(initial, spec_b)?;
    let (w1, w2) = (
        C64::new(sw.theta_s.cos(), 0.0),
        C64::new(sw.theta_s.sin(), 0.0),
    );
    let a = psi_a.final_state().scaled(w1);
    let b = psi_b.final_state().scaled(w2);
    let l = initial.lattice_size();
    let mut amp = Vec::with_capacity(4 * l);
    amp.extend_from_slice(a.as_slice());
    amp.extend_from_slice(b.as_slice());
    Ok(SwitchedState { l, amp })
}

/// Project the control qubit onto `outcome`. Returns the normalized
/// conditional walker state and the outcome probability.
pub fn project_switch(
    state: &SwitchedState,
    outcome: &[C64; 2],
) -> Result<(WalkerState, f64)> {
    check_unit_qubit(outcome)?;
    let b0 = state.branch(0);
    let b1 = state.branch(1);
    let reduced = linear_combination(outcome[0].conj(), &b0, outcome[1].conj(), &b1)?;
    let prob = reduced.norm_sqr();
    if prob.sqrt() < DESTRUCTIVE_NORM_TOL {
        return Err(Error::DegeneratePostselection { prob });
    }
    Ok((reduced.normalized()?, prob))
}

/// The effective single-walker combination cos(theta_s) U_A psi +
/// sin(theta_s) U_B psi, returned unnormalized together with its norm.
pub fn effective_activation_apply(
    initial: &WalkerState,
    spec_a: &PeriodicWalkSpec,
    spec_b: &PeriodicWalkSpec,
    theta_s: f64,
) -> Result<(WalkerState, f64)> {
    if spec_a.steps != spec_b.steps {
        return Err(Error::Spec(format!(
            "branch step counts differ: {} vs {}",
            spec_a.steps, spec_b.steps
        )));
    }
    let psi_a = evolve_definite_wrapped(initial, spec_a)?;
    let psi_b = evolve_definite_wrapped(initial, spec_b)?;
    let combo = linear_combination(
        C64::new(theta_s.cos(), 0.0),
        psi_a.final_state(),
        C64::new(theta_s.sin(), 0.0),
        psi_b.final_state(),
    )?;
    let norm = combo.norm();
    if norm < DESTRUCTIVE_NORM_TOL {
        return Err(Error::DestructiveInterference { norm });
    }
    Ok((combo, norm))
}

/// Per-block order superposition: apply
/// A = cos(theta_s) M1 M2 + sin(theta_s) M2 M1 for n/2 blocks with no
/// intermediate renormalization. Odd trajectory indices hold the
/// mid-block superposition of the two branch first-steps; even indices
/// hold the carried compound state. Snapshots are stored normalized with
/// raw norms recorded.
pub fn switched_step_evolve(
    initial: &WalkerState,
    theta1: f64,
    theta2: f64,
    theta_s: f64,
    n: usize,
) -> Result<Trajectory> {
    switched_step_impl(initial, theta1, theta2, theta_s, n, true)
}

/// Per-block superposition where cyclic wrap-around is accepted.
pub fn switched_step_evolve_wrapped(
    initial: &WalkerState,
    theta1: f64,
    theta2: f64,
    theta_s: f64,
    n: usize,
) -> Result<Trajectory> {
    switched_step_impl(initial, theta1, theta2, theta_s, n, false)
}

fn switched_step_impl(
    initial: &WalkerState,
    theta1: f64,
    theta2: f64,
    theta_s: f64,
    n: usize,
    check_light_cone: bool,
) -> Result<Trajectory> {
    if n % 2 != 0 {
        return Err(Error::Precondition(format!(
            "step count {n} must be even to pair into blocks"
        )));
    }
    let l = initial.lattice_size();
    if check_light_cone && l < 2 * n + 3 {
        return Err(Error::LightCone { l, n });
    }
    let (c1, c2) = (CoinSpec::new(theta1), CoinSpec::new(theta2));
    let (w1, w2) = (
        C64::new(theta_s.cos(), 0.0),
        C64::new(theta_s.sin(), 0.0),
    );
    let mut states = Vec::with_capacity(n + 1);
    let mut norms = Vec::with_capacity(n + 1);
    states.push(initial.normalized()?);
    norms.push(initial.norm());
    let mut carried = initial.clone();
    for _ in 0..n / 2 {
        // branch taking theta_2 first carries weight cos, the swapped
        // order carries weight sin
        let a_mid = walk_step(&carried, &c2);
        let b_mid = walk_step(&carried, &c1);
        let mid = linear_combination(w1, &a_mid, w2, &b_mid)?;
        let mid_norm = mid.norm();
        if mid_norm < DESTRUCTIVE_NORM_TOL {
            return Err(Error::DestructiveInterference { norm: mid_norm });
        }
        states.push(mid.normalized()?);
        norms.push(mid_norm);

        let a_full = walk_step(&a_mid, &c1);
        let b_full = walk_step(&b_mid, &c2);
        let next = linear_combination(w1, &a_full, w2, &b_full)?;
        let next_norm = next.norm();
        if next_norm < DESTRUCTIVE_NORM_TOL {
            return Err(Error::DestructiveInterference { norm: next_norm });
        }
        states.push(next.normalized()?);
        norms.push(next_norm);
        carried = next;
    }
    Ok(Trajectory {
        states,
        norms_before_renormalization: norms,
    })
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for sub in permutations(k - 1) {
        for pos in 0..=sub.len() {
            let mut p = sub.clone();
            p.insert(pos, k - 1);
            out.push(p);
        }
    }
    out
}

/// Equal-weight superposition over every permutation of a k-angle block,
/// each cycled n/k times: (1/sqrt(k!)) sum over orders, returned raw with
/// its norm; a sum of unitaries is generally not norm-preserving.
pub fn full_activation_apply(
    initial: &WalkerState,
    thetas: &[f64],
    n: usize,
) -> Result<(WalkerState, f64)> {
    let k = thetas.len();
    if k == 0 {
        return Err(Error::Spec("empty theta list".into()));
    }
    if k > 5 {
        return Err(Error::Budget(format!(
            "{k}! branch orders exceed the supported period of 5"
        )));
    }
    if n % k != 0 {
        return Err(Error::Spec(format!(
            "step count {n} is not a multiple of period {k}"
        )));
    }
    let perms = permutations(k);
    let scale = C64::new(1.0 / (perms.len() as f64).sqrt(), 0.0);
    let mut acc = WalkerState::zero(initial.lattice_size())?;
    for perm in &perms {
        let mut psi = initial.clone();
        for t in 0..n {
            psi = walk_step(&psi, &CoinSpec::new(thetas[perm[t % k]]));
        }
        acc = linear_combination(C64::new(1.0, 0.0), &acc, scale, &psi)?;
    }
    let norm = acc.norm();
    Ok((acc, norm))
}

fn check_expand_budget(n: usize, l: usize) -> Result<()> {
    if n % 2 != 0 {
        return Err(Error::Precondition(format!(
            "step count {n} must be even to pair into blocks"
        )));
    }
    if n > 12 {
        return Err(Error::Budget(format!(
            "expansion of {n} steps needs 2^{} dense products",
            n / 2
        )));
    }
    if l > 31 {
        return Err(Error::Budget(format!(
            "lattice {l} exceeds the dense expansion cap of 31"
        )));
    }
    Ok(())
}

/// The dense per-block operator cos(theta_s) M1 M2 + sin(theta_s) M2 M1.
pub fn switched_block_operator(
    theta1: f64,
    theta2: f64,
    theta_s: f64,
    l: usize,
) -> Result<DenseOperator> {
    let (c1, c2) = (CoinSpec::new(theta1), CoinSpec::new(theta2));
    let b1 = brute_force_operator(&[c2, c1], l)?;
    let b2 = brute_force_operator(&[c1, c2], l)?;
    b1.scale(C64::new(theta_s.cos(), 0.0))
        .add(&b2.scale(C64::new(theta_s.sin(), 0.0)))
}

/// Expand the n/2-th power of the per-block operator into its 2^(n/2)
/// weighted definite sequences and sum them densely. Requires the
/// genuinely non-commuting regime; the commuting case collapses to the
/// binomial form and is handled separately.
pub fn expand_switched_step(
    theta1: f64,
    theta2: f64,
    theta_s: f64,
    n: usize,
    l: usize,
) -> Result<DenseOperator> {
    let delta = theta2 - theta1;
    if delta.sin().abs() < 1e-12 {
        return Err(Error::WrongRegime { delta });
    }
    check_expand_budget(n, l)?;
    let terms = enumerate_step_sequences(theta1, theta2, theta_s, n)?;
    let mut sum = DenseOperator::zeros(2 * l);
    for term in &terms {
        let op = brute_force_operator(&term.steps, l)?;
        sum = sum.add(&op.scale(term.weight))?;
    }
    Ok(sum)
}

/// Binomial form of the same power when theta_2 = theta_1 + n_pi * pi, the
/// regime where the two block orders commute:
/// sum_j C(m,j) cos^(m-j) sin^j B1^(m-j) B2^j with m = n/2.
pub fn binomial_commuting_expand(
    theta1: f64,
    theta_s: f64,
    n_pi: i64,
    n: usize,
    l: usize,
) -> Result<DenseOperator> {
    check_expand_budget(n, l)?;
    let theta2 = theta1 + n_pi as f64 * std::f64::consts::PI;
    let (c1, c2) = (CoinSpec::new(theta1), CoinSpec::new(theta2));
    let b1 = brute_force_operator(&[c2, c1], l)?;
    let b2 = brute_force_operator(&[c1, c2], l)?;
    let m = n / 2;
    let (wc, ws) = (theta_s.cos(), theta_s.sin());
    let mut sum = DenseOperator::zeros(2 * l);
    let mut binom = 1.0;
    for j in 0..=m {
        // binom tracks C(m, j)
        let weight = binom * wc.powi((m - j) as i32) * ws.powi(j as i32);
        let mut term = DenseOperator::identity(2 * l);
        for _ in 0..m - j {
            term = b1.mul(&term)?;
        }
        for _ in 0..j {
            term = b2.mul(&term)?;
        }
        sum = sum.add(&term.scale(C64::new(weight, 0.0)))?;
        binom = binom * (m - j) as f64 / (j + 1) as f64;
    }
    Ok(sum)
}
