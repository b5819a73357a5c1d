//! Experiment-level drivers: one plan type covering every execution model,
//! sampled trajectories, observable series, and the period sweep.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use crate::engine::{
    evolve_definite, evolve_definite_wrapped, full_activation_apply, ico_trajectory,
    ico_trajectory_wrapped, switched_step_evolve, switched_step_evolve_wrapped, Trajectory,
};
use crate::observables::{blp_measure, spread, trace_distance, BlpResult};
use crate::par::par_map;
use crate::sequence::{Order, PeriodicWalkSpec};
use crate::state::{
    make_localized_state, partial_trace_position, probability_distribution, WalkerState,
};
use crate::{C64, Error, Result};

/// Execution model selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Forward,
    Reverse,
    Ico,
    IcoStep,
    FullIco,
}

/// Everything needed to run one walk.
#[derive(Clone, Debug)]
pub struct WalkPlan {
    pub mode: Mode,
    pub thetas: Vec<f64>,
    pub steps: usize,
    pub theta_s: f64,
    pub lattice: usize,
    pub allow_wrap: bool,
}

/// Smallest odd lattice on which an N-step light cone cannot wrap.
pub fn default_lattice(steps: usize) -> usize {
    2 * steps + 3
}

impl WalkPlan {
    pub fn new(mode: Mode, thetas: Vec<f64>, steps: usize) -> Self {
        WalkPlan {
            mode,
            thetas,
            steps,
            theta_s: FRAC_PI_4,
            lattice: default_lattice(steps),
            allow_wrap: false,
        }
    }
}

/// Coin amplitudes of the symmetric start. For this coin convention the
/// equal-amplitude pair splits probability evenly at every angle; the
/// quadrature pair familiar from real-valued coins does not.
pub fn symmetric_initial_amplitudes() -> [C64; 2] {
    [
        C64::new(FRAC_1_SQRT_2, 0.0),
        C64::new(FRAC_1_SQRT_2, 0.0),
    ]
}

/// Symmetric start localized at the origin.
pub fn symmetric_initial_state(l: usize) -> Result<WalkerState> {
    let [a, b] = symmetric_initial_amplitudes();
    make_localized_state(a, b, 0, l)
}

/// Orthogonal coin pair tracked by the distinguishability series. The coin
/// used here is the phase-rotated image of a real-valued coin, and this
/// pair is the image of the real (1, 1)/sqrt(2), (1, -1)/sqrt(2) pair under
/// the same rotation, so the walk treats the two states as exact partners:
/// maximally distinguishable at t = 0 with symmetric revival structure.
pub fn blp_state_pair() -> ([C64; 2], [C64; 2]) {
    (
        [
            C64::new(FRAC_1_SQRT_2, 0.0),
            C64::new(0.0, FRAC_1_SQRT_2),
        ],
        [
            C64::new(FRAC_1_SQRT_2, 0.0),
            C64::new(0.0, -FRAC_1_SQRT_2),
        ],
    )
}

/// Trajectory sampled at the step indices where the execution model has a
/// well-defined state: every step for the dense modes, every k-th step for
/// the all-orders superposition.
#[derive(Clone, Debug)]
pub struct SampledTrajectory {
    pub ts: Vec<usize>,
    pub states: Vec<WalkerState>,
    pub norms: Vec<f64>,
}

impl SampledTrajectory {
    fn from_trajectory(traj: Trajectory) -> Self {
        SampledTrajectory {
            ts: (0..traj.states.len()).collect(),
            norms: traj.norms_before_renormalization,
            states: traj.states,
        }
    }

    pub fn final_state(&self) -> &WalkerState {
        self.states.last().expect("sampled trajectory is nonempty")
    }
}

fn definite_spec(plan: &WalkPlan, order: Order) -> PeriodicWalkSpec {
    PeriodicWalkSpec::new(plan.thetas.clone(), plan.steps, order)
}

/// Run the plan from the given initial state.
pub fn trajectory_for(plan: &WalkPlan, initial: &WalkerState) -> Result<SampledTrajectory> {
    match plan.mode {
        Mode::Forward | Mode::Reverse => {
            let order = if plan.mode == Mode::Forward {
                Order::Forward
            } else {
                Order::Reverse
            };
            let spec = definite_spec(plan, order);
            let traj = if plan.allow_wrap {
                evolve_definite_wrapped(initial, &spec)?
            } else {
                evolve_definite(initial, &spec)?
            };
            Ok(SampledTrajectory::from_trajectory(traj))
        }
        Mode::Ico => {
            let spec = definite_spec(plan, Order::Forward);
            let traj = if plan.allow_wrap {
                ico_trajectory_wrapped(initial, &spec, plan.theta_s)?
            } else {
                ico_trajectory(initial, &spec, plan.theta_s)?
            };
            Ok(SampledTrajectory::from_trajectory(traj))
        }
        Mode::IcoStep => {
            if plan.thetas.len() != 2 {
                return Err(Error::Spec(format!(
                    "per-block switching needs exactly 2 angles, got {}",
                    plan.thetas.len()
                )));
            }
            let (t1, t2) = (plan.thetas[0], plan.thetas[1]);
            let traj = if plan.allow_wrap {
                switched_step_evolve_wrapped(initial, t1, t2, plan.theta_s, plan.steps)?
            } else {
                switched_step_evolve(initial, t1, t2, plan.theta_s, plan.steps)?
            };
            Ok(SampledTrajectory::from_trajectory(traj))
        }
        Mode::FullIco => {
            let k = plan.thetas.len();
            let l = initial.lattice_size();
            if !plan.allow_wrap && l < 2 * plan.steps + 3 {
                return Err(Error::LightCone { l, n: plan.steps });
            }
            let mut ts = Vec::new();
            let mut states = Vec::new();
            let mut norms = Vec::new();
            let mut t = 0;
            while t <= plan.steps {
                let (raw, norm) = full_activation_apply(initial, &plan.thetas, t)?;
                ts.push(t);
                states.push(raw.normalized()?);
                norms.push(norm);
                t += k;
            }
            Ok(SampledTrajectory { ts, states, norms })
        }
    }
}

/// Position spread at every sampled step.
pub fn spread_series(traj: &SampledTrajectory) -> Result<Vec<f64>> {
    traj.states
        .iter()
        .map(|s| spread(&probability_distribution(s)))
        .collect()
}

/// Coin entropy at every sampled step.
pub fn entropy_series(traj: &SampledTrajectory) -> Result<Vec<f64>> {
    traj.states
        .iter()
        .map(|s| crate::observables::entanglement_entropy(&partial_trace_position(s)?))
        .collect()
}

/// Coin mixedness-based entanglement at every sampled step.
pub fn concurrence_series(traj: &SampledTrajectory) -> Result<Vec<f64>> {
    traj.states
        .iter()
        .map(|s| crate::observables::concurrence(&partial_trace_position(s)?))
        .collect()
}

/// Trace distance between the evolutions of the standard coin pair at
/// every sampled step of the plan.
pub fn distinguishability_series(plan: &WalkPlan) -> Result<Vec<f64>> {
    let (pa, pb) = blp_state_pair();
    let init_a = make_localized_state(pa[0], pa[1], 0, plan.lattice)?;
    let init_b = make_localized_state(pb[0], pb[1], 0, plan.lattice)?;
    let traj_a = trajectory_for(plan, &init_a)?;
    let traj_b = trajectory_for(plan, &init_b)?;
    traj_a
        .states
        .iter()
        .zip(traj_b.states.iter())
        .map(|(a, b)| {
            trace_distance(&partial_trace_position(a)?, &partial_trace_position(b)?)
        })
        .collect()
}

/// Backflow measure of the plan's distinguishability series.
pub fn blp_for_plan(plan: &WalkPlan) -> Result<BlpResult> {
    Ok(blp_measure(&distinguishability_series(plan)?))
}

/// Backflow values for forward, reverse, and superposed order over the
/// same angles.
pub fn blp_triplet(thetas: &[f64], steps: usize, theta_s: f64) -> Result<(f64, f64, f64)> {
    let mut plan = WalkPlan::new(Mode::Forward, thetas.to_vec(), steps);
    plan.theta_s = theta_s;
    let fwd = blp_for_plan(&plan)?.value;
    plan.mode = Mode::Reverse;
    let rev = blp_for_plan(&plan)?.value;
    plan.mode = Mode::Ico;
    let ico = blp_for_plan(&plan)?.value;
    Ok((fwd, rev, ico))
}

/// Angle list for one point of the period sweep: theta_1 as given, every
/// later angle pi/4.
pub fn period_sweep_thetas(theta1: f64, k: usize) -> Vec<f64> {
    let mut thetas = vec![FRAC_PI_4; k];
    thetas[0] = theta1;
    thetas
}

/// One row of the period sweep.
#[derive(Clone, Copy, Debug)]
pub struct SweepPoint {
    pub k: usize,
    pub blp_forward: f64,
    pub blp_reverse: f64,
    pub blp_ico: f64,
}

/// Backflow triplets for periods 2..=k_max, fanned out over workers.
pub fn period_sweep(
    theta1: f64,
    k_max: usize,
    steps: usize,
    theta_s: f64,
) -> Result<Vec<SweepPoint>> {
    let ks: Vec<usize> = (2..=k_max).collect();
    par_map(ks, |k| {
        let thetas = period_sweep_thetas(theta1, k);
        blp_triplet(&thetas, steps, theta_s).map(|(f, r, i)| SweepPoint {
            k,
            blp_forward: f,
            blp_reverse: r,
            blp_ico: i,
        })
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_6;

    #[test]
    fn plan_modes_agree_with_engines_at_reduction_points() {
        let mut plan = WalkPlan::new(Mode::Ico, vec![FRAC_PI_6, FRAC_PI_4], 10);
        plan.theta_s = 0.0;
        let init = symmetric_initial_state(plan.lattice).unwrap();
        let ico = trajectory_for(&plan, &init).unwrap();
        plan.mode = Mode::Forward;
        let fwd = trajectory_for(&plan, &init).unwrap();
        for t in 0..=10 {
            assert!(ico.states[t].max_abs_diff(&fwd.states[t]).unwrap() < 1e-13);
        }
    }

    #[test]
    fn sampled_indices_follow_the_mode() {
        let plan = WalkPlan::new(Mode::FullIco, vec![0.3, 0.5, 0.7], 9);
        let init = symmetric_initial_state(plan.lattice).unwrap();
        let traj = trajectory_for(&plan, &init).unwrap();
        assert_eq!(traj.ts, vec![0, 3, 6, 9]);
        let dense = WalkPlan::new(Mode::Forward, vec![0.3], 4);
        let init = symmetric_initial_state(dense.lattice).unwrap();
        let traj = trajectory_for(&dense, &init).unwrap();
        assert_eq!(traj.ts, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn distinguishability_starts_at_one() {
        let plan = WalkPlan::new(Mode::Forward, vec![FRAC_PI_4, FRAC_PI_6], 6);
        let series = distinguishability_series(&plan).unwrap();
        assert_eq!(series.len(), 7);
        assert!((series[0] - 1.0).abs() < 1e-12);
        for d in &series {
            assert!(*d >= -1e-12 && *d <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn spread_of_symmetric_single_step_is_one() {
        let plan = WalkPlan::new(Mode::Forward, vec![FRAC_PI_4], 1);
        let init = symmetric_initial_state(plan.lattice).unwrap();
        let traj = trajectory_for(&plan, &init).unwrap();
        let sigma = spread_series(&traj).unwrap();
        assert!(sigma[0].abs() < 1e-12);
        assert!((sigma[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sweep_produces_one_point_per_period() {
        let points = period_sweep(FRAC_PI_6, 4, 10, FRAC_PI_4).unwrap();
        assert_eq!(points.len(), 3);
        assert_eq!(points[0].k, 2);
        assert_eq!(points[2].k, 4);
        for p in &points {
            assert!(p.blp_forward >= 0.0 && p.blp_reverse >= 0.0 && p.blp_ico >= 0.0);
        }
    }
}
