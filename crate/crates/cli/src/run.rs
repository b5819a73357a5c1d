//! Deterministic experiment execution: one scalar series table plus an
//! optional long-form distribution table per run.

use switchwalk::analysis::{
    blp_triplet, concurrence_series, distinguishability_series, entropy_series,
    spread_series, trajectory_for, Mode, SampledTrajectory, WalkPlan,
};
use switchwalk::observables::blp_measure;
use switchwalk::state::{make_localized_state, probability_distribution};

use crate::config::{echo_entries, ExperimentConfig, ModeKey, Observable};
use crate::table::{Column, ResultTable};
use crate::AppError;

pub struct RunOutput {
    pub scalar: Option<ResultTable>,
    pub dist: Option<ResultTable>,
}

pub fn plan_for(cfg: &ExperimentConfig) -> WalkPlan {
    let mut plan = WalkPlan::new(cfg.mode.engine_mode(), cfg.thetas.clone(), cfg.steps);
    plan.theta_s = cfg.theta_s;
    plan.lattice = cfg.lattice;
    plan.allow_wrap = cfg.allow_wrap;
    plan
}

/// Conventions that fix the numbers in every emitted table.
pub(crate) fn convention_info(table: &mut ResultTable) {
    table.push_info(
        "engine",
        format!("switchwalk {}", env!("CARGO_PKG_VERSION")),
    );
    table.push_info("postselect", "(1/sqrt2, 1/sqrt2)");
    table.push_info("entropy_base", "2");
    table.push_info("blp_pair", "(1/sqrt2, i/sqrt2) and (1/sqrt2, -i/sqrt2)");
}

fn running_backflow(d: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(d.len());
    let mut acc = 0.0;
    for (i, v) in d.iter().enumerate() {
        if i > 0 && v > &d[i - 1] {
            acc += v - d[i - 1];
        }
        out.push(acc);
    }
    out
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<RunOutput, AppError> {
    let plan = plan_for(cfg);
    let init = make_localized_state(cfg.alpha, cfg.beta, 0, cfg.lattice)?;
    let traj: SampledTrajectory = trajectory_for(&plan, &init)?;
    let ts: Vec<i64> = traj.ts.iter().map(|t| *t as i64).collect();

    let needs_pair = cfg
        .observables
        .iter()
        .any(|o| matches!(o, Observable::TraceDistance | Observable::Blp));
    let d_series = if needs_pair {
        Some(distinguishability_series(&plan)?)
    } else {
        None
    };

    let scalar_obs: Vec<Observable> = cfg
        .observables
        .iter()
        .copied()
        .filter(|o| *o != Observable::Dist)
        .collect();

    let scalar = if scalar_obs.is_empty() {
        None
    } else {
        let mut table = ResultTable::new("series");
        table.config_echo = echo_entries(cfg);
        convention_info(&mut table);
        table.columns.push(Column::int("t", ts.clone()));
        for obs in &scalar_obs {
            match obs {
                Observable::Spread => {
                    table.columns.push(Column::float("sigma", spread_series(&traj)?));
                }
                Observable::TraceDistance => {
                    let d = d_series.as_ref().expect("pair series computed");
                    table.columns.push(Column::float("d", d.clone()));
                }
                Observable::Blp => {
                    let d = d_series.as_ref().expect("pair series computed");
                    let result = blp_measure(d);
                    table.columns.push(Column::float("blp", running_backflow(d)));
                    table.push_info("blp", format!("{}", result.value));
                    let intervals: Vec<String> = result
                        .revival_intervals
                        .iter()
                        .map(|(a, b)| format!("({}, {})", traj.ts[*a], traj.ts[*b]))
                        .collect();
                    table.push_info("blp_intervals", intervals.join(" "));
                }
                Observable::Entropy => {
                    table
                        .columns
                        .push(Column::float("entropy", entropy_series(&traj)?));
                }
                Observable::Concurrence => {
                    table
                        .columns
                        .push(Column::float("concurrence", concurrence_series(&traj)?));
                }
                Observable::Dist => unreachable!("filtered above"),
            }
        }
        Some(table)
    };

    let dist = if cfg.observables.contains(&Observable::Dist) {
        let mut t_col = vec![];
        let mut x_col = vec![];
        let mut p_col = vec![];
        for (i, state) in traj.states.iter().enumerate() {
            for (x, p) in probability_distribution(state) {
                t_col.push(traj.ts[i] as i64);
                x_col.push(x);
                p_col.push(p);
            }
        }
        let mut table = ResultTable::new("distribution");
        table.config_echo = echo_entries(cfg);
        convention_info(&mut table);
        table.columns = vec![
            Column::int("t", t_col),
            Column::int("x", x_col),
            Column::float("probability", p_col),
        ];
        Some(table)
    } else {
        None
    };

    Ok(RunOutput { scalar, dist })
}

fn pseudo_config(mode: ModeKey, thetas: &[f64], steps: usize, theta_s: f64, observables: Vec<Observable>) -> ExperimentConfig {
    let h = switchwalk::C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    ExperimentConfig {
        mode,
        thetas: thetas.to_vec(),
        theta_s,
        steps,
        alpha: h,
        beta: h,
        observables,
        lattice: switchwalk::analysis::default_lattice(steps),
        allow_wrap: false,
        out: None,
    }
}

/// One-row comparison of the backflow measure across the three orders.
pub fn blp_table(thetas: &[f64], steps: usize, theta_s: f64) -> Result<ResultTable, AppError> {
    let (fwd, rev, ico) = blp_triplet(thetas, steps, theta_s)?;
    let mut table = ResultTable::new("blp");
    table.config_echo = echo_entries(&pseudo_config(
        ModeKey::Ico,
        thetas,
        steps,
        theta_s,
        vec![Observable::Blp],
    ));
    convention_info(&mut table);
    table.columns = vec![
        Column::float("blp_forward", vec![fwd]),
        Column::float("blp_reverse", vec![rev]),
        Column::float("blp_ico", vec![ico]),
    ];
    Ok(table)
}

/// Entropy and concurrence series for the three orders side by side.
pub fn entanglement_table(
    thetas: &[f64],
    steps: usize,
    theta_s: f64,
) -> Result<ResultTable, AppError> {
    let cfg = pseudo_config(
        ModeKey::Ico,
        thetas,
        steps,
        theta_s,
        vec![Observable::Entropy, Observable::Concurrence],
    );
    let init = make_localized_state(cfg.alpha, cfg.beta, 0, cfg.lattice)?;
    let mut plan = plan_for(&cfg);

    let mut series = vec![];
    for mode in [Mode::Forward, Mode::Reverse, Mode::Ico] {
        plan.mode = mode;
        let traj = trajectory_for(&plan, &init)?;
        series.push((entropy_series(&traj)?, concurrence_series(&traj)?));
    }

    let steps_col: Vec<i64> = (0..=steps as i64).collect();
    let mut table = ResultTable::new("entanglement");
    table.config_echo = echo_entries(&cfg);
    convention_info(&mut table);
    table.columns = vec![
        Column::int("t", steps_col),
        Column::float("s_forward", series[0].0.clone()),
        Column::float("s_reverse", series[1].0.clone()),
        Column::float("s_ico", series[2].0.clone()),
        Column::float("c_forward", series[0].1.clone()),
        Column::float("c_reverse", series[1].1.clone()),
        Column::float("c_ico", series[2].1.clone()),
    ];
    Ok(table)
}
