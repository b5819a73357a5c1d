//! Preset experiment families, one CSV per panel, reproducing the
//! reference parameter sets at desk scale.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};
use std::fs;
use std::path::{Path, PathBuf};

use switchwalk::analysis::{
    concurrence_series, distinguishability_series, entropy_series, period_sweep, spread_series,
    symmetric_initial_state, trajectory_for, Mode, SampledTrajectory, WalkPlan,
};
use switchwalk::observables::blp_measure;
use switchwalk::state::probability_distribution;

use crate::config::{echo_entries, ExperimentConfig, ModeKey, Observable};
use crate::run::{convention_info, plan_for};
use crate::table::{write_atomic, Column, ResultTable};
use crate::AppError;

const FIVE_PI_12: f64 = 5.0 * PI / 12.0;

fn figure_config(
    mode: ModeKey,
    thetas: &[f64],
    steps: usize,
    observables: Vec<Observable>,
) -> ExperimentConfig {
    let h = switchwalk::C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    ExperimentConfig {
        mode,
        thetas: thetas.to_vec(),
        theta_s: FRAC_PI_4,
        steps,
        alpha: h,
        beta: h,
        observables,
        lattice: switchwalk::analysis::default_lattice(steps),
        allow_wrap: false,
        out: None,
    }
}

fn run_mode(cfg: &ExperimentConfig, mode: Mode) -> Result<SampledTrajectory, AppError> {
    let mut plan: WalkPlan = plan_for(cfg);
    plan.mode = mode;
    let init = symmetric_initial_state(cfg.lattice)?;
    Ok(trajectory_for(&plan, &init)?)
}

fn base_table(name: &str, cfg: &ExperimentConfig) -> ResultTable {
    let mut table = ResultTable::new(name);
    table.config_echo = echo_entries(cfg);
    convention_info(&mut table);
    table
}

fn t_column(steps: usize) -> Column {
    Column::int("t", (0..=steps as i64).collect())
}

/// Per-block switching against the definite orders, with the early-window
/// advantage panel.
fn step_figure(tag: &str, theta1: f64, theta2: f64) -> Result<Vec<(String, ResultTable)>, AppError> {
    let steps = 100;
    let cfg = figure_config(ModeKey::IcoStep, &[theta1, theta2], steps, vec![Observable::Spread]);
    let s_fwd = spread_series(&run_mode(&cfg, Mode::Forward)?)?;
    let s_rev = spread_series(&run_mode(&cfg, Mode::Reverse)?)?;
    let s_ico = spread_series(&run_mode(&cfg, Mode::IcoStep)?)?;

    let mut a = base_table(&format!("{tag}a"), &cfg);
    a.columns = vec![
        t_column(steps),
        Column::float("sigma_forward", s_fwd.clone()),
        Column::float("sigma_reverse", s_rev),
        Column::float("sigma_step_ico", s_ico.clone()),
    ];

    let mut b = base_table(&format!("{tag}b"), &cfg);
    b.push_info("dsigma", "sigma_step_ico minus sigma_forward");
    let d: Vec<f64> = s_ico.iter().zip(&s_fwd).map(|(i, f)| i - f).collect();
    b.columns = vec![t_column(steps), Column::float("dsigma", d)];

    Ok(vec![
        (format!("{tag}a.csv"), a),
        (format!("{tag}b.csv"), b),
    ])
}

fn fig1() -> Result<Vec<(String, ResultTable)>, AppError> {
    step_figure("fig1", FRAC_PI_6, FRAC_PI_4)
}

fn fig2() -> Result<Vec<(String, ResultTable)>, AppError> {
    step_figure("fig2", FRAC_PI_4, FRAC_PI_6)
}

/// Final-step position distributions of the three orders side by side.
fn fig3() -> Result<Vec<(String, ResultTable)>, AppError> {
    let steps = 100;
    let cfg = figure_config(ModeKey::Ico, &[FRAC_PI_4, FRAC_PI_6], steps, vec![Observable::Dist]);
    let mut dists = vec![];
    for mode in [Mode::Forward, Mode::Reverse, Mode::Ico] {
        let traj = run_mode(&cfg, mode)?;
        dists.push(probability_distribution(traj.final_state()));
    }
    let xs: Vec<i64> = dists[0].iter().map(|(x, _)| *x).collect();
    let mut table = base_table("fig3", &cfg);
    table.push_info("t", steps.to_string());
    table.columns = vec![
        Column::int("x", xs),
        Column::float("p_forward", dists[0].iter().map(|(_, p)| *p).collect()),
        Column::float("p_reverse", dists[1].iter().map(|(_, p)| *p).collect()),
        Column::float("p_ico", dists[2].iter().map(|(_, p)| *p).collect()),
    ];
    Ok(vec![("fig3.csv".into(), table)])
}

/// Spread of the activated two-period walk against both definite orders.
fn fig4() -> Result<Vec<(String, ResultTable)>, AppError> {
    let steps = 100;
    let cfg = figure_config(ModeKey::Ico, &[FRAC_PI_4, FRAC_PI_6], steps, vec![Observable::Spread]);
    let s_fwd = spread_series(&run_mode(&cfg, Mode::Forward)?)?;
    let s_rev = spread_series(&run_mode(&cfg, Mode::Reverse)?)?;
    let s_ico = spread_series(&run_mode(&cfg, Mode::Ico)?)?;

    let mut a = base_table("fig4a", &cfg);
    a.columns = vec![
        t_column(steps),
        Column::float("sigma_forward", s_fwd.clone()),
        Column::float("sigma_reverse", s_rev.clone()),
        Column::float("sigma_ico", s_ico.clone()),
    ];

    let mut b = base_table("fig4b", &cfg);
    b.push_info("dsigma_forward", "sigma_ico minus sigma_forward");
    b.push_info("dsigma_reverse", "sigma_ico minus sigma_reverse");
    b.columns = vec![
        t_column(steps),
        Column::float(
            "dsigma_forward",
            s_ico.iter().zip(&s_fwd).map(|(i, f)| i - f).collect(),
        ),
        Column::float(
            "dsigma_reverse",
            s_ico.iter().zip(&s_rev).map(|(i, r)| i - r).collect(),
        ),
    ];
    Ok(vec![("fig4a.csv".into(), a), ("fig4b.csv".into(), b)])
}

/// One three-period execution order against its activation.
fn three_period_spread(
    tag_spread: &str,
    tag_diff: &str,
    thetas: &[f64],
) -> Result<Vec<(String, ResultTable)>, AppError> {
    let steps = 100;
    let cfg = figure_config(ModeKey::Ico, thetas, steps, vec![Observable::Spread]);
    let s_def = spread_series(&run_mode(&cfg, Mode::Forward)?)?;
    let s_ico = spread_series(&run_mode(&cfg, Mode::Ico)?)?;

    let mut a = base_table(tag_spread, &cfg);
    a.columns = vec![
        t_column(steps),
        Column::float("sigma_definite", s_def.clone()),
        Column::float("sigma_ico", s_ico.clone()),
    ];
    let mut b = base_table(tag_diff, &cfg);
    b.push_info("dsigma", "sigma_ico minus sigma_definite");
    b.columns = vec![
        t_column(steps),
        Column::float(
            "dsigma",
            s_ico.iter().zip(&s_def).map(|(i, d)| i - d).collect(),
        ),
    ];
    Ok(vec![
        (format!("{tag_spread}.csv"), a),
        (format!("{tag_diff}.csv"), b),
    ])
}

fn fig5() -> Result<Vec<(String, ResultTable)>, AppError> {
    let asc = [FRAC_PI_6, FRAC_PI_4, FIVE_PI_12];
    let desc = [FIVE_PI_12, FRAC_PI_4, FRAC_PI_6];
    let mut files = three_period_spread("fig5a", "fig5b", &asc)?;
    files.extend(three_period_spread("fig5c", "fig5d", &desc)?);
    Ok(files)
}

/// Trace-distance series of the standard coin pair for all three orders,
/// with the backflow totals in the metadata.
fn fig6() -> Result<Vec<(String, ResultTable)>, AppError> {
    let steps = 50;
    let cfg = figure_config(
        ModeKey::Ico,
        &[FRAC_PI_4, FRAC_PI_6],
        steps,
        vec![Observable::TraceDistance, Observable::Blp],
    );
    let mut series = vec![];
    for mode in [Mode::Forward, Mode::Reverse, Mode::Ico] {
        let mut plan = plan_for(&cfg);
        plan.mode = mode;
        series.push(distinguishability_series(&plan)?);
    }
    let mut table = base_table("fig6", &cfg);
    table.push_info(
        "parameter_note",
        "angle pair recorded in the echo above; the reference leaves it ambiguous",
    );
    for (name, d) in ["forward", "reverse", "ico"].iter().zip(&series) {
        table.push_info(&format!("blp_{name}"), format!("{}", blp_measure(d).value));
    }
    table.columns = vec![
        t_column(steps),
        Column::float("d_forward", series[0].clone()),
        Column::float("d_reverse", series[1].clone()),
        Column::float("d_ico", series[2].clone()),
    ];
    Ok(vec![("fig6.csv".into(), table)])
}

/// Entanglement of the two-period walk: concurrence panel then entropy
/// panel, three orders each.
fn fig7() -> Result<Vec<(String, ResultTable)>, AppError> {
    let steps = 100;
    let cfg = figure_config(
        ModeKey::Ico,
        &[FRAC_PI_4, FRAC_PI_3],
        steps,
        vec![Observable::Entropy, Observable::Concurrence],
    );
    let mut ent = vec![];
    let mut con = vec![];
    for mode in [Mode::Forward, Mode::Reverse, Mode::Ico] {
        let traj = run_mode(&cfg, mode)?;
        ent.push(entropy_series(&traj)?);
        con.push(concurrence_series(&traj)?);
    }
    let mut a = base_table("fig7a", &cfg);
    a.columns = vec![
        t_column(steps),
        Column::float("c_forward", con[0].clone()),
        Column::float("c_reverse", con[1].clone()),
        Column::float("c_ico", con[2].clone()),
    ];
    let mut b = base_table("fig7b", &cfg);
    b.columns = vec![
        t_column(steps),
        Column::float("s_forward", ent[0].clone()),
        Column::float("s_reverse", ent[1].clone()),
        Column::float("s_ico", ent[2].clone()),
    ];
    Ok(vec![("fig7a.csv".into(), a), ("fig7b.csv".into(), b)])
}

/// Backflow against the period count, raw and panel-max normalized.
fn fig8() -> Result<Vec<(String, ResultTable)>, AppError> {
    let steps = 50;
    let mut files = vec![];
    for (tag, theta1) in [("fig8a", FRAC_PI_6), ("fig8b", FIVE_PI_12)] {
        let sweep = period_sweep(theta1, 25, steps, FRAC_PI_4)?;
        let top = sweep
            .iter()
            .flat_map(|p| [p.blp_forward, p.blp_reverse, p.blp_ico])
            .fold(0.0f64, f64::max);

        let k_max_thetas = switchwalk::analysis::period_sweep_thetas(theta1, 25);
        let cfg = figure_config(ModeKey::Ico, &k_max_thetas, steps, vec![Observable::Blp]);
        let mut table = base_table(tag, &cfg);
        table.push_info("sweep", "k = 2..=25; the echoed config is the k = 25 point");
        table.push_info(
            "angles",
            "theta_1 as echoed, every later angle pi/4, truncated to each k",
        );
        table.push_info(
            "reverse_convention",
            "reverse order is the temporal mirror of the forward angle sequence",
        );
        table.push_info(
            "normalization",
            "nblp columns divide by the panel-wide maximum raw value",
        );
        table.columns = vec![
            Column::int("k", sweep.iter().map(|p| p.k as i64).collect()),
            Column::float("blp_forward", sweep.iter().map(|p| p.blp_forward).collect()),
            Column::float("blp_reverse", sweep.iter().map(|p| p.blp_reverse).collect()),
            Column::float("blp_ico", sweep.iter().map(|p| p.blp_ico).collect()),
            Column::float(
                "nblp_forward",
                sweep.iter().map(|p| p.blp_forward / top).collect(),
            ),
            Column::float(
                "nblp_reverse",
                sweep.iter().map(|p| p.blp_reverse / top).collect(),
            ),
            Column::float("nblp_ico", sweep.iter().map(|p| p.blp_ico / top).collect()),
        ];
        files.push((format!("{tag}.csv"), table));
    }
    Ok(files)
}

/// Three-period entanglement at both extreme orderings.
fn fig9() -> Result<Vec<(String, ResultTable)>, AppError> {
    let steps = 100;
    let asc = [FRAC_PI_4, FRAC_PI_3, FIVE_PI_12];
    let desc = [FIVE_PI_12, FRAC_PI_3, FRAC_PI_4];
    let mut files = vec![];
    for (etag, ctag, thetas) in [("fig9a", "fig9c", asc), ("fig9b", "fig9d", desc)] {
        let cfg = figure_config(
            ModeKey::Ico,
            &thetas,
            steps,
            vec![Observable::Entropy, Observable::Concurrence],
        );
        let def = run_mode(&cfg, Mode::Forward)?;
        let ico = run_mode(&cfg, Mode::Ico)?;
        let mut e = base_table(etag, &cfg);
        e.columns = vec![
            t_column(steps),
            Column::float("s_definite", entropy_series(&def)?),
            Column::float("s_ico", entropy_series(&ico)?),
        ];
        let mut c = base_table(ctag, &cfg);
        c.columns = vec![
            t_column(steps),
            Column::float("c_definite", concurrence_series(&def)?),
            Column::float("c_ico", concurrence_series(&ico)?),
        ];
        files.push((format!("{etag}.csv"), e));
        files.push((format!("{ctag}.csv"), c));
    }
    Ok(files)
}

pub const FIGURE_NAMES: [&str; 9] = [
    "fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9",
];

fn figure_by_name(name: &str) -> Result<Vec<(String, ResultTable)>, AppError> {
    match name {
        "fig1" => fig1(),
        "fig2" => fig2(),
        "fig3" => fig3(),
        "fig4" => fig4(),
        "fig5" => fig5(),
        "fig6" => fig6(),
        "fig7" => fig7(),
        "fig8" => fig8(),
        "fig9" => fig9(),
        other => Err(AppError::Config(crate::config::ConfigError {
            line: 0,
            message: format!("unknown figure {other:?}, expected fig1..fig9 or all"),
        })),
    }
}

/// Build the tables for one preset, or all of them fanned out over
/// workers.
pub fn figure_suite(name: &str) -> Result<Vec<(String, ResultTable)>, AppError> {
    if name == "all" {
        let results = switchwalk::par::par_map(FIGURE_NAMES.to_vec(), figure_by_name);
        let mut files = vec![];
        for r in results {
            files.extend(r?);
        }
        Ok(files)
    } else {
        figure_by_name(name)
    }
}

/// Write each table under the output directory, atomically per file.
pub fn write_figures(
    files: &[(String, ResultTable)],
    outdir: &Path,
) -> Result<Vec<PathBuf>, AppError> {
    fs::create_dir_all(outdir)?;
    let mut written = vec![];
    for (name, table) in files {
        let path = outdir.join(name);
        write_atomic(&path, &table.emit_csv())?;
        written.push(path);
    }
    Ok(written)
}
