use std::f64::consts::{FRAC_PI_2, PI};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use switchwalk::analysis::symmetric_initial_state;
use switchwalk::commutator::{commutator_general, commutator_single_param};
use switchwalk::dense::DenseOperator;
use switchwalk::engine::{
    binomial_commuting_expand, effective_activation_apply, evolve_definite, expand_switched_step,
    project_switch, switch_extended_evolve, switched_block_operator, SwitchSpec,
};
use switchwalk::sequence::{Order, PeriodicWalkSpec};
use switchwalk::state::CoinSpec;
use switchwalk::C64;

use switchwalk_cli::config::{parse_config, ConfigError, ExperimentConfig, RawConfig};
use switchwalk_cli::figures::{figure_suite, write_figures};
use switchwalk_cli::run::{blp_table, entanglement_table, run_experiment};
use switchwalk_cli::table::{dist_path, write_atomic, ResultTable};
use switchwalk_cli::AppError;

#[derive(Parser)]
#[command(
    name = "switchwalk",
    about = "Discrete-time quantum walks with superposed step orderings",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment from a config file or inline flags
    Simulate(SimulateArgs),
    /// Write the CSV panels of a preset figure family (fig1..fig9 or all)
    Figures {
        /// Preset name
        name: String,
        /// Directory the CSV files go to
        #[arg(long, default_value = "figures")]
        outdir: PathBuf,
    },
    /// Check a numerical identity on a fixed deterministic grid
    Verify {
        #[command(subcommand)]
        check: VerifyCheck,
    },
    /// Compare the backflow measure across the three orders
    Blp(SeriesArgs),
    /// Compare entanglement series across the three orders
    Entanglement(SeriesArgs),
}

#[derive(Args)]
struct SimulateArgs {
    /// Config file of key = value lines; exclusive with the inline flags
    #[arg(long)]
    config: Option<PathBuf>,
    /// Walk mode: forward, reverse, ico, ico-step or full-ico
    #[arg(long)]
    mode: Option<String>,
    /// Comma-separated coin angles, pi fractions allowed
    #[arg(long)]
    thetas: Option<String>,
    /// Number of steps
    #[arg(long)]
    steps: Option<String>,
    /// Switch angle, default pi/4
    #[arg(long)]
    theta_s: Option<String>,
    /// Period; must match the theta count when both are given
    #[arg(long)]
    k: Option<String>,
    /// Initial coin amplitude on the left-moving component
    #[arg(long)]
    alpha: Option<String>,
    /// Initial coin amplitude on the right-moving component
    #[arg(long)]
    beta: Option<String>,
    /// Comma-separated subset of dist, spread, td, blp, entropy, concurrence
    #[arg(long)]
    observables: Option<String>,
    /// Lattice size override, odd, at most the default 2N+3
    #[arg(long)]
    lattice: Option<String>,
    /// Permit a lattice small enough for the wavefront to wrap
    #[arg(long)]
    allow_wrap: bool,
    /// Output CSV path; distributions go to a sibling .dist file
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum VerifyCheck {
    /// Closed form of the step commutator over a pi/12 offset grid
    Lemma {
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Block-power expansions against directly multiplied operators
    Expansion {
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Postselected switch against the activation operator and its limits
    Switch {
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
}

#[derive(Args)]
struct SeriesArgs {
    /// Comma-separated coin angles, pi fractions allowed
    #[arg(long)]
    thetas: String,
    /// Number of steps
    #[arg(long)]
    steps: usize,
    /// Switch angle, default pi/4
    #[arg(long)]
    theta_s: Option<String>,
    /// Output CSV path; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn dispatch(command: Command) -> Result<(), AppError> {
    match command {
        Command::Simulate(args) => simulate(args),
        Command::Figures { name, outdir } => {
            let files = figure_suite(&name)?;
            let written = write_figures(&files, &outdir)?;
            for path in written {
                println!("wrote {}", path.display());
            }
            Ok(())
        }
        Command::Verify { check } => match check {
            VerifyCheck::Lemma { tol } => verify_lemma(tol),
            VerifyCheck::Expansion { tol } => verify_expansion(tol),
            VerifyCheck::Switch { tol } => verify_switch(tol),
        },
        Command::Blp(args) => {
            let (thetas, steps, theta_s) = series_params(&args)?;
            let table = blp_table(&thetas, steps, theta_s)?;
            deliver(&[(args.out, table)])
        }
        Command::Entanglement(args) => {
            let (thetas, steps, theta_s) = series_params(&args)?;
            let table = entanglement_table(&thetas, steps, theta_s)?;
            deliver(&[(args.out, table)])
        }
    }
}

fn config_err(message: String) -> AppError {
    AppError::Config(ConfigError { line: 0, message })
}

fn series_params(args: &SeriesArgs) -> Result<(Vec<f64>, usize, f64), AppError> {
    let mut raw = RawConfig::default();
    raw.set_key("thetas", &args.thetas, 0)?;
    let thetas = raw.thetas.take().map(|(v, _)| v).expect("just set");
    let theta_s = match &args.theta_s {
        Some(s) => {
            raw.set_key("theta_s", s, 0)?;
            raw.theta_s.take().map(|(v, _)| v).expect("just set")
        }
        None => std::f64::consts::FRAC_PI_4,
    };
    Ok((thetas, args.steps, theta_s))
}

fn inline_config(args: &SimulateArgs) -> Result<ExperimentConfig, AppError> {
    let mut raw = RawConfig::default();
    let entries = [
        ("mode", &args.mode),
        ("thetas", &args.thetas),
        ("steps", &args.steps),
        ("theta_s", &args.theta_s),
        ("k", &args.k),
        ("alpha", &args.alpha),
        ("beta", &args.beta),
        ("observables", &args.observables),
        ("lattice", &args.lattice),
    ];
    for (key, value) in entries {
        if let Some(v) = value {
            raw.set_key(key, v, 0)?;
        }
    }
    if args.allow_wrap {
        raw.set_key("allow_wrap", "true", 0)?;
    }
    Ok(raw.build()?)
}

fn simulate(args: SimulateArgs) -> Result<(), AppError> {
    let inline_given = args.mode.is_some()
        || args.thetas.is_some()
        || args.steps.is_some()
        || args.theta_s.is_some()
        || args.k.is_some()
        || args.alpha.is_some()
        || args.beta.is_some()
        || args.observables.is_some()
        || args.lattice.is_some()
        || args.allow_wrap;
    let mut cfg = match (&args.config, inline_given) {
        (Some(path), false) => {
            let text = fs::read_to_string(path)?;
            parse_config(&text)?
        }
        (None, true) => inline_config(&args)?,
        (Some(_), true) => {
            return Err(config_err(
                "--config and inline experiment flags are exclusive".into(),
            ));
        }
        (None, false) => {
            return Err(config_err(
                "pass --config <path> or inline experiment flags".into(),
            ));
        }
    };
    if args.out.is_some() {
        cfg.out = args.out;
    }

    let output = run_experiment(&cfg)?;
    let mut tables: Vec<(Option<PathBuf>, ResultTable)> = vec![];
    match (output.scalar, output.dist) {
        (Some(scalar), Some(dist)) => {
            let dist_out = cfg.out.as_deref().map(dist_path);
            tables.push((cfg.out.clone(), scalar));
            tables.push((dist_out, dist));
        }
        (Some(scalar), None) => tables.push((cfg.out.clone(), scalar)),
        (None, Some(dist)) => tables.push((cfg.out.clone(), dist)),
        (None, None) => unreachable!("validated configs request at least one observable"),
    }
    deliver(&tables)
}

/// Write each table to its path, or print it when no path was given.
fn deliver(tables: &[(Option<PathBuf>, ResultTable)]) -> Result<(), AppError> {
    for (out, table) in tables {
        let csv = table.emit_csv();
        match out {
            Some(path) => {
                if let Some(parent) = path.parent() {
                    if !parent.as_os_str().is_empty() {
                        fs::create_dir_all(parent)?;
                    }
                }
                write_atomic(path, &csv)?;
                println!("wrote {}", path.display());
            }
            None => print!("{csv}"),
        }
    }
    Ok(())
}

fn verify_fail(check: &str, detail: String) -> AppError {
    AppError::Verify(format!("{check}: {detail}"))
}

/// Commutator closed form and its vanishing pattern on the offset grid
/// k*pi/12 for k = 0..=24 at theta_1 = 0.37, L = 11.
fn verify_lemma(tol: f64) -> Result<(), AppError> {
    let l = 11;
    let theta1 = 0.37;
    let mut worst: f64 = 0.0;
    for k in 0..=24 {
        let theta2 = theta1 + k as f64 * PI / 12.0;
        let (computed, predicted) = commutator_single_param(theta1, theta2, l)?;
        let dev = computed.max_abs_diff(&predicted)?;
        let (gc, gp) = commutator_general(&CoinSpec::new(theta1), &CoinSpec::new(theta2), l)?;
        let gdev = gc.max_abs_diff(&gp)?;
        worst = worst.max(dev).max(gdev);
        if dev > tol || gdev > tol {
            return Err(verify_fail(
                "lemma",
                format!("offset {k}pi/12 deviates from the closed form by {:.3e}", dev.max(gdev)),
            ));
        }
        let mag = computed.max_abs();
        let should_vanish = k % 12 == 0;
        if should_vanish && mag > tol {
            return Err(verify_fail(
                "lemma",
                format!("offset {k}pi/12 should commute, magnitude {mag:.3e}"),
            ));
        }
        if !should_vanish && mag < 1e-2 {
            return Err(verify_fail(
                "lemma",
                format!("offset {k}pi/12 should not commute, magnitude {mag:.3e}"),
            ));
        }
    }
    println!("verify lemma: 25 offsets, worst closed-form deviation {worst:.3e}, tol {tol:.0e}");
    Ok(())
}

const EXPANSION_PARAMS: [(f64, f64, f64); 3] = [
    (0.3, 0.7, 0.4),
    (-1.1, 1.2, 1.0),
    (2.0, 0.05, -0.8),
];

/// Enumerated and binomial block-power expansions against direct matrix
/// powers, on fixed parameter triples and n in {2, 4, 6, 8}.
fn verify_expansion(tol: f64) -> Result<(), AppError> {
    let l = 11;
    let mut worst: f64 = 0.0;
    for n in [2usize, 4, 6, 8] {
        for (theta1, delta, theta_s) in EXPANSION_PARAMS {
            let theta2 = theta1 + delta;
            let block = switched_block_operator(theta1, theta2, theta_s, l)?;
            let mut direct = DenseOperator::identity(2 * l);
            for _ in 0..n / 2 {
                direct = block.mul(&direct)?;
            }
            let expanded = expand_switched_step(theta1, theta2, theta_s, n, l)?;
            let d_enum = expanded.max_abs_diff(&direct)?;

            let commuting_block = switched_block_operator(theta1, theta1 + PI, theta_s, l)?;
            let mut commuting_direct = DenseOperator::identity(2 * l);
            for _ in 0..n / 2 {
                commuting_direct = commuting_block.mul(&commuting_direct)?;
            }
            let binom = binomial_commuting_expand(theta1, theta_s, 1, n, l)?;
            let d_binom = binom.max_abs_diff(&commuting_direct)?;

            worst = worst.max(d_enum).max(d_binom);
            if d_enum > tol || d_binom > tol {
                return Err(verify_fail(
                    "expansion",
                    format!(
                        "n={n} theta1={theta1} delta={delta}: enumerated {d_enum:.3e}, binomial {d_binom:.3e}"
                    ),
                ));
            }
        }
    }
    println!("verify expansion: 12 cases, worst deviation {worst:.3e}, tol {tol:.0e}");
    Ok(())
}

const SWITCH_PARAMS: [(f64, f64, f64, usize); 4] = [
    (0.3, 1.1, 0.6, 5),
    (-0.9, 0.4, 1.2, 8),
    (2.2, -1.4, 0.35, 11),
    (0.7, 0.7, 0.9, 14),
];

/// Postselected extended evolution against the two-branch activation
/// operator, plus its exact definite-order limits.
fn verify_switch(tol: f64) -> Result<(), AppError> {
    let mut worst: f64 = 0.0;
    for (theta1, theta2, theta_s, n) in SWITCH_PARAMS {
        let l = 2 * n + 3;
        let init = symmetric_initial_state(l)?;
        let fwd = PeriodicWalkSpec::new(vec![theta1, theta2], n, Order::Forward);
        let rev = PeriodicWalkSpec::new(vec![theta1, theta2], n, Order::Reverse);

        let ext = switch_extended_evolve(&init, &fwd, &rev, &SwitchSpec::new(theta_s))?;
        let plus = [
            C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
            C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        ];
        let (projected, _) = project_switch(&ext, &plus)?;
        let (raw, _) = effective_activation_apply(&init, &fwd, &rev, theta_s)?;
        let infidelity = 1.0 - projected.fidelity(&raw.normalized()?)?;
        worst = worst.max(infidelity);
        if infidelity > tol {
            return Err(verify_fail(
                "switch",
                format!("n={n} theta_s={theta_s}: infidelity {infidelity:.3e}"),
            ));
        }

        let fwd_final = evolve_definite(&init, &fwd)?.final_state().clone();
        let rev_final = evolve_definite(&init, &rev)?.final_state().clone();
        let (at_zero, _) = effective_activation_apply(&init, &fwd, &rev, 0.0)?;
        let (at_right_angle, _) = effective_activation_apply(&init, &fwd, &rev, FRAC_PI_2)?;
        let d0 = at_zero.max_abs_diff(&fwd_final)?;
        let d1 = at_right_angle.normalized()?.max_abs_diff(&rev_final)?;
        worst = worst.max(d0).max(d1);
        if d0 > tol || d1 > tol {
            return Err(verify_fail(
                "switch",
                format!("n={n}: forward-limit diff {d0:.3e}, reverse-limit diff {d1:.3e}"),
            ));
        }
    }
    println!("verify switch: 4 cases plus definite limits, worst deviation {worst:.3e}, tol {tol:.0e}");
    Ok(())
}
