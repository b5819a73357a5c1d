//! Property tests for the structural invariants: unitarity, light-cone
//! support, oracle equivalence, switch reductions, expansion identities,
//! and the observables' defining relations.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use proptest::prelude::*;

use switchwalk::analysis::{distinguishability_series, Mode, WalkPlan};
use switchwalk::channel::{density_matrix_checks, switch_channel_apply, KrausChannel};
use switchwalk::dense::{hermitian_eigenvalues, hermitian_eigenvalues_2x2, DenseOperator};
use switchwalk::engine::{
    effective_activation_apply, evolve_definite, project_switch, switch_extended_evolve,
    switched_step_evolve, SwitchSpec,
};
use switchwalk::observables::{blp_measure, concurrence, entanglement_entropy};
use switchwalk::oracle::brute_force_operator;
use switchwalk::sequence::{mirror_sequence, periodic_sequence, Order, PeriodicWalkSpec};
use switchwalk::state::{
    coin_matrix, make_localized_state, partial_trace_position, probability_distribution,
    walk_step, CoinSpec, WalkerState,
};
use switchwalk::C64;

fn amplitude_pair(weight: f64, phi_a: f64, phi_b: f64) -> (C64, C64) {
    let a = weight.sqrt();
    let b = (1.0 - weight).sqrt();
    (
        C64::from_polar(a, phi_a),
        C64::from_polar(b, phi_b),
    )
}

fn angle() -> impl Strategy<Value = f64> {
    -PI..PI
}

fn coin_spec() -> impl Strategy<Value = CoinSpec> {
    (angle(), angle(), angle()).prop_map(|(t, xi, ze)| CoinSpec::general(t, xi, ze))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evolution_is_unitary_for_any_coins(
        specs in proptest::collection::vec(coin_spec(), 0..10),
        weight in 0.0f64..1.0,
        phi_a in angle(),
        phi_b in angle(),
    ) {
        let (alpha, beta) = amplitude_pair(weight, phi_a, phi_b);
        let mut state = make_localized_state(alpha, beta, 0, 23).unwrap();
        for spec in &specs {
            state = walk_step(&state, spec);
        }
        prop_assert!((state.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn support_stays_inside_the_light_cone_with_step_parity(
        theta in angle(),
        steps in 0usize..10,
        weight in 0.0f64..1.0,
    ) {
        let (alpha, beta) = amplitude_pair(weight, 0.3, -0.9);
        let l = 2 * steps + 3;
        let init = make_localized_state(alpha, beta, 0, l).unwrap();
        let spec = PeriodicWalkSpec::new(vec![theta], steps, Order::Forward);
        let traj = evolve_definite(&init, &spec).unwrap();
        let fin = traj.final_state();
        let half = (l as i64 - 1) / 2;
        for x in -half..=half {
            let amp = fin.amplitude(0, x).norm() + fin.amplitude(1, x).norm();
            if x.unsigned_abs() as usize > steps {
                prop_assert!(amp < 1e-14, "outside light cone at x={x}: {amp}");
            }
            if (x + steps as i64) % 2 != 0 {
                prop_assert!(amp < 1e-14, "parity violation at x={x}: {amp}");
            }
        }
    }

    #[test]
    fn symmetric_start_spreads_symmetrically(theta in angle(), steps in 0usize..10) {
        let l = 2 * steps + 3;
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        let init = make_localized_state(h, h, 0, l).unwrap();
        let spec = PeriodicWalkSpec::new(vec![theta], steps, Order::Forward);
        let traj = evolve_definite(&init, &spec).unwrap();
        let dist = probability_distribution(traj.final_state());
        let lookup: std::collections::HashMap<i64, f64> = dist.into_iter().collect();
        for (x, p) in &lookup {
            prop_assert!((p - lookup[&-x]).abs() < 1e-12);
        }
    }

    #[test]
    fn engine_matches_dense_oracle(
        specs in proptest::collection::vec(coin_spec(), 1..6),
        weight in 0.0f64..1.0,
        phi_a in angle(),
        phi_b in angle(),
    ) {
        let l = 15;
        let (alpha, beta) = amplitude_pair(weight, phi_a, phi_b);
        let init = make_localized_state(alpha, beta, 0, l).unwrap();
        let mut via_engine = init.clone();
        for spec in &specs {
            via_engine = walk_step(&via_engine, spec);
        }
        let op = brute_force_operator(&specs, l).unwrap();
        let via_oracle =
            WalkerState::from_amplitudes(l, op.apply_vec(init.as_slice()).unwrap()).unwrap();
        prop_assert!(via_engine.max_abs_diff(&via_oracle).unwrap() < 1e-12);
    }

    #[test]
    fn postselection_is_consistent_and_complete(
        theta1 in angle(),
        theta2 in angle(),
        theta_s in 0.15f64..1.42,
        steps in 1usize..10,
    ) {
        let l = 2 * steps + 3;
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        let init = make_localized_state(h, h, 0, l).unwrap();
        let fwd = PeriodicWalkSpec::new(vec![theta1, theta2], steps, Order::Forward);
        let rev = PeriodicWalkSpec::new(vec![theta1, theta2], steps, Order::Reverse);
        let sw = SwitchSpec::new(theta_s);
        let ext = switch_extended_evolve(&init, &fwd, &rev, &sw).unwrap();

        let plus = [h, h];
        let minus = [h, C64::new(-FRAC_1_SQRT_2, 0.0)];
        let (_, p_plus) = project_switch(&ext, &plus).unwrap();
        let p_minus = match project_switch(&ext, &minus) {
            Ok((_, p)) => p,
            // fully destructive minus branch still completes the measurement
            Err(_) => 0.0,
        };
        prop_assert!((p_plus + p_minus - 1.0).abs() < 1e-12);

        let (proj, _) = project_switch(&ext, &plus).unwrap();
        let (eff, _) = effective_activation_apply(&init, &fwd, &rev, theta_s).unwrap();
        prop_assert!((proj.fidelity(&eff).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn per_block_switch_reduces_to_definite_orders(
        theta1 in angle(),
        theta2 in angle(),
        half_steps in 1usize..5,
    ) {
        let n = 2 * half_steps;
        let l = 2 * n + 3;
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        let init = make_localized_state(h, h, 0, l).unwrap();
        let spec_f = PeriodicWalkSpec::new(vec![theta1, theta2], n, Order::Forward);
        let spec_r = PeriodicWalkSpec::new(vec![theta1, theta2], n, Order::Reverse);
        let fwd = evolve_definite(&init, &spec_f).unwrap();
        let rev = evolve_definite(&init, &spec_r).unwrap();
        let at_zero = switched_step_evolve(&init, theta1, theta2, 0.0, n).unwrap();
        let at_right_angle = switched_step_evolve(&init, theta1, theta2, FRAC_PI_2, n).unwrap();
        for t in 0..=n {
            prop_assert!(at_zero.states[t].max_abs_diff(&fwd.states[t]).unwrap() < 1e-12);
            prop_assert!(
                at_right_angle.states[t].max_abs_diff(&rev.states[t]).unwrap() < 1e-12
            );
        }
    }

    #[test]
    fn expansion_equals_direct_power_on_random_draws(
        theta1 in angle(),
        delta in 0.05f64..1.5,
        theta_s in angle(),
        half_steps in 1usize..4,
    ) {
        let theta2 = theta1 + delta;
        let n = 2 * half_steps;
        let l = 11;
        let expanded =
            switchwalk::engine::expand_switched_step(theta1, theta2, theta_s, n, l).unwrap();
        let block =
            switchwalk::engine::switched_block_operator(theta1, theta2, theta_s, l).unwrap();
        let mut direct = DenseOperator::identity(2 * l);
        for _ in 0..half_steps {
            direct = block.mul(&direct).unwrap();
        }
        prop_assert!(expanded.max_abs_diff(&direct).unwrap() < 1e-10);
    }

    #[test]
    fn backflow_is_nonnegative_and_zero_iff_nonincreasing(
        series in proptest::collection::vec(0.0f64..1.0, 2..20),
    ) {
        let result = blp_measure(&series);
        prop_assert!(result.value >= 0.0);
        let nonincreasing = series.windows(2).all(|w| w[1] <= w[0]);
        prop_assert_eq!(result.value == 0.0, nonincreasing);
        prop_assert_eq!(result.revival_intervals.is_empty(), nonincreasing);
    }

    #[test]
    fn distinguishability_series_is_bounded_and_starts_at_one(
        theta1 in angle(),
        theta2 in angle(),
        steps in 1usize..10,
    ) {
        let plan = WalkPlan::new(Mode::Forward, vec![theta1, theta2], steps);
        let series = distinguishability_series(&plan).unwrap();
        prop_assert!((series[0] - 1.0).abs() < 1e-12);
        for d in &series {
            prop_assert!(*d >= -1e-12 && *d <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn entropy_and_concurrence_vanish_together(
        theta in angle(),
        steps in 0usize..8,
        weight in 0.0f64..1.0,
        phi in angle(),
    ) {
        let l = 2 * steps + 3;
        let (alpha, beta) = amplitude_pair(weight, 0.0, phi);
        let init = make_localized_state(alpha, beta, 0, l).unwrap();
        let spec = PeriodicWalkSpec::new(vec![theta], steps, Order::Forward);
        let traj = evolve_definite(&init, &spec).unwrap();
        let rho = partial_trace_position(traj.final_state()).unwrap();
        let s = entanglement_entropy(&rho).unwrap();
        let con = concurrence(&rho).unwrap();
        let purity = rho.purity();
        // the mixedness form is definitional
        prop_assert!((con * con - 2.0 * (1.0 - purity)).abs() < 1e-10);
        if purity > 1.0 - 1e-10 {
            prop_assert!(s < 1e-7 && con < 1e-4);
        }
        if purity < 1.0 - 1e-4 {
            prop_assert!(s > 1e-6 && con > 1e-3);
        }
    }

    #[test]
    fn mirrors_invert_and_reverse_orders_mirror(
        thetas in proptest::collection::vec(angle(), 1..5),
        steps in 0usize..12,
    ) {
        let fwd = periodic_sequence(&PeriodicWalkSpec::new(
            thetas.clone(),
            steps,
            Order::Forward,
        ))
        .unwrap();
        let rev = periodic_sequence(&PeriodicWalkSpec::new(
            thetas.clone(),
            steps,
            Order::Reverse,
        ))
        .unwrap();
        let mirror_of_fwd = mirror_sequence(&fwd);
        prop_assert_eq!(&mirror_sequence(&mirror_of_fwd), &fwd);
        prop_assert_eq!(&mirror_of_fwd, &rev);
        if thetas.len() == 2 && steps % 2 == 1 {
            prop_assert_eq!(&fwd, &rev);
        }
    }

    #[test]
    fn jacobi_agrees_with_closed_form_and_recovers_spectra(
        d0 in -2.0f64..0.0,
        d1 in 0.0f64..1.0,
        d2 in 1.0f64..3.0,
        th1 in angle(),
        th2 in angle(),
        re in -1.0f64..1.0,
        im in -1.0f64..1.0,
        a in -1.0f64..1.0,
        b in -1.0f64..1.0,
    ) {
        // 2x2 route against the closed form
        let m00 = C64::new(a, 0.0);
        let m01 = C64::new(re, im);
        let m11 = C64::new(b, 0.0);
        let m = DenseOperator::from_rows(&[
            vec![m00, m01],
            vec![m01.conj(), m11],
        ]).unwrap();
        let closed = hermitian_eigenvalues_2x2(m00, m01, m11);
        let jac = hermitian_eigenvalues(&m).unwrap();
        prop_assert!((closed[0] - jac[0]).abs() < 1e-10);
        prop_assert!((closed[1] - jac[1]).abs() < 1e-10);

        // conjugated known spectrum on a 4x4 built from two coin blocks
        let u = coin_matrix(&CoinSpec::general(th1, 0.4, -0.2))
            .kron(&coin_matrix(&CoinSpec::general(th2, -1.0, 0.8)));
        let mut d = DenseOperator::zeros(4);
        for (i, v) in [d0, d1, d2, d2 + 1.0].iter().enumerate() {
            d.set(i, i, C64::new(*v, 0.0));
        }
        let h = u.mul(&d).unwrap().mul(&u.adjoint()).unwrap();
        let eigs = hermitian_eigenvalues(&h).unwrap();
        let mut expect = [d0, d1, d2, d2 + 1.0];
        expect.sort_by(|x, y| x.partial_cmp(y).unwrap());
        for (got, want) in eigs.iter().zip(expect.iter()) {
            prop_assert!((got - want).abs() < 1e-9);
        }
    }

    #[test]
    fn switched_channels_preserve_density_matrices(
        p in 0.0f64..1.0,
        theta in angle(),
        weight in 0.0f64..1.0,
        phi in angle(),
        ctrl_weight in 0.0f64..1.0,
        ctrl_phi in angle(),
    ) {
        let z = DenseOperator::from_rows(&[
            vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
            vec![C64::new(0.0, 0.0), C64::new(-1.0, 0.0)],
        ]).unwrap();
        let dephase = KrausChannel::new(vec![
            DenseOperator::identity(2).scale(C64::new(p.sqrt(), 0.0)),
            z.scale(C64::new((1.0 - p).sqrt(), 0.0)),
        ]).unwrap();
        let rotate = KrausChannel::unitary(coin_matrix(&CoinSpec::new(theta))).unwrap();

        let (a, b) = amplitude_pair(weight, 0.0, phi);
        let mut rho = DenseOperator::zeros(2);
        for (i, x) in [a, b].iter().enumerate() {
            for (j, y) in [a, b].iter().enumerate() {
                rho.set(i, j, x * y.conj());
            }
        }
        let (ca, cb) = amplitude_pair(ctrl_weight, 0.0, ctrl_phi);
        let mut ctrl = DenseOperator::zeros(2);
        for (i, x) in [ca, cb].iter().enumerate() {
            for (j, y) in [ca, cb].iter().enumerate() {
                ctrl.set(i, j, x * y.conj());
            }
        }
        let out = switch_channel_apply(&dephase, &rotate, &rho, &ctrl).unwrap();
        density_matrix_checks(&out, 1e-9).unwrap();
    }
}
