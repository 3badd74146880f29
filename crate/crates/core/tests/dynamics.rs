use std::f64::consts::PI;

use sqg::diagnostics::sobolev_norm;
use sqg::dynamics::*;
use sqg::experiments::{make_perturbation, make_radial_data, FullSolveComparator, ModeBand};
use sqg::heat::semigroup_apply;
use sqg::oracle::advection_convolution;
use sqg::spectral::*;
use sqg::verify::radial_vanishing_ratio;
use sqg::Error;

fn tau(n: usize) -> GridSpec {
    GridSpec::new(n, 2.0 * PI).unwrap()
}

fn band_field(g: GridSpec, size: f64, max: f64, seed: u64) -> SpectralField {
    make_perturbation(size, ModeBand { min: 1.0, max }, seed, &g).unwrap()
}

fn gap(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn scale(c: &[Complex64]) -> f64 {
    c.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn params(gamma: f64, dt: f64, t_end: f64) -> SolverParams {
    SolverParams::new(gamma).unwrap().with_dt(dt).unwrap().with_t_end(t_end).unwrap()
}

#[test]
fn nonlinear_term_of_zero_is_zero() {
    let g = tau(16);
    assert_eq!(nonlinear_term(&SpectralField::zeros(g)).unwrap().max_abs(), 0.0);
}

#[test]
fn nonlinear_term_matches_convolution_oracle() {
    let g = tau(16);
    let shell = to_spectral(&sample(&g, |x, y| x.cos() + y.cos()), &g).unwrap();
    let got = nonlinear_term(&shell).unwrap();
    let want = advection_convolution(&shell, &shell);
    assert!(gap(got.coeffs(), &want) <= 1e-12);

    let f = band_field(g, 1.0, 5.0, 3);
    let got = nonlinear_term(&f).unwrap();
    let want = advection_convolution(&f, &f);
    assert!(gap(got.coeffs(), &want) <= 1e-12 * scale(&want), "{}", gap(got.coeffs(), &want));
}

#[test]
fn advection_terms_match_oracle_individually() {
    let g = tau(16);
    let theta1 = band_field(g, 0.1, 5.0, 5);
    let theta0 = band_field(g, 1.0, 4.0, 6);
    let terms = perturbation_terms(&theta1, &theta0).unwrap();
    let oracles = [
        advection_convolution(&theta0, &theta1),
        advection_convolution(&theta1, &theta1),
        advection_convolution(&theta1, &theta0),
    ];
    for (t, o) in terms.iter().zip(&oracles) {
        assert!(gap(t.coeffs(), o) <= 1e-12 * scale(o));
    }
    let sum: Vec<Complex64> = (0..g.len()).map(|i| oracles[0][i] + oracles[1][i] + oracles[2][i]).collect();
    let rhs = perturbation_rhs(&theta1, &theta0).unwrap();
    assert!(gap(rhs.coeffs(), &sum) <= 1e-12 * scale(&sum));
}

#[test]
fn perturbation_rhs_reductions() {
    let g = tau(32);
    let theta0 = band_field(g, 2.0, 8.0, 1);
    let theta1 = band_field(g, 0.5, 8.0, 2);
    assert_eq!(perturbation_rhs(&SpectralField::zeros(g), &theta0).unwrap().max_abs(), 0.0);
    let reduced = perturbation_rhs(&theta1, &SpectralField::zeros(g)).unwrap();
    let own = nonlinear_term(&theta1).unwrap();
    assert!(gap(reduced.coeffs(), own.coeffs()) <= 1e-15 * own.max_abs());
}

#[test]
fn radial_residual_is_a_box_effect() {
    let small = radial_vanishing_ratio(GridSpec::new(256, 100.0).unwrap(), 1.0, 2.0).unwrap();
    let finer = radial_vanishing_ratio(GridSpec::new(512, 100.0).unwrap(), 1.0, 2.0).unwrap();
    let large = radial_vanishing_ratio(GridSpec::new(512, 200.0).unwrap(), 1.0, 2.0).unwrap();
    // resolution-independent, and (w/L)^5 in the box side
    assert!((small / finer - 1.0).abs() < 1e-2, "{small} vs {finer}");
    assert!((small / large / 32.0 - 1.0).abs() < 0.2, "{small} vs {large}");
    assert!(large <= 1e-8);
}

#[test]
fn linear_flow_equals_semigroup() {
    // single shell |k| = 1: the advection term vanishes identically
    let g = tau(32);
    let theta = to_spectral(&sample(&g, |x, y| x.cos() + 0.5 * y.sin()), &g).unwrap();
    let p = params(0.5, 0.05, 1.0);
    let next = step(&SolverState::full(theta.clone(), p)).unwrap();
    let exact = semigroup_apply(&theta, 0.05, 0.5).unwrap();
    assert!(gap(next.field.coeffs(), exact.coeffs()) <= 1e-13);
    assert!((next.t - 0.05).abs() < 1e-15);
}

#[test]
fn zero_step_is_identity() {
    let g = tau(32);
    let theta = band_field(g, 3.0, 8.0, 4);
    let state = SolverState::full(theta, params(0.5, 0.01, 1.0));
    let stepper = Stepper::new(g, state.params);
    assert_eq!(stepper.step_by(&state, 0.0).unwrap(), state);
    assert!(stepper.step_by(&state, -0.1).is_err());
}

fn solve_to(theta: &SpectralField, dt: f64, t_end: f64, scheme: Scheme) -> SpectralField {
    let p = params(0.5, dt, t_end).with_scheme(scheme);
    let rec = run_trajectory(SolverState::full(theta.clone(), p), 1_000_000, &mut []).unwrap();
    assert!(rec.completed(), "{:?}", rec.outcome);
    rec.final_state.field
}

fn observed_order(scheme: Scheme) -> f64 {
    let g = tau(32);
    let theta = band_field(g, 40.0, 5.0, 9);
    let a = solve_to(&theta, 0.04, 1.0, scheme);
    let b = solve_to(&theta, 0.02, 1.0, scheme);
    let c = solve_to(&theta, 0.01, 1.0, scheme);
    let d1 = sobolev_norm(&(&a - &b), 0.0, true).unwrap();
    let d2 = sobolev_norm(&(&b - &c), 0.0, true).unwrap();
    (d1 / d2).log2()
}

#[test]
fn if_rk2_is_second_order() {
    let order = observed_order(Scheme::IfRk2);
    assert!(order >= 1.9, "observed order {order}");
}

#[test]
fn if_rk4_is_fourth_order() {
    let order = observed_order(Scheme::IfRk4);
    assert!(order >= 3.7, "observed order {order}");
}

#[test]
fn cfl_limit_cases() {
    let g = tau(32);
    let p = SolverParams::new(0.5).unwrap();
    let zero = cfl_limit(&SpectralField::zeros(g), &p);
    assert!((zero - p.cfl_safety() * g.dx() / CFL_VELOCITY_FLOOR).abs() <= 1e-9 * zero);

    let sin_x = to_spectral(&sample(&g, |x, _| x.sin()), &g).unwrap();
    assert!((cfl_limit(&sin_x, &p) - p.cfl_safety() * g.dx()).abs() < 1e-14);

    let f = band_field(g, 5.0, 8.0, 2);
    let ratio = cfl_limit(&f, &p) / cfl_limit(&f.scaled(2.0), &p);
    assert!((ratio - 2.0).abs() < 1e-12);
}

#[test]
fn cfl_violation_stops_the_run() {
    let g = tau(32);
    let theta = band_field(g, 2000.0, 5.0, 1);
    let state = SolverState::full(theta, params(0.5, 0.1, 1.0));
    assert!(matches!(step(&state), Err(Error::CflViolation { .. })));
    let rec = run_trajectory(state.clone(), 1, &mut []).unwrap();
    match rec.outcome {
        Outcome::Failed { blow_up, time, .. } => {
            assert!(blow_up);
            assert_eq!(time, 0.0);
        }
        Outcome::Completed => panic!("expected failure"),
    }
    assert_eq!(rec.final_state, state);
}

#[test]
fn zero_data_stays_zero() {
    let g = tau(16);
    let mut max = 0.0_f64;
    let mut obs = |s: &SolverState| -> sqg::Result<()> {
        max = max.max(s.field.max_abs());
        Ok(())
    };
    let rec = run_trajectory(SolverState::full(SpectralField::zeros(g), params(0.5, 0.1, 1.0)), 1, &mut [&mut obs])
        .unwrap();
    assert!(rec.completed());
    assert_eq!(rec.samples, 11);
    assert_eq!(max, 0.0);
}

#[test]
fn radial_full_solve_follows_semigroup() {
    let g = GridSpec::new(256, 100.0).unwrap();
    let f = make_radial_data(1.0, 2.0, &g).unwrap();
    let p = params(0.5, 0.01, 2.0);
    let mut worst = 0.0_f64;
    let mut obs = |s: &SolverState| -> sqg::Result<()> {
        let exact = semigroup_apply(&f, s.t, 0.5)?;
        let err = sobolev_norm(&(&s.field - &exact), p.s(), false)? / sobolev_norm(&exact, p.s(), false)?;
        worst = worst.max(err);
        Ok(())
    };
    let rec = run_trajectory(SolverState::full(f.clone(), p), 10, &mut [&mut obs]).unwrap();
    assert!(rec.completed());
    assert!(worst <= 1e-6, "{worst}");
}

#[test]
fn decomposed_solve_matches_full_solve() {
    let g = GridSpec::new(256, 64.0).unwrap();
    let f = make_radial_data(1.0, 2.0, &g).unwrap();
    let pert = make_perturbation(1e-3, ModeBand::default(), 4, &g).unwrap();
    let p = params(0.5, 0.01, 5.0);
    let mut cmp = FullSolveComparator::new(&f + &pert, p);
    let rec = run_trajectory(SolverState::perturbation(pert, f, p).unwrap(), 10, &mut [&mut cmp]).unwrap();
    assert!(rec.completed());
    assert!(cmp.max_relative_error <= 1e-6, "{}", cmp.max_relative_error);
}

#[test]
fn mean_and_symmetry_are_preserved() {
    let g = tau(32);
    let theta = &band_field(g, 20.0, 8.0, 12) + &to_spectral(&vec![0.7; 1024], &g).unwrap();
    let mut means = Vec::new();
    let mut defects = Vec::new();
    let mut obs = |s: &SolverState| -> sqg::Result<()> {
        means.push(s.field.mean());
        defects.push(s.field.symmetry_defect());
        Ok(())
    };
    let rec = run_trajectory(SolverState::full(theta, params(0.5, 0.01, 1.0)), 5, &mut [&mut obs]).unwrap();
    assert!(rec.completed());
    assert!(means.iter().all(|m| (m - 0.7).abs() < 1e-15), "{means:?}");
    assert!(defects.iter().all(|d| *d <= 1e-12));
}

#[test]
fn observer_errors_end_the_run() {
    let g = tau(16);
    let mut calls = 0;
    let mut obs = |s: &SolverState| -> sqg::Result<()> {
        calls += 1;
        if s.t > 0.25 {
            Err(Error::Ledger("stop".into()))
        } else {
            Ok(())
        }
    };
    let theta = band_field(g, 1.0, 4.0, 1);
    let rec = run_trajectory(SolverState::full(theta, params(0.5, 0.1, 1.0)), 1, &mut [&mut obs]).unwrap();
    assert!(matches!(rec.outcome, Outcome::Failed { blow_up: false, .. }));
    assert_eq!(calls, 4);
    assert!((rec.final_state.t - 0.3).abs() < 1e-12);
}

#[test]
fn step_count_requires_whole_steps() {
    assert_eq!(step_count(0.0, 1.0, 0.1).unwrap(), 10);
    assert!(step_count(0.0, 1.0, 0.3).is_err());
    assert!(step_count(1.0, 1.0, 0.1).is_err());
}
