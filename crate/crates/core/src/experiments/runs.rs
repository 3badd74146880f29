use std::fs;
use std::path::Path;

use super::config::RunConfig;
use super::data::{make_perturbation, make_radial_data};
use super::io::{record_to_json, write_decay_csv, write_ledger_csv, write_theta0_csv, Checkpoint};
use super::record::{DecayFitReport, RunKind, RunRecord, RunStatus};
use crate::diagnostics::{
    continuity_monitor, hs_growth_constants, lemma1_ledger, lemma1_residual, sobolev_norm,
    theta0_monotonicity_violations, ContinuityThresholds, NormLedger, Theta0Sample,
};
use crate::dynamics::{run_trajectory, Observer, Outcome, SolverState, Stepper};
use crate::error::{Error, Result};
use crate::heat::{decay_series, fit_power_law, geometric_times, kernel_dominated_window, radial_heat_solution};

/// Relative exponent tolerance for a decay fit to count as a pass.
pub const DECAY_EXPONENT_TOLERANCE: f64 = 0.05;

/// Fits every configured decay norm of `e^{−tΛ^γ} f` for the radial data.
pub fn run_decay_experiment(config: &RunConfig) -> Result<RunRecord> {
    config.validate()?;
    let started = std::time::Instant::now();
    let gamma = config.params.gamma();
    let f = make_radial_data(config.data.amplitude, config.data.width, &config.grid)?;
    let mut record = RunRecord::new(RunKind::Decay, config.clone());
    let mut series = Vec::new();
    for target in &config.decay.targets {
        let window = target
            .window
            .unwrap_or_else(|| kernel_dominated_window(gamma, config.data.width, config.grid.box_length()));
        let expected = target.norm.target_exponent(gamma);
        let fitted = if window.1 > window.0 && window.0 > 0.0 {
            let times = geometric_times(window.0, window.1, config.decay.samples);
            decay_series(&f, gamma, target.norm, &times).and_then(|s| {
                let fit = fit_power_law(&s, window);
                series.push(s);
                fit
            })
        } else {
            Err(Error::InvalidParameter(format!(
                "empty fit window [{}, {}] for this box and width",
                window.0, window.1
            )))
        };
        let report = match fitted {
            Ok(fit) => DecayFitReport {
                norm: target.norm.label(),
                target_exponent: expected,
                passed: (fit.exponent - expected).abs() <= DECAY_EXPONENT_TOLERANCE * expected.abs()
                    && fit.residual <= config.decay.residual_threshold,
                fit: Some(fit),
                error: None,
            },
            Err(e) => DecayFitReport {
                norm: target.norm.label(),
                target_exponent: expected,
                fit: None,
                error: Some(e.to_string()),
                passed: false,
            },
        };
        record.fits.push(report);
    }
    if record.fits.iter().any(|r| !r.passed) {
        record.status = RunStatus::FitFailed;
    }
    record.wall_time_s = started.elapsed().as_secs_f64();
    if let (Some(dir), true) = (config.output.dir.as_deref(), config.output.csv) {
        fs::create_dir_all(dir)?;
        let p = dir.join("decay.csv");
        write_decay_csv(fs::File::create(&p)?, &series)?;
        record.decay_path = Some(p.to_string_lossy().into_owned());
    }
    write_outputs(&mut record, None, &[], None)?;
    Ok(record)
}

/// Runs the full equation in lockstep with a perturbation solve and
/// records the largest relative `H^s` gap between `θ₀ + θ₁` and `θ`.
pub struct FullSolveComparator {
    stepper: Stepper,
    state: SolverState,
    steps: usize,
    pub max_relative_error: f64,
}

impl FullSolveComparator {
    pub fn new(theta: crate::spectral::SpectralField, params: crate::dynamics::SolverParams) -> Self {
        FullSolveComparator {
            stepper: Stepper::new(*theta.grid(), params),
            state: SolverState::full(theta, params),
            steps: 0,
            max_relative_error: 0.0,
        }
    }
}

impl Observer for FullSolveComparator {
    fn observe(&mut self, pert: &SolverState) -> Result<()> {
        let dt = self.state.params.dt();
        let target = (pert.t / dt).round() as usize;
        while self.steps < target {
            self.state = self.stepper.step(&self.state)?;
            self.steps += 1;
        }
        let s = self.state.params.s();
        let diff = &pert.total()? - &self.state.field;
        let reference = sobolev_norm(&self.state.field, s, false)?;
        let rel = sobolev_norm(&diff, s, false)? / reference.max(f64::MIN_POSITIVE);
        self.max_relative_error = self.max_relative_error.max(rel);
        Ok(())
    }
}

/// A finished perturbation run with its in-memory series.
#[derive(Debug, Clone)]
pub struct PerturbationRun {
    pub record: RunRecord,
    pub ledger: NormLedger,
    pub theta0: Vec<Theta0Sample>,
}

/// Solves for `θ₁` with `θ₀` the linear evolution of the radial data,
/// records the norm ledger and runs the continuity monitor.
pub fn run_perturbation_experiment(config: &RunConfig) -> Result<RunRecord> {
    run_perturbation(config).map(|r| r.record)
}

/// As [`run_perturbation_experiment`], also returning the ledger and `θ₀` series.
pub fn run_perturbation(config: &RunConfig) -> Result<PerturbationRun> {
    config.validate()?;
    let grid = config.grid;
    let params = config.params;
    let (s, gamma) = (params.s(), params.gamma());
    let f = make_radial_data(config.data.amplitude, config.data.width, &grid)?;
    let g = make_perturbation(config.data.epsilon, config.data.band, config.data.seed, &grid)?;

    let mut ledger = NormLedger::new();
    let mut theta0_series = Vec::new();
    let mut ledger_obs = |state: &SolverState| -> Result<()> {
        let theta0 = state.theta0()?.expect("perturbation solve");
        let (entry, _) = lemma1_ledger(&theta0, &state.field, &params, state.t)?;
        ledger.push(entry)?;
        theta0_series.push(Theta0Sample::measure(&theta0, s, state.t)?);
        Ok(())
    };
    let mut comparator = config
        .co_run_full
        .then(|| FullSolveComparator::new(&f + &g, params));
    let initial = SolverState::perturbation(g, f.clone(), params)?;
    let trajectory = {
        let mut observers: Vec<&mut dyn Observer> = vec![&mut ledger_obs];
        if let Some(c) = comparator.as_mut() {
            observers.push(c);
        }
        run_trajectory(initial, config.sample_stride(), &mut observers)?
    };

    let mut record = RunRecord::new(RunKind::Perturbation, config.clone());
    record.steps = trajectory.steps;
    record.final_time = trajectory.final_state.t;
    record.wall_time_s = trajectory.wall_time.as_secs_f64();
    record.decomposition_error = comparator.map(|c| c.max_relative_error);
    record.theta0_monotonicity_violations = Some(theta0_monotonicity_violations(&theta0_series));
    if let Outcome::Failed { reason, blow_up, .. } = &trajectory.outcome {
        record.status = if *blow_up { RunStatus::BlowUp } else { RunStatus::Failed };
        record.failure = Some(reason.clone());
    }

    let (t1, t2) = (config.schedule.t1, config.schedule.t2);
    let in_window = |t: f64| t >= t1 - 1e-9 && t <= t2 + 1e-9;
    let interval = config.schedule.sample_interval;
    if ledger.len() >= 3 {
        record.lemma1_max_constant = lemma1_residual(&ledger, interval)?
            .iter()
            .filter(|r| in_window(r.time))
            .map(|r| r.implied_constant)
            .reduce(f64::max);
        record.growth_max_constant = hs_growth_constants(&ledger, interval)?
            .iter()
            .filter(|r| in_window(r.time))
            .map(|r| r.implied_c1)
            .reduce(f64::max);
    }
    let thresholds = ContinuityThresholds::with_default_epsilon1(
        config.data.epsilon,
        config.monitor.epsilon0,
        config.monitor.c1,
        t1,
        t2,
    )?;
    let theta0_t2 = sobolev_norm(&radial_heat_solution(&f, t2, gamma)?, s, false)?;
    record.verdict = match continuity_monitor(&ledger, &thresholds, Some(theta0_t2)) {
        Ok(v) => Some(v),
        Err(Error::WindowMismatch(_)) if !trajectory.completed() => None,
        Err(e) => return Err(e),
    };

    let checkpoint = Checkpoint::from_state(&trajectory.final_state);
    write_outputs(&mut record, Some(&ledger), &theta0_series, Some(&checkpoint))?;
    Ok(PerturbationRun {
        record,
        ledger,
        theta0: theta0_series,
    })
}

fn write_outputs(
    record: &mut RunRecord,
    ledger: Option<&NormLedger>,
    theta0: &[Theta0Sample],
    checkpoint: Option<&Checkpoint>,
) -> Result<()> {
    let out = record.config.output.clone();
    let Some(dir) = out.dir.as_deref() else {
        return Ok(());
    };
    fs::create_dir_all(dir)?;
    let path_str = |p: &Path| p.to_string_lossy().into_owned();
    if out.csv {
        if let Some(ledger) = ledger {
            let p = dir.join("ledger.csv");
            write_ledger_csv(fs::File::create(&p)?, ledger)?;
            record.ledger_path = Some(path_str(&p));
            let p = dir.join("theta0.csv");
            write_theta0_csv(fs::File::create(&p)?, theta0)?;
            record.theta0_path = Some(path_str(&p));
        }
    }
    let failed = matches!(record.status, RunStatus::BlowUp | RunStatus::Failed);
    if let Some(ckpt) = checkpoint {
        if out.checkpoint || failed {
            let p = dir.join(if failed { "last_good.ckpt" } else { "final.ckpt" });
            ckpt.write(&p)?;
            record.checkpoint_path = Some(path_str(&p));
        }
    }
    if out.json {
        fs::write(dir.join("record.json"), record_to_json(record)?)?;
    }
    Ok(())
}
