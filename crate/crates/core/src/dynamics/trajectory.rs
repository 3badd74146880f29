use std::time::{Duration, Instant};

use super::stepper::{SolverState, Stepper};
use crate::error::{Error, Result};

/// Read-only hook invoked at sample times.
pub trait Observer {
    fn observe(&mut self, state: &SolverState) -> Result<()>;
}

impl<F: FnMut(&SolverState) -> Result<()>> Observer for F {
    fn observe(&mut self, state: &SolverState) -> Result<()> {
        self(state)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Completed,
    /// The run stopped; `time` is when the failing step was attempted.
    /// `blow_up` covers non-finite data and CFL violations.
    Failed { time: f64, reason: String, blow_up: bool },
}

#[derive(Debug, Clone)]
pub struct TrajectoryRecord {
    /// Final state, or the last good state when the run failed.
    pub final_state: SolverState,
    pub steps: usize,
    pub samples: usize,
    pub wall_time: Duration,
    pub outcome: Outcome,
}

impl TrajectoryRecord {
    pub fn completed(&self) -> bool {
        self.outcome == Outcome::Completed
    }
}

/// Number of whole `dt` steps from `t0` to `t_end`.
pub fn step_count(t0: f64, t_end: f64, dt: f64) -> Result<usize> {
    if !(t_end > t0) {
        return Err(Error::InvalidParameter(format!("t_end = {t_end} must exceed t = {t0}")));
    }
    let steps = (t_end - t0) / dt;
    let rounded = steps.round();
    if (steps - rounded).abs() > 1e-9 * steps.max(1.0) {
        return Err(Error::InvalidParameter(format!(
            "t_end - t = {} is not a multiple of dt = {dt}",
            t_end - t0
        )));
    }
    Ok(rounded as usize)
}

/// Advances `initial` to `params.t_end()`, calling every observer at the
/// start, every `sample_stride` steps, and at the end. Step and observer
/// failures end the run with the last good state kept in the record.
pub fn run_trajectory(
    initial: SolverState,
    sample_stride: usize,
    observers: &mut [&mut dyn Observer],
) -> Result<TrajectoryRecord> {
    if sample_stride == 0 {
        return Err(Error::InvalidParameter("sample stride must be positive".into()));
    }
    let params = initial.params;
    let t0 = initial.t;
    let steps = step_count(t0, params.t_end(), params.dt())?;
    let stepper = Stepper::new(*initial.grid(), params);
    let started = Instant::now();
    let mut samples = 0;

    let mut notify = |state: &SolverState, observers: &mut [&mut dyn Observer]| -> Result<()> {
        for o in observers.iter_mut() {
            o.observe(state)?;
        }
        samples += 1;
        Ok(())
    };

    let failed = |state: SolverState, steps: usize, samples: usize, err: Error| {
        let time = state.t;
        TrajectoryRecord {
            outcome: Outcome::Failed {
                time,
                blow_up: matches!(err, Error::BlowUp { .. } | Error::NonFinite(_) | Error::CflViolation { .. }),
                reason: err.to_string(),
            },
            final_state: state,
            steps,
            samples,
            wall_time: started.elapsed(),
        }
    };

    if let Err(e) = notify(&initial, observers) {
        return Ok(failed(initial, 0, samples, e));
    }
    let mut state = initial;
    for i in 1..=steps {
        let mut next = match stepper.step(&state) {
            Ok(next) => next,
            Err(e) => return Ok(failed(state, i - 1, samples, e)),
        };
        // avoid drift from repeated addition
        next.t = t0 + i as f64 * params.dt();
        if i % sample_stride == 0 || i == steps {
            if let Err(e) = notify(&next, observers) {
                return Ok(failed(next, i, samples, e));
            }
        }
        state = next;
    }
    Ok(TrajectoryRecord {
        final_state: state,
        steps,
        samples,
        wall_time: started.elapsed(),
        outcome: Outcome::Completed,
    })
}
