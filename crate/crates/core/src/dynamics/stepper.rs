use std::sync::Arc;

use super::params::{Scheme, SolverParams};
use super::rhs::{nonlinear_term, perturbation_rhs};
use crate::error::{Error, Result};
use crate::heat::radial_heat_solution;
use crate::spectral::{fractional_symbol, riesz_perp, to_physical_pair, GridSpec, SpectralField};

/// Velocity floor in the CFL bound, so quiescent fields get a finite limit.
pub const CFL_VELOCITY_FLOOR: f64 = 1e-8;

/// What the state's field represents.
#[derive(Debug, Clone, PartialEq)]
pub enum SolveKind {
    /// The field is the full solution `θ`.
    Full,
    /// The field is `θ₁`; `θ₀(t) = e^{−tΛ^γ} f` is generated on demand
    /// from the radial data `f` stored here.
    Perturbation { radial: Arc<SpectralField> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverState {
    pub t: f64,
    pub field: SpectralField,
    pub kind: SolveKind,
    pub params: SolverParams,
}

impl SolverState {
    pub fn full(theta: SpectralField, params: SolverParams) -> Self {
        SolverState {
            t: 0.0,
            field: theta,
            kind: SolveKind::Full,
            params,
        }
    }

    pub fn perturbation(theta1: SpectralField, radial: SpectralField, params: SolverParams) -> Result<Self> {
        theta1.ensure_same_grid(&radial)?;
        Ok(SolverState {
            t: 0.0,
            field: theta1,
            kind: SolveKind::Perturbation {
                radial: Arc::new(radial),
            },
            params,
        })
    }

    pub fn grid(&self) -> &GridSpec {
        self.field.grid()
    }

    /// `θ₀(t)` for a perturbation solve, `None` for a full solve.
    pub fn theta0(&self) -> Result<Option<SpectralField>> {
        match &self.kind {
            SolveKind::Full => Ok(None),
            SolveKind::Perturbation { radial } => {
                radial_heat_solution(radial, self.t, self.params.gamma()).map(Some)
            }
        }
    }

    /// The full solution `θ` (`θ₀ + θ₁` for a perturbation solve).
    pub fn total(&self) -> Result<SpectralField> {
        Ok(match self.theta0()? {
            None => self.field.clone(),
            Some(t0) => &t0 + &self.field,
        })
    }
}

/// `cfl_safety · Δx / max(‖R^⊥θ‖_{L^∞}, floor)`.
pub fn cfl_limit(theta: &SpectralField, params: &SolverParams) -> f64 {
    let u = riesz_perp(theta);
    let (u1, u2) = to_physical_pair(&u.u1, &u.u2);
    let speed = u1.iter().zip(&u2).map(|(a, b)| a.hypot(*b)).fold(0.0, f64::max);
    params.cfl_safety() * theta.grid().dx() / speed.max(CFL_VELOCITY_FLOOR)
}

/// Integrating-factor Runge–Kutta stepper with the per-mode decay rates
/// `|k|^γ` cached for one grid and parameter set.
#[derive(Debug, Clone)]
pub struct Stepper {
    grid: GridSpec,
    params: SolverParams,
    rates: Vec<f64>,
    full: Vec<f64>,
    half: Vec<f64>,
}

impl Stepper {
    pub fn new(grid: GridSpec, params: SolverParams) -> Self {
        let rates: Vec<f64> = grid
            .wavevectors()
            .map(|(k1, k2)| fractional_symbol(k1, k2, params.gamma()))
            .collect();
        let dt = params.dt();
        let full = rates.iter().map(|r| (-r * dt).exp()).collect();
        let half = rates.iter().map(|r| (-r * 0.5 * dt).exp()).collect();
        Stepper {
            grid,
            params,
            rates,
            full,
            half,
        }
    }

    pub fn params(&self) -> &SolverParams {
        &self.params
    }

    /// `e^{−tΛ^γ} f` from the cached rates; identical to
    /// [`radial_heat_solution`] mode by mode.
    pub fn theta0_at(&self, radial: &SpectralField, t: f64) -> SpectralField {
        let c = radial
            .coeffs()
            .iter()
            .zip(&self.rates)
            .map(|(c, r)| c * (-r * t).exp())
            .collect();
        SpectralField::from_raw(self.grid, c)
    }

    fn propagate(&self, field: &SpectralField, factor: &[f64]) -> SpectralField {
        let c = field.coeffs().iter().zip(factor).map(|(c, f)| c * f).collect();
        SpectralField::from_raw(self.grid, c)
    }

    fn rhs(&self, kind: &SolveKind, field: &SpectralField, t: f64) -> Result<SpectralField> {
        match kind {
            SolveKind::Full => nonlinear_term(field),
            SolveKind::Perturbation { radial } => perturbation_rhs(field, &self.theta0_at(radial, t)),
        }
    }

    /// Advances `state` by one step of size `params.dt()`.
    pub fn step(&self, state: &SolverState) -> Result<SolverState> {
        self.step_inner(state, self.params.dt(), &self.full, &self.half)
    }

    /// Advances `state` by an arbitrary `dt ≥ 0`; `dt = 0` is the identity.
    pub fn step_by(&self, state: &SolverState, dt: f64) -> Result<SolverState> {
        if !(dt >= 0.0 && dt.is_finite()) {
            return Err(Error::InvalidParameter(format!("step size must be nonnegative, got {dt}")));
        }
        let full: Vec<f64> = self.rates.iter().map(|r| (-r * dt).exp()).collect();
        let half: Vec<f64> = self.rates.iter().map(|r| (-r * 0.5 * dt).exp()).collect();
        self.step_inner(state, dt, &full, &half)
    }

    fn step_inner(&self, state: &SolverState, dt: f64, full: &[f64], half: &[f64]) -> Result<SolverState> {
        if *state.grid() != self.grid || state.params != self.params {
            return Err(Error::InvalidParameter(
                "state does not match the stepper's grid or parameters".into(),
            ));
        }
        let velocity_source = match &state.kind {
            SolveKind::Full => state.field.clone(),
            SolveKind::Perturbation { radial } => &self.theta0_at(radial, state.t) + &state.field,
        };
        let limit = cfl_limit(&velocity_source, &self.params);
        if dt > limit {
            return Err(Error::CflViolation { dt, limit });
        }
        let blowup = |e: Error| match e {
            Error::NonFinite(reason) => Error::BlowUp { t: state.t, reason },
            other => other,
        };
        let (t, u, kind) = (state.t, &state.field, &state.kind);
        let next = match self.params.scheme() {
            Scheme::IfRk2 => {
                let k1 = self.rhs(kind, u, t).map_err(blowup)?;
                let predictor = self.propagate(&u.axpy(dt, &k1), full);
                let k2 = self.rhs(kind, &predictor, t + dt).map_err(blowup)?;
                self.propagate(&u.axpy(0.5 * dt, &k1), full).axpy(0.5 * dt, &k2)
            }
            Scheme::IfRk4 => {
                let h = dt;
                let a = self.rhs(kind, u, t).map_err(blowup)?;
                let u_half = self.propagate(u, half);
                let b = self
                    .rhs(kind, &self.propagate(&u.axpy(0.5 * h, &a), half), t + 0.5 * h)
                    .map_err(blowup)?;
                let c = self.rhs(kind, &u_half.axpy(0.5 * h, &b), t + 0.5 * h).map_err(blowup)?;
                let d = self
                    .rhs(
                        kind,
                        &self.propagate(u, full).axpy(h, &self.propagate(&c, half)),
                        t + h,
                    )
                    .map_err(blowup)?;
                let mid = self.propagate(&(&b + &c), half);
                self.propagate(u, full)
                    .axpy(h / 6.0, &self.propagate(&a, full))
                    .axpy(h / 3.0, &mid)
                    .axpy(h / 6.0, &d)
            }
        };
        if !next.is_finite() {
            return Err(Error::BlowUp {
                t: t + dt,
                reason: "non-finite coefficients after step".into(),
            });
        }
        Ok(SolverState {
            t: t + dt,
            field: next,
            kind: state.kind.clone(),
            params: state.params,
        })
    }
}

/// One step with a freshly built [`Stepper`].
pub fn step(state: &SolverState) -> Result<SolverState> {
    Stepper::new(*state.grid(), state.params).step(state)
}
