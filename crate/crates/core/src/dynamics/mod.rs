//! Time integration of the full SQG problem and of the perturbation
//! equation with `θ₀` supplied exactly by the semigroup.

mod params;
mod rhs;
mod stepper;
mod trajectory;

pub use params::{Scheme, SolverParams};
pub use rhs::{advection, nonlinear_term, perturbation_rhs, perturbation_terms};
pub use stepper::{cfl_limit, step, SolveKind, SolverState, Stepper, CFL_VELOCITY_FLOOR};
pub use trajectory::{run_trajectory, step_count, Observer, Outcome, TrajectoryRecord};
