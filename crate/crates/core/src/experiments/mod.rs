//! Scenario configuration, run orchestration, sweeps and file formats.

mod config;
mod data;
mod io;
mod record;
mod runs;
mod sweep;

pub use config::{
    ConfigOverrides, DataConfig, DecayConfig, DecayTarget, MonitorConfig, OutputConfig, RunConfig, Schedule,
};
pub use data::{make_perturbation, make_radial_data, ModeBand};
pub use io::{
    read_ledger_csv, read_theta0_csv, record_from_json, record_to_json, write_decay_csv, write_ledger_csv,
    write_theta0_csv,
    Checkpoint, CHECKPOINT_MAGIC, CHECKPOINT_VERSION, MAX_CHECKPOINT_N,
};
pub use record::{DecayFitReport, RunKind, RunRecord, RunStatus};
pub use runs::{
    run_decay_experiment, run_perturbation, run_perturbation_experiment, FullSolveComparator, PerturbationRun,
    DECAY_EXPONENT_TOLERANCE,
};
pub use sweep::{run_sweep, workers_from_env, SweepAxis, SweepEntry, SweepReport, WORKERS_ENV};
