use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("dimension mismatch: expected {expected} values, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("non-finite value in {0}")]
    NonFinite(String),
    #[error("conjugate symmetry violated (relative defect {defect:.3e})")]
    SymmetryViolated { defect: f64 },
    #[error("fields live on different grids")]
    GridMismatch,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("CFL violation: dt = {dt} exceeds limit {limit}")]
    CflViolation { dt: f64, limit: f64 },
    #[error("solver blow-up at t = {t}: {reason}")]
    BlowUp { t: f64, reason: String },
    #[error("insufficient samples: {0}")]
    InsufficientSamples(String),
    #[error("nonpositive value {value} at t = {t} inside fit window")]
    NonPositive { t: f64, value: f64 },
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("ledger does not cover the monitored window: {0}")]
    WindowMismatch(String),
    #[error("malformed checkpoint: {0}")]
    Checkpoint(String),
    #[error("invalid config: {0}")]
    Config(String),
    #[error("malformed ledger: {0}")]
    Ledger(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
