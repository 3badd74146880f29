use serde::{Deserialize, Serialize};

use super::config::RunConfig;
use crate::diagnostics::MonitorVerdict;
use crate::heat::PowerLawFit;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunKind {
    Decay,
    Perturbation,
}

impl std::str::FromStr for RunKind {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "decay" => Ok(RunKind::Decay),
            "perturbation" | "perturb" => Ok(RunKind::Perturbation),
            _ => Err(crate::Error::Config(format!("unknown run kind {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    /// Ran to completion and met its own checks.
    Completed,
    /// A decay fit missed its exponent or residual threshold.
    FitFailed,
    /// The solver stopped early on non-finite data or a CFL violation.
    BlowUp,
    /// The solver stopped early for another reason.
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayFitReport {
    pub norm: String,
    pub target_exponent: f64,
    pub fit: Option<PowerLawFit>,
    pub error: Option<String>,
    pub passed: bool,
}

/// Everything needed to interpret and reproduce one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub kind: RunKind,
    pub config: RunConfig,
    pub status: RunStatus,
    pub software_version: String,
    pub wall_time_s: f64,
    pub steps: usize,
    pub final_time: f64,
    pub failure: Option<String>,
    pub ledger_path: Option<String>,
    pub theta0_path: Option<String>,
    /// Decay series, one row per (norm, time).
    pub decay_path: Option<String>,
    pub checkpoint_path: Option<String>,
    pub fits: Vec<DecayFitReport>,
    pub verdict: Option<MonitorVerdict>,
    /// Largest implied constant of the `Ḣ^s` energy inequality over `[t₁, t₂]`.
    pub lemma1_max_constant: Option<f64>,
    /// Largest implied `C₁` of the `H^s` growth inequality over `[t₁, t₂]`.
    pub growth_max_constant: Option<f64>,
    /// Max relative `H^s` gap between `θ₀ + θ₁` and a co-run full solve.
    pub decomposition_error: Option<f64>,
    pub theta0_monotonicity_violations: Option<usize>,
}

impl RunRecord {
    pub fn new(kind: RunKind, config: RunConfig) -> Self {
        RunRecord {
            kind,
            config,
            status: RunStatus::Completed,
            software_version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_s: 0.0,
            steps: 0,
            final_time: 0.0,
            failure: None,
            ledger_path: None,
            theta0_path: None,
            decay_path: None,
            checkpoint_path: None,
            fits: Vec::new(),
            verdict: None,
            lemma1_max_constant: None,
            growth_max_constant: None,
            decomposition_error: None,
            theta0_monotonicity_violations: None,
        }
    }
}
