use std::io::Write;

use serde::{Deserialize, Serialize};

use super::config::{ConfigOverrides, RunConfig};
use super::record::{RunKind, RunRecord, RunStatus};
use super::runs::{run_decay_experiment, run_perturbation_experiment};
use crate::error::{Error, Result};

/// Worker-pool size; unset means a single worker.
pub const WORKERS_ENV: &str = "SQG_WORKERS";

pub fn workers_from_env() -> Result<usize> {
    match std::env::var(WORKERS_ENV) {
        Err(_) => Ok(1),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k),
            _ => Err(Error::Config(format!("{WORKERS_ENV} must be a positive integer, got {v:?}"))),
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    Epsilon,
    Gamma,
    GridN,
    Dt,
}

impl std::str::FromStr for SweepAxis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "epsilon" => Ok(SweepAxis::Epsilon),
            "gamma" => Ok(SweepAxis::Gamma),
            "grid-n" | "grid_n" => Ok(SweepAxis::GridN),
            "dt" => Ok(SweepAxis::Dt),
            _ => Err(Error::Config(format!("unknown sweep axis {s:?}"))),
        }
    }
}

impl SweepAxis {
    fn overrides(self, value: f64) -> ConfigOverrides {
        let mut o = ConfigOverrides::default();
        match self {
            SweepAxis::Epsilon => o.epsilon = Some(value),
            SweepAxis::Gamma => o.gamma = Some(value),
            SweepAxis::GridN => o.grid_n = Some(value as usize),
            SweepAxis::Dt => o.dt = Some(value),
        }
        o
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub value: f64,
    pub record: Option<RunRecord>,
    pub error: Option<String>,
}

impl SweepEntry {
    pub fn contained(&self) -> Option<bool> {
        self.record.as_ref()?.verdict.as_ref().map(|v| v.contained())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub kind: RunKind,
    pub axis: SweepAxis,
    pub entries: Vec<SweepEntry>,
}

impl SweepReport {
    /// Smallest swept ε whose run left the continuity bound, or blew up.
    pub fn empirical_epsilon_threshold(&self) -> Option<f64> {
        if self.axis != SweepAxis::Epsilon {
            return None;
        }
        self.entries
            .iter()
            .filter(|e| {
                e.contained() == Some(false)
                    || e.record.as_ref().is_some_and(|r| r.status == RunStatus::BlowUp)
            })
            .map(|e| e.value)
            .reduce(f64::min)
    }

    pub fn write_summary_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "value",
            "status",
            "contained",
            "sup_hs_theta1",
            "first_exit_time",
            "fitted_exponents",
            "wall_time_s",
            "error",
        ])?;
        for e in &self.entries {
            let r = e.record.as_ref();
            let v = r.and_then(|r| r.verdict.as_ref());
            let opt = |x: Option<f64>| x.map(|x| x.to_string()).unwrap_or_default();
            w.write_record([
                e.value.to_string(),
                r.map(|r| format!("{:?}", r.status)).unwrap_or_else(|| "error".into()),
                e.contained().map(|c| c.to_string()).unwrap_or_default(),
                opt(v.map(|v| v.sup_norm)),
                opt(v.and_then(|v| v.first_exit_time)),
                r.map(|r| {
                    r.fits
                        .iter()
                        .filter_map(|f| f.fit.as_ref().map(|x| x.exponent.to_string()))
                        .collect::<Vec<_>>()
                        .join(";")
                })
                .unwrap_or_default(),
                opt(r.map(|r| r.wall_time_s)),
                e.error.clone().unwrap_or_default(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Runs one experiment per value, each in its own output subdirectory, on
/// a pool of `workers` threads. Results keep the input order regardless of
/// scheduling.
pub fn run_sweep(
    base: &RunConfig,
    kind: RunKind,
    axis: SweepAxis,
    values: &[f64],
    workers: usize,
) -> Result<SweepReport> {
    use rayon::prelude::*;
    let configs = values
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let mut cfg = axis.overrides(v).apply(base.clone())?;
            if let Some(dir) = &base.output.dir {
                cfg.output.dir = Some(dir.join(format!("run_{i:03}")));
            }
            Ok((v, cfg))
        })
        .collect::<Result<Vec<_>>>()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Config(format!("cannot build worker pool: {e}")))?;
    let entries = pool.install(|| {
        configs
            .par_iter()
            .map(|(value, cfg)| match run_one(kind, cfg) {
                Ok(record) => SweepEntry { value: *value, record: Some(record), error: None },
                Err(e) => SweepEntry { value: *value, record: None, error: Some(e.to_string()) },
            })
            .collect()
    });
    let report = SweepReport { kind, axis, entries };
    if let Some(dir) = &base.output.dir {
        std::fs::create_dir_all(dir)?;
        report.write_summary_csv(std::fs::File::create(dir.join("summary.csv"))?)?;
    }
    Ok(report)
}

fn run_one(kind: RunKind, cfg: &RunConfig) -> Result<RunRecord> {
    match kind {
        RunKind::Decay => run_decay_experiment(cfg),
        RunKind::Perturbation => run_perturbation_experiment(cfg),
    }
}
