use serde::{Deserialize, Serialize};

use super::ledger::NormLedger;
use crate::error::{Error, Result};

/// Bookkeeping for the continuity argument on `[t₁, t₂]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContinuityThresholds {
    /// `‖g‖_{H²}`, the perturbation size.
    pub epsilon: f64,
    /// Small-data global threshold for the hand-off at `t₂`.
    pub epsilon0: f64,
    /// Continuity bound, strictly below `1/(16 C₁)`.
    pub epsilon1: f64,
    pub c1: f64,
    pub t1: f64,
    pub t2: f64,
}

impl ContinuityThresholds {
    pub fn new(epsilon: f64, epsilon0: f64, epsilon1: f64, c1: f64, t1: f64, t2: f64) -> Result<Self> {
        let th = ContinuityThresholds {
            epsilon,
            epsilon0,
            epsilon1,
            c1,
            t1,
            t2,
        };
        th.validate()?;
        Ok(th)
    }

    /// `ε₁` set to half its admissible ceiling `1/(16 C₁)`.
    pub fn with_default_epsilon1(epsilon: f64, epsilon0: f64, c1: f64, t1: f64, t2: f64) -> Result<Self> {
        Self::new(epsilon, epsilon0, 0.5 / (16.0 * c1), c1, t1, t2)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if !(self.c1 > 0.0 && self.c1.is_finite()) {
            return bad(format!("C1 must be positive, got {}", self.c1));
        }
        if !(self.epsilon >= 0.0 && self.epsilon0 > 0.0 && self.epsilon1 > 0.0) {
            return bad("epsilon must be nonnegative and epsilon0, epsilon1 positive".into());
        }
        if self.epsilon1 >= 1.0 / (16.0 * self.c1) {
            return bad(format!(
                "epsilon1 = {} must be below 1/(16 C1) = {}",
                self.epsilon1,
                1.0 / (16.0 * self.c1)
            ));
        }
        if !(self.t1 >= 0.0 && self.t2 > self.t1) {
            return bad(format!("need t2 > t1 >= 0, got t1 = {}, t2 = {}", self.t1, self.t2));
        }
        Ok(())
    }

    /// Grönwall envelope `2 exp(C₁ (t − t₁)) ε`.
    pub fn envelope(&self, t: f64) -> f64 {
        2.0 * (self.c1 * (t - self.t1)).exp() * self.epsilon
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonitorStatus {
    Contained,
    Exited,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonitorVerdict {
    pub status: MonitorStatus,
    pub first_exit_time: Option<f64>,
    /// Max of `‖θ₁‖_{H^s}` over the samples in `(t₁, t₂]`.
    pub sup_norm: f64,
    /// `(t₁, T_max]`: the part of the window on which the bound held.
    pub interval_i: (f64, f64),
    /// `‖θ₀(t₂)‖_{H^s} < ε₀/2`, when `θ₀(t₂)` was supplied.
    pub theta0_handoff: Option<bool>,
    /// `‖θ₀(t₂)‖_{H^s} + ‖θ₁(t₂)‖_{H^s} < ε₀`, when `θ₀(t₂)` was supplied.
    pub handoff: Option<bool>,
    /// Samples in `[t₁, t₂]` where `‖θ₁(t)‖_{H^s}` exceeded the Grönwall envelope.
    pub gronwall_violations: usize,
}

impl MonitorVerdict {
    pub fn contained(&self) -> bool {
        self.status == MonitorStatus::Contained
    }
}

/// Tracks the set `I = {T : ‖θ₁(t)‖_{H^s} ≤ ε₁ on [t₁, T]}` over the ledger.
pub fn continuity_monitor(
    ledger: &NormLedger,
    thresholds: &ContinuityThresholds,
    theta0_hs_at_t2: Option<f64>,
) -> Result<MonitorVerdict> {
    thresholds.validate()?;
    let e = ledger.entries();
    let (t1, t2) = (thresholds.t1, thresholds.t2);
    let slack = 1e-9 * t2.max(1.0);
    match (e.first(), e.last()) {
        (Some(first), Some(last)) if first.time <= t1 + slack && last.time >= t2 - slack => {}
        _ => {
            return Err(Error::WindowMismatch(format!(
                "ledger spans {:?}..{:?}, monitor needs [{t1}, {t2}]",
                e.first().map(|x| x.time),
                e.last().map(|x| x.time)
            )))
        }
    }

    let mut sup_norm = 0.0_f64;
    let mut first_exit_time = None;
    let mut last_good = t1;
    let mut gronwall_violations = 0;
    let mut at_t2 = None;
    for entry in e.iter().filter(|x| x.time >= t1 - slack && x.time <= t2 + slack) {
        let norm = entry.hs_theta1;
        if norm > thresholds.envelope(entry.time) * (1.0 + 1e-12) {
            gronwall_violations += 1;
        }
        if entry.time <= t1 + slack {
            continue;
        }
        sup_norm = sup_norm.max(norm);
        at_t2 = Some(norm);
        if first_exit_time.is_none() {
            if norm > thresholds.epsilon1 {
                first_exit_time = Some(entry.time);
            } else {
                last_good = entry.time;
            }
        }
    }

    let (theta0_handoff, handoff) = match theta0_hs_at_t2 {
        Some(h0) => (
            Some(h0 < 0.5 * thresholds.epsilon0),
            Some(h0 + at_t2.unwrap_or(0.0) < thresholds.epsilon0),
        ),
        None => (None, None),
    };

    Ok(MonitorVerdict {
        status: if first_exit_time.is_some() {
            MonitorStatus::Exited
        } else {
            MonitorStatus::Contained
        },
        first_exit_time,
        sup_norm,
        interval_i: (t1, last_good),
        theta0_handoff,
        handoff,
        gronwall_violations,
    })
}
