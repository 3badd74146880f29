use serde::{Deserialize, Serialize};

use super::ledger::{LedgerEntry, NormLedger};
use crate::error::{Error, Result};

/// Floor on the right-hand side when forming implied constants.
pub const RHS_FLOOR: f64 = 1e-30;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualSample {
    pub time: f64,
    /// `d/dt[½‖Λ^sθ₁‖²] + ¼‖Λ^{s+γ/2}θ₁‖²`
    pub lhs: f64,
    pub rhs_terms: [f64; 3],
    /// `max(lhs, 0) / max(Σ rhs_terms, RHS_FLOOR)`
    pub implied_constant: f64,
}

fn check_uniform(entries: &[LedgerEntry], dt: f64) -> Result<()> {
    if entries.len() < 3 {
        return Err(Error::InsufficientSamples(format!(
            "{} ledger samples, need at least 3 for centered differences",
            entries.len()
        )));
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidParameter(format!("sample spacing must be positive, got {dt}")));
    }
    for w in entries.windows(2) {
        let gap = w[1].time - w[0].time;
        if (gap - dt).abs() > 1e-6 * dt {
            return Err(Error::Ledger(format!(
                "ledger spacing {gap} at t = {} differs from {dt}",
                w[0].time
            )));
        }
    }
    Ok(())
}

/// Centered-difference check of the `Ḣ^s` energy inequality at every
/// interior ledger sample. The implied constants are reported, not judged.
pub fn lemma1_residual(ledger: &NormLedger, dt_sample: f64) -> Result<Vec<ResidualSample>> {
    let e = ledger.entries();
    check_uniform(e, dt_sample)?;
    let energy = |x: &LedgerEntry| 0.5 * x.hs_dot_theta1 * x.hs_dot_theta1;
    Ok((1..e.len() - 1)
        .map(|i| {
            let d = (energy(&e[i + 1]) - energy(&e[i - 1])) / (2.0 * dt_sample);
            let lhs = d + 0.25 * e[i].hs_gamma2_theta1 * e[i].hs_gamma2_theta1;
            let p = e[i].products();
            ResidualSample {
                time: e[i].time,
                lhs,
                rhs_terms: p.as_array(),
                implied_constant: lhs.max(0.0) / p.sum().max(RHS_FLOOR),
            }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthSample {
    pub time: f64,
    /// `d/dt[½‖θ₁‖²_{H^s}] + ¼(‖Λ^{γ/2}θ₁‖² + ‖Λ^{s+γ/2}θ₁‖²)`
    pub lhs: f64,
    /// `‖θ₁‖²_{H^s} + ‖Λ^sθ₁‖ ‖Λ^{s+γ/2}θ₁‖²`
    pub rhs: f64,
    pub implied_c1: f64,
}

/// Implied constant of the combined `H^s` inequality used by the
/// continuity argument, at every interior ledger sample.
pub fn hs_growth_constants(ledger: &NormLedger, dt_sample: f64) -> Result<Vec<GrowthSample>> {
    let e = ledger.entries();
    check_uniform(e, dt_sample)?;
    let energy = |x: &LedgerEntry| 0.5 * x.hs_theta1 * x.hs_theta1;
    Ok((1..e.len() - 1)
        .map(|i| {
            let x = &e[i];
            let d = (energy(&e[i + 1]) - energy(&e[i - 1])) / (2.0 * dt_sample);
            let lhs = d + 0.25 * (x.gamma2_theta1.powi(2) + x.hs_gamma2_theta1.powi(2));
            let rhs = x.hs_theta1.powi(2) + x.hs_dot_theta1 * x.hs_gamma2_theta1.powi(2);
            GrowthSample {
                time: x.time,
                lhs,
                rhs,
                implied_c1: lhs.max(0.0) / rhs.max(RHS_FLOOR),
            }
        })
        .collect())
}
