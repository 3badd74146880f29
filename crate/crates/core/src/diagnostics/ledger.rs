use serde::{Deserialize, Serialize};

use super::norms::{homogeneous, lp_norm};
use crate::dynamics::SolverParams;
use crate::error::{Error, Result};
use crate::heat::monotonicity_violations;
use crate::spectral::SpectralField;

/// Column order of the ledger CSV, identical to the field order below.
pub const LEDGER_COLUMNS: [&str; 9] = [
    "time",
    "l2_theta1",
    "hs_dot_theta1",
    "hs_gamma2_theta1",
    "gamma2_theta1",
    "hs_gamma2_theta0",
    "hs_gamma2_sigma_theta0",
    "linf_theta0",
    "hs_theta1",
];

/// Every norm entering the perturbation energy estimates at one time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub time: f64,
    /// `‖θ₁‖_{L²}`
    pub l2_theta1: f64,
    /// `‖Λ^s θ₁‖_{L²}`
    pub hs_dot_theta1: f64,
    /// `‖Λ^{s+γ/2} θ₁‖_{L²}`
    pub hs_gamma2_theta1: f64,
    /// `‖Λ^{γ/2} θ₁‖_{L²}`
    pub gamma2_theta1: f64,
    /// `‖Λ^{s+γ/2} θ₀‖_{L²}`
    pub hs_gamma2_theta0: f64,
    /// `‖Λ^{s+γ/2+σ} θ₀‖_{L²}`
    pub hs_gamma2_sigma_theta0: f64,
    /// grid max of `|θ₀|`
    pub linf_theta0: f64,
    /// `‖θ₁‖_{H^s} = sqrt(‖θ₁‖² + ‖Λ^sθ₁‖²)`
    pub hs_theta1: f64,
}

/// The three right-hand-side products of the `Ḣ^s` energy inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lemma1Products {
    /// `‖Λ^sθ₁‖² ‖Λ^{s+γ/2}θ₀‖²`
    pub transport: f64,
    /// `(‖θ₁‖² + ‖Λ^sθ₁‖²) ‖Λ^{s+γ/2+σ}θ₀‖²`
    pub low_order: f64,
    /// `‖Λ^sθ₁‖ ‖Λ^{s+γ/2}θ₁‖²`
    pub cubic: f64,
}

impl Lemma1Products {
    pub fn sum(&self) -> f64 {
        self.transport + self.low_order + self.cubic
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.transport, self.low_order, self.cubic]
    }
}

impl LedgerEntry {
    pub fn values(&self) -> [f64; 9] {
        [
            self.time,
            self.l2_theta1,
            self.hs_dot_theta1,
            self.hs_gamma2_theta1,
            self.gamma2_theta1,
            self.hs_gamma2_theta0,
            self.hs_gamma2_sigma_theta0,
            self.linf_theta0,
            self.hs_theta1,
        ]
    }

    pub fn from_values(v: [f64; 9]) -> Self {
        LedgerEntry {
            time: v[0],
            l2_theta1: v[1],
            hs_dot_theta1: v[2],
            hs_gamma2_theta1: v[3],
            gamma2_theta1: v[4],
            hs_gamma2_theta0: v[5],
            hs_gamma2_sigma_theta0: v[6],
            linf_theta0: v[7],
            hs_theta1: v[8],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.values();
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite(format!("ledger entry at t = {}", self.time)));
        }
        if v[1..].iter().any(|x| *x < 0.0) {
            return Err(Error::Ledger(format!("negative norm at t = {}", self.time)));
        }
        Ok(())
    }

    pub fn products(&self) -> Lemma1Products {
        let a = self.hs_dot_theta1;
        Lemma1Products {
            transport: a * a * self.hs_gamma2_theta0 * self.hs_gamma2_theta0,
            low_order: (self.l2_theta1 * self.l2_theta1 + a * a)
                * self.hs_gamma2_sigma_theta0
                * self.hs_gamma2_sigma_theta0,
            cubic: a * self.hs_gamma2_theta1 * self.hs_gamma2_theta1,
        }
    }
}

/// Computes one ledger entry and the three right-hand-side products.
pub fn lemma1_ledger(
    theta0: &SpectralField,
    theta1: &SpectralField,
    params: &SolverParams,
    time: f64,
) -> Result<(LedgerEntry, Lemma1Products)> {
    theta0.ensure_same_grid(theta1)?;
    let (gamma, s, sigma) = (params.gamma(), params.s(), params.sigma());
    let l2 = homogeneous(theta1, 0.0);
    let hs_dot = homogeneous(theta1, s);
    let entry = LedgerEntry {
        time,
        l2_theta1: l2,
        hs_dot_theta1: hs_dot,
        hs_gamma2_theta1: homogeneous(theta1, s + 0.5 * gamma),
        gamma2_theta1: homogeneous(theta1, 0.5 * gamma),
        hs_gamma2_theta0: homogeneous(theta0, s + 0.5 * gamma),
        hs_gamma2_sigma_theta0: homogeneous(theta0, s + 0.5 * gamma + sigma),
        linf_theta0: lp_norm(theta0, f64::INFINITY)?,
        hs_theta1: l2.hypot(hs_dot),
    };
    entry.validate()?;
    Ok((entry, entry.products()))
}

/// Time-ordered ledger, appended to by a single trajectory owner.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct NormLedger {
    entries: Vec<LedgerEntry>,
}

impl NormLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: Vec<LedgerEntry>) -> Result<Self> {
        let mut ledger = NormLedger::new();
        for e in entries {
            ledger.push(e)?;
        }
        Ok(ledger)
    }

    pub fn push(&mut self, entry: LedgerEntry) -> Result<()> {
        entry.validate()?;
        if let Some(last) = self.entries.last() {
            if entry.time <= last.time {
                return Err(Error::Ledger(format!(
                    "times must increase: {} after {}",
                    entry.time, last.time
                )));
            }
        }
        self.entries.push(entry);
        Ok(())
    }

    pub fn entries(&self) -> &[LedgerEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn times(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.time).collect()
    }
}

/// Norms of `θ₀` whose monotonicity in time follows from positivity of
/// the fractional heat kernel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Theta0Sample {
    pub time: f64,
    pub l2: f64,
    pub hs_dot: f64,
    pub linf: f64,
    pub hs: f64,
}

impl Theta0Sample {
    pub fn measure(theta0: &SpectralField, s: f64, time: f64) -> Result<Self> {
        let l2 = homogeneous(theta0, 0.0);
        let hs_dot = homogeneous(theta0, s);
        Ok(Theta0Sample {
            time,
            l2,
            hs_dot,
            linf: lp_norm(theta0, f64::INFINITY)?,
            hs: l2.hypot(hs_dot),
        })
    }
}

pub const THETA0_COLUMNS: [&str; 5] = ["time", "l2_theta0", "hs_dot_theta0", "linf_theta0", "hs_theta0"];

/// Relative slack allowed before a sample-to-sample increase counts as a
/// monotonicity violation (roundoff only).
pub const MONOTONE_SLACK: f64 = 1e-12;

/// Number of increases in the L², `Ḣ^s` and grid-L^∞ columns.
pub fn theta0_monotonicity_violations(samples: &[Theta0Sample]) -> usize {
    let col = |f: fn(&Theta0Sample) -> f64| samples.iter().map(f).collect::<Vec<_>>();
    monotonicity_violations(&col(|s| s.l2), MONOTONE_SLACK)
        + monotonicity_violations(&col(|s| s.hs_dot), MONOTONE_SLACK)
        + monotonicity_violations(&col(|s| s.linf), MONOTONE_SLACK)
}
