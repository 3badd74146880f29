//! Exact fractional heat semigroup `e^{−tΛ^γ}` and power-law decay fits.

use serde::{Deserialize, Serialize};

use crate::diagnostics::{mean_free_l2, sobolev_norm};
use crate::error::{Error, Result};
use crate::spectral::{fractional_symbol, SpectralField};

pub(crate) fn check_gamma(gamma: f64) -> Result<()> {
    if gamma > 0.0 && gamma < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("gamma must lie in (0, 1), got {gamma}")))
    }
}

/// Multiplies each coefficient by `exp(−|k|^γ t)`.
pub fn semigroup_apply(field: &SpectralField, t: f64, gamma: f64) -> Result<SpectralField> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter(format!("time must be nonnegative, got {t}")));
    }
    check_gamma(gamma)?;
    let g = *field.grid();
    Ok(field.map_symbol(|i1, i2| {
        let rate = fractional_symbol(g.wavenumber(i1), g.wavenumber(i2), gamma);
        (-rate * t).exp()
    }))
}

/// `θ₀(t) = K_γ(t) ∗ f`, the radial part of the decomposition.
pub fn radial_heat_solution(f: &SpectralField, t: f64, gamma: f64) -> Result<SpectralField> {
    semigroup_apply(f, t, gamma)
}

/// Which norm a decay series tracks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecayNorm {
    /// `‖e^{−tΛ^γ}f‖_{L²}` of the mean-free part. On the periodic box the
    /// mean of integrable data never decays and is a box artifact.
    L2,
    /// `‖e^{−tΛ^γ}f‖_{Ḣ^s}`.
    HomogeneousSobolev { s: f64 },
}

impl DecayNorm {
    pub fn label(&self) -> String {
        match self {
            DecayNorm::L2 => "L2 (mean-free)".to_string(),
            DecayNorm::HomogeneousSobolev { s } => format!("Hdot^{s}"),
        }
    }

    /// The sharp rate exponents: `−(2/γ)(1/r − 1/2)` at `r = 1` for the L²
    /// norm of integrable data and `−s/γ` for `Ḣ^s` of L² data.
    pub fn target_exponent(&self, gamma: f64) -> f64 {
        match self {
            DecayNorm::L2 => -(2.0 / gamma) * (1.0 - 0.5),
            DecayNorm::HomogeneousSobolev { s } => -s / gamma,
        }
    }

    pub fn evaluate(&self, field: &SpectralField) -> Result<f64> {
        match self {
            DecayNorm::L2 => Ok(mean_free_l2(field)),
            DecayNorm::HomogeneousSobolev { s } => sobolev_norm(field, *s, true),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecaySeries {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub norm_label: String,
}

/// Evaluates `norm(e^{−tΛ^γ} f)` at each of `times`.
pub fn decay_series(
    f: &SpectralField,
    gamma: f64,
    norm: DecayNorm,
    times: &[f64],
) -> Result<DecaySeries> {
    if times.is_empty() {
        return Err(Error::InsufficientSamples("empty time list".into()));
    }
    if times.iter().any(|t| !(*t > 0.0 && t.is_finite())) {
        return Err(Error::InvalidParameter("decay times must be positive".into()));
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("decay times must be strictly increasing".into()));
    }
    let values = times
        .iter()
        .map(|&t| norm.evaluate(&semigroup_apply(f, t, gamma)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(DecaySeries {
        times: times.to_vec(),
        values,
        norm_label: norm.label(),
    })
}

/// `count` geometrically spaced times spanning `[t_min, t_max]`.
pub fn geometric_times(t_min: f64, t_max: f64, count: usize) -> Vec<f64> {
    assert!(count >= 2 && t_min > 0.0 && t_max > t_min);
    let ratio = (t_max / t_min).ln() / (count - 1) as f64;
    let mut ts: Vec<f64> = (0..count).map(|i| t_min * (ratio * i as f64).exp()).collect();
    ts[count - 1] = t_max;
    ts
}

/// Window on which an integrable bump of width `width` has forgotten its
/// profile yet the periodic box of side `box_length` is not felt:
/// from kernel scale `t^{1/γ} = 10·width` up to the time at which the
/// characteristic wavenumber `(γt)^{−1/γ}` falls to four lattice spacings.
pub fn kernel_dominated_window(gamma: f64, width: f64, box_length: f64) -> (f64, f64) {
    let t_min = (10.0 * width).powf(gamma);
    let lattice = 2.0 * std::f64::consts::PI / box_length;
    let t_max = (4.0 * lattice).powf(-gamma) / gamma;
    (t_min, t_max)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub exponent: f64,
    pub prefactor: f64,
    /// Max `|value / fit − 1|` over the window.
    pub residual: f64,
    pub window: (f64, f64),
    pub samples: usize,
}

impl PowerLawFit {
    pub fn predict(&self, t: f64) -> f64 {
        self.prefactor * t.powf(self.exponent)
    }
}

/// Least-squares line through `(ln t, ln value)` for samples in `window`.
pub fn fit_power_law(series: &DecaySeries, window: (f64, f64)) -> Result<PowerLawFit> {
    let (lo, hi) = window;
    let slack = 1e-12 * hi.abs().max(1.0);
    let pts: Vec<(f64, f64)> = series
        .times
        .iter()
        .zip(&series.values)
        .filter(|(t, _)| **t >= lo - slack && **t <= hi + slack)
        .map(|(t, v)| (*t, *v))
        .collect();
    if pts.len() < 5 {
        return Err(Error::InsufficientSamples(format!(
            "{} samples in window [{lo}, {hi}], need at least 5",
            pts.len()
        )));
    }
    if let Some(&(t, value)) = pts.iter().find(|(_, v)| !(*v > 0.0)) {
        return Err(Error::NonPositive { t, value });
    }
    let count = pts.len() as f64;
    let (sx, sy) = pts
        .iter()
        .fold((0.0, 0.0), |(a, b), (t, v)| (a + t.ln(), b + v.ln()));
    let (mx, my) = (sx / count, sy / count);
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for (t, v) in &pts {
        let dx = t.ln() - mx;
        sxx += dx * dx;
        sxy += dx * (v.ln() - my);
    }
    if sxx == 0.0 {
        return Err(Error::Degenerate("all fit times coincide".into()));
    }
    let exponent = sxy / sxx;
    let log_prefactor = my - exponent * mx;
    let residual = pts
        .iter()
        .map(|(t, v)| ((v.ln() - log_prefactor - exponent * t.ln()).exp() - 1.0).abs())
        .fold(0.0, f64::max);
    Ok(PowerLawFit {
        exponent,
        prefactor: log_prefactor.exp(),
        residual,
        window,
        samples: pts.len(),
    })
}

/// Counts sample-to-sample increases (beyond `rel_tol` of the earlier value).
pub fn monotonicity_violations(values: &[f64], rel_tol: f64) -> usize {
    values
        .windows(2)
        .filter(|w| w[1] > w[0] + rel_tol * w[0].abs())
        .count()
}
