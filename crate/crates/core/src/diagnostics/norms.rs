use crate::error::{Error, Result};
use crate::spectral::{fractional_symbol, to_physical, SpectralField};

/// `sqrt(L² Σ_k |k|^{2s} |c(k)|²)`; `s = 0` keeps the zero mode.
pub(crate) fn homogeneous(field: &SpectralField, s: f64) -> f64 {
    let g = *field.grid();
    let area = g.box_length() * g.box_length();
    let sum: f64 = g
        .wavevectors()
        .zip(field.coeffs())
        .map(|((k1, k2), c)| {
            let w = fractional_symbol(k1, k2, s);
            w * w * c.norm_sqr()
        })
        .sum();
    (sum * area).sqrt()
}

/// Sobolev norm under the Parseval convention scaled to match physical
/// integrals: `‖Λ^s f‖_{L²}` when `homogeneous`, otherwise
/// `sqrt(‖f‖²_{L²} + ‖Λ^s f‖²_{L²})`.
pub fn sobolev_norm(field: &SpectralField, s: f64, homogeneous_only: bool) -> Result<f64> {
    if !(s >= 0.0 && s.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "Sobolev index must be nonnegative, got {s}"
        )));
    }
    let dot = homogeneous(field, s);
    if homogeneous_only {
        Ok(dot)
    } else {
        Ok(dot.hypot(homogeneous(field, 0.0)))
    }
}

/// L² norm with the zero mode removed.
pub fn mean_free_l2(field: &SpectralField) -> f64 {
    let base = homogeneous(field, 0.0);
    let mean_part = field.mean().abs() * field.grid().box_length();
    (base * base - mean_part * mean_part).max(0.0).sqrt()
}

/// Grid quadrature of `|f|^p` with cell-area weights; grid max for `p = ∞`.
pub fn lp_norm(field: &SpectralField, p: f64) -> Result<f64> {
    let values = to_physical(field)?;
    lp_norm_of_samples(&values, field.grid().cell_area(), p)
}

pub(crate) fn lp_norm_of_samples(values: &[f64], cell_area: f64, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidParameter(format!("Lebesgue exponent must be ≥ 1, got {p}")));
    }
    if p.is_infinite() {
        return Ok(values.iter().map(|v| v.abs()).fold(0.0, f64::max));
    }
    let scale = values.iter().map(|v| v.abs()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Ok(0.0);
    }
    // factor out the max so large p does not overflow
    let sum: f64 = values.iter().map(|v| (v.abs() / scale).powf(p)).sum();
    Ok(scale * (sum * cell_area).powf(1.0 / p))
}
