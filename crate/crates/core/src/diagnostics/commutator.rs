use serde::{Deserialize, Serialize};

use super::norms::lp_norm_of_samples;
use crate::error::{Error, Result};
use crate::spectral::{fractional_laplacian, gradient, spectral_unchecked, to_physical, SpectralField};

/// Below this the commutator is treated as identically zero.
pub const DEGENERATE_TOLERANCE: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CommutatorReport {
    /// `‖Λ^s(hk) − hΛ^s k‖_{L²}`
    pub lhs: f64,
    /// `‖∇h‖_{L^{4/γ}}‖Λ^{s−1}k‖_{L^{4/(2−γ)}} + ‖Λ^s h‖_{L^{4/(2−γ)}}‖k‖_{L^{4/γ}}`
    pub rhs: f64,
    pub ratio: f64,
    /// Set when both sides vanish and the ratio is reported as 0.
    pub degenerate: bool,
}

fn product(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x * y).collect()
}

/// Kato–Ponce commutator estimate for scalar `h`, `k`.
///
/// Both inputs are zero-padded to twice the resolution, so products of
/// dealiased inputs are represented exactly. The commutator does not see
/// the mean of `h`, which is removed first; for constant `h` the left side
/// is exactly zero.
pub fn commutator_check(
    h: &SpectralField,
    k: &SpectralField,
    s: f64,
    gamma: f64,
) -> Result<CommutatorReport> {
    h.ensure_same_grid(k)?;
    crate::heat::check_gamma(gamma)?;
    let mut h = h.clone();
    h.coeffs_mut()[0] = Default::default();
    let (h, k) = (h.padded(2)?, k.padded(2)?);
    let grid = *h.grid();
    let area = grid.cell_area();

    let h_phys = to_physical(&h)?;
    let k_phys = to_physical(&k)?;
    let hk = spectral_unchecked(&product(&h_phys, &k_phys), &grid);
    let first = to_physical(&fractional_laplacian(&hk, s)?)?;
    let second = product(&h_phys, &to_physical(&fractional_laplacian(&k, s)?)?);
    let diff: Vec<f64> = first.iter().zip(&second).map(|(a, b)| a - b).collect();
    let lhs = lp_norm_of_samples(&diff, area, 2.0)?;

    let p_hi = 4.0 / gamma;
    let p_lo = 4.0 / (2.0 - gamma);
    let grad = gradient(&h);
    let (g1, g2) = (to_physical(&grad.u1)?, to_physical(&grad.u2)?);
    let grad_mag: Vec<f64> = g1.iter().zip(&g2).map(|(a, b)| a.hypot(*b)).collect();
    let rhs = lp_norm_of_samples(&grad_mag, area, p_hi)?
        * lp_norm_of_samples(&to_physical(&fractional_laplacian(&k, s - 1.0)?)?, area, p_lo)?
        + lp_norm_of_samples(&to_physical(&fractional_laplacian(&h, s)?)?, area, p_lo)?
            * lp_norm_of_samples(&k_phys, area, p_hi)?;

    if rhs == 0.0 || rhs < DEGENERATE_TOLERANCE {
        if lhs <= DEGENERATE_TOLERANCE {
            return Ok(CommutatorReport {
                lhs,
                rhs,
                ratio: 0.0,
                degenerate: true,
            });
        }
        return Err(Error::Degenerate(format!(
            "commutator right-hand side vanishes while left-hand side is {lhs:e}"
        )));
    }
    Ok(CommutatorReport {
        lhs,
        rhs,
        ratio: lhs / rhs,
        degenerate: false,
    })
}
