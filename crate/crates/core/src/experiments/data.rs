use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::diagnostics::sobolev_norm;
use crate::error::{Error, Result};
use crate::spectral::{sample, to_spectral, Complex64, GridSpec, SpectralField};

/// `A·exp(−|x − c|²/w²)` about the box center, transformed to spectral.
pub fn make_radial_data(amplitude: f64, width: f64, grid: &GridSpec) -> Result<SpectralField> {
    if !(amplitude >= 0.0 && amplitude.is_finite()) {
        return Err(Error::InvalidParameter(format!("amplitude must be ≥ 0, got {amplitude}")));
    }
    if !(width > 0.0 && width.is_finite()) {
        return Err(Error::InvalidParameter(format!("width must be positive, got {width}")));
    }
    let across = 2.0 * width / grid.dx();
    if across < 4.0 {
        return Err(Error::InvalidParameter(format!(
            "width {width} spans only {across:.2} grid points across the core (need 4)"
        )));
    }
    let c = grid.center();
    let values = sample(grid, |x, y| {
        let r2 = (x - c).powi(2) + (y - c).powi(2);
        amplitude * (-r2 / (width * width)).exp()
    });
    to_spectral(&values, grid)
}

/// Annulus `min ≤ |m| ≤ max` of integer modes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeBand {
    pub min: f64,
    pub max: f64,
}

impl Default for ModeBand {
    fn default() -> Self {
        ModeBand { min: 2.0, max: 16.0 }
    }
}

impl ModeBand {
    pub fn contains(&self, m1: i64, m2: i64) -> bool {
        let r = ((m1 * m1 + m2 * m2) as f64).sqrt();
        r >= self.min && r <= self.max
    }
}

/// Seeded random field supported in `band`, rescaled so that its discrete
/// `H²` norm is exactly `epsilon`.
pub fn make_perturbation(epsilon: f64, band: ModeBand, seed: u64, grid: &GridSpec) -> Result<SpectralField> {
    if !(epsilon >= 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidParameter(format!("epsilon must be ≥ 0, got {epsilon}")));
    }
    if epsilon == 0.0 {
        return Ok(SpectralField::zeros(*grid));
    }
    let n = grid.n();
    let half = (n / 2) as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut modes = Vec::new();
    // one representative per conjugate pair, skipping the Nyquist lines
    for m1 in 0..half {
        for m2 in (1 - half)..half {
            if (m1 == 0 && m2 <= 0) || !band.contains(m1, m2) {
                continue;
            }
            let re: f64 = rng.random_range(-1.0..1.0);
            let im: f64 = rng.random_range(-1.0..1.0);
            modes.push((m1, m2, Complex64::new(re, im)));
        }
    }
    if modes.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "perturbation band {band:?} contains no modes on this grid"
        )));
    }
    let raw = SpectralField::from_modes(*grid, &modes);
    let norm = sobolev_norm(&raw, 2.0, false)?;
    Ok(raw.scaled(epsilon / norm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::to_physical;

    #[test]
    fn zero_amplitude_gives_zero_field() {
        let g = GridSpec::new(64, 100.0).unwrap();
        assert_eq!(make_radial_data(0.0, 5.0, &g).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn narrow_core_rejected() {
        let g = GridSpec::new(64, 100.0).unwrap();
        assert!(make_radial_data(1.0, 1.0, &g).is_err());
        assert!(make_radial_data(1.0, 3.2, &g).is_ok());
    }

    #[test]
    fn default_gaussian_is_peaked_and_fourfold_symmetric() {
        let g = GridSpec::new(256, 100.0).unwrap();
        let f = make_radial_data(1.0, 2.0, &g).unwrap();
        let v = to_physical(&f).unwrap();
        let n = g.n();
        let c = n / 2;
        assert!((v[c * n + c] - 1.0).abs() < 1e-12);
        let max = v.iter().cloned().fold(f64::MIN, f64::max);
        assert!((max - 1.0).abs() < 1e-12);
        assert!(v.iter().all(|x| *x > -1e-12));
        let mut worst = 0.0_f64;
        for i in 1..n {
            for j in 1..n {
                let a = v[i * n + j];
                // reflections about the center and the diagonal swap
                for b in [v[(n - i) * n + j], v[i * n + (n - j)], v[j * n + i]] {
                    worst = worst.max((a - b).abs());
                }
            }
        }
        assert!(worst < 1e-14, "{worst}");
    }

    #[test]
    fn perturbation_has_exact_h2_norm() {
        let g = GridSpec::new(64, 100.0).unwrap();
        for seed in [0, 1, 99] {
            let p = make_perturbation(1e-3, ModeBand::default(), seed, &g).unwrap();
            let h2 = sobolev_norm(&p, 2.0, false).unwrap();
            assert!((h2 - 1e-3).abs() < 1e-12 * 1e-3);
            assert_eq!(p.symmetry_defect(), 0.0);
        }
        assert_eq!(make_perturbation(0.0, ModeBand::default(), 1, &g).unwrap().max_abs(), 0.0);
        let empty = ModeBand { min: 3.2, max: 3.3 };
        assert!(make_perturbation(1e-3, empty, 1, &g).is_err());
    }

    #[test]
    fn perturbation_is_deterministic() {
        let g = GridSpec::new(32, 10.0).unwrap();
        let a = make_perturbation(1e-3, ModeBand::default(), 7, &g).unwrap();
        let b = make_perturbation(1e-3, ModeBand::default(), 7, &g).unwrap();
        let c = make_perturbation(1e-3, ModeBand::default(), 8, &g).unwrap();
        assert_eq!(a, b);
        let cos = a
            .coeffs()
            .iter()
            .zip(c.coeffs())
            .map(|(x, y)| (x * y.conj()).re)
            .sum::<f64>()
            / (a.coeffs().iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
                * c.coeffs().iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt());
        assert!(cos.abs() < 0.9, "seeds 7 and 8 too aligned: {cos}");
    }
}
