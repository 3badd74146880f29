//! Fourier-multiplier operators.
//!
//! Conventions shared by every operator here:
//! * `Λ^a` (with `a ≠ 0`) and the Riesz transforms annihilate the zero mode.
//! * Derivative-type operators (gradient, Riesz) annihilate every mode on a
//!   Nyquist row or column, where the odd symbol has no real-valued
//!   extension. This keeps outputs real and makes `k·R^⊥θ̂ = 0` exact.

use rustfft::num_complex::Complex64;

use super::field::{SpectralField, VectorField};
use super::grid::GridSpec;
use crate::error::{Error, Result};

/// `|k|^a` with the zero-mode convention above.
pub fn fractional_symbol(k1: f64, k2: f64, a: f64) -> f64 {
    if a == 0.0 {
        return 1.0;
    }
    let k2sum = k1 * k1 + k2 * k2;
    if k2sum == 0.0 {
        0.0
    } else {
        k2sum.powf(0.5 * a)
    }
}

/// Per-mode `|k|` in storage order.
pub fn wavenumber_magnitudes(grid: &GridSpec) -> Vec<f64> {
    grid.wavevectors().map(|(k1, k2)| k1.hypot(k2)).collect()
}

/// `Λ^a f`, the multiplier `|k|^a`.
pub fn fractional_laplacian(field: &SpectralField, a: f64) -> Result<SpectralField> {
    if !a.is_finite() {
        return Err(Error::InvalidParameter(format!("non-finite exponent {a}")));
    }
    let g = *field.grid();
    Ok(field.map_symbol(|i1, i2| fractional_symbol(g.wavenumber(i1), g.wavenumber(i2), a)))
}

fn on_nyquist_line(g: &GridSpec, i1: usize, i2: usize) -> bool {
    g.is_nyquist(i1) || g.is_nyquist(i2)
}

fn apply_imaginary_symbol(
    field: &SpectralField,
    symbol: impl Fn(f64, f64) -> f64,
) -> SpectralField {
    let g = *field.grid();
    let n = g.n();
    let mut out = field.coeffs().to_vec();
    for i1 in 0..n {
        let k1 = g.wavenumber(i1);
        for i2 in 0..n {
            let c = &mut out[i1 * n + i2];
            if on_nyquist_line(&g, i1, i2) {
                *c = Complex64::new(0.0, 0.0);
            } else {
                *c *= Complex64::new(0.0, symbol(k1, g.wavenumber(i2)));
            }
        }
    }
    SpectralField::from_raw(g, out)
}

/// `R^⊥θ = (R₂θ, −R₁θ)` with symbols `(i k₂/|k|, −i k₁/|k|)`.
pub fn riesz_perp(field: &SpectralField) -> VectorField {
    let inv = |k1: f64, k2: f64| {
        let m = k1.hypot(k2);
        if m == 0.0 {
            0.0
        } else {
            1.0 / m
        }
    };
    VectorField {
        u1: apply_imaginary_symbol(field, |k1, k2| k2 * inv(k1, k2)),
        u2: apply_imaginary_symbol(field, |k1, k2| -k1 * inv(k1, k2)),
    }
}

/// `∇f` with symbols `(i k₁, i k₂)`.
pub fn gradient(field: &SpectralField) -> VectorField {
    VectorField {
        u1: apply_imaginary_symbol(field, |k1, _| k1),
        u2: apply_imaginary_symbol(field, |_, k2| k2),
    }
}

/// True when mode `m` lies in the retained band of the two-thirds rule.
pub fn in_retained_band(n: usize, m: i64) -> bool {
    3 * m.unsigned_abs() as usize <= n
}

/// Two-thirds rule: zero every mode with `|m₁| > n/3` or `|m₂| > n/3`.
pub fn dealias(field: &SpectralField) -> SpectralField {
    let g = *field.grid();
    let n = g.n();
    let keep: Vec<bool> = (0..n).map(|j| in_retained_band(n, g.mode(j))).collect();
    field.map_symbol(|i1, i2| if keep[i1] && keep[i2] { 1.0 } else { 0.0 })
}

pub fn is_dealiased(field: &SpectralField) -> bool {
    let g = *field.grid();
    let n = g.n();
    (0..n).all(|i1| {
        (0..n).all(|i2| {
            (in_retained_band(n, g.mode(i1)) && in_retained_band(n, g.mode(i2)))
                || field.coeffs()[i1 * n + i2] == Complex64::new(0.0, 0.0)
        })
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::spectral::transform::{sample, to_physical, to_spectral};

    fn torus(n: usize) -> GridSpec {
        GridSpec::new(n, 2.0 * PI).unwrap()
    }

    fn max_diff(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    }

    #[test]
    fn unit_mode_is_eigenfunction() {
        let g = torus(16);
        let f = to_spectral(&sample(&g, |x, _| x.cos()), &g).unwrap();
        for a in [0.3, 0.5, 1.7, -0.4] {
            let out = to_physical(&fractional_laplacian(&f, a).unwrap()).unwrap();
            assert!(max_diff(&out, &sample(&g, |x, _| x.cos())) < 1e-14);
        }
    }

    #[test]
    fn five_mode_scales_by_sqrt5() {
        let g = torus(16);
        let f = to_spectral(&sample(&g, |x, y| (3.0 * x + 4.0 * y).cos()), &g).unwrap();
        let out = to_physical(&fractional_laplacian(&f, 0.5).unwrap()).unwrap();
        let expect = sample(&g, |x, y| 5f64.sqrt() * (3.0 * x + 4.0 * y).cos());
        assert!(max_diff(&out, &expect) < 1e-13);
        assert!((5f64.sqrt() - 2.2360680).abs() < 1e-7);
    }

    #[test]
    fn nonfinite_exponent_rejected() {
        let g = torus(8);
        assert!(fractional_laplacian(&SpectralField::zeros(g), f64::NAN).is_err());
    }

    #[test]
    fn zero_mode_annihilated_for_nonzero_exponent() {
        let g = torus(8);
        let f = SpectralField::from_modes(g, &[(0, 0, Complex64::new(3.0, 0.0))]);
        assert_eq!(fractional_laplacian(&f, 0.7).unwrap().mean(), 0.0);
        assert_eq!(fractional_laplacian(&f, 0.0).unwrap().mean(), 3.0);
    }

    #[test]
    fn riesz_of_sine() {
        let g = torus(16);
        let f = to_spectral(&sample(&g, |x, _| x.sin()), &g).unwrap();
        let u = riesz_perp(&f);
        assert!(to_physical(&u.u1).unwrap().iter().all(|v| v.abs() < 1e-15));
        let u2 = to_physical(&u.u2).unwrap();
        assert!(max_diff(&u2, &sample(&g, |x, _| -x.cos())) < 1e-15);
    }

    #[test]
    fn riesz_and_gradient_kill_constants() {
        let g = torus(8);
        let f = SpectralField::from_modes(g, &[(0, 0, Complex64::new(2.0, 0.0))]);
        let u = riesz_perp(&f);
        assert_eq!(u.u1.max_abs() + u.u2.max_abs(), 0.0);
        let d = gradient(&f);
        assert_eq!(d.u1.max_abs() + d.u2.max_abs(), 0.0);
    }

    #[test]
    fn gradient_of_cosine() {
        let g = torus(16);
        let f = to_spectral(&sample(&g, |x, _| x.cos()), &g).unwrap();
        let d = gradient(&f);
        assert!(max_diff(&to_physical(&d.u1).unwrap(), &sample(&g, |x, _| -x.sin())) < 1e-14);
        assert!(to_physical(&d.u2).unwrap().iter().all(|v| v.abs() < 1e-15));
    }

    #[test]
    fn dealias_band_edges() {
        let g = GridSpec::new(16, 1.0).unwrap();
        let inside = SpectralField::from_modes(g, &[(5, -5, Complex64::new(1.0, 0.5))]);
        assert_eq!(dealias(&inside), inside);
        let outside = SpectralField::from_modes(g, &[(7, 0, Complex64::new(1.0, 0.0))]);
        assert_eq!(dealias(&outside).max_abs(), 0.0);
        let nyq = SpectralField::from_modes(g, &[(-8, 1, Complex64::new(1.0, 0.0))]);
        assert_eq!(dealias(&nyq).max_abs(), 0.0);
        assert!(is_dealiased(&inside));
        assert!(!is_dealiased(&outside));
    }
}
