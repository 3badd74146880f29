use std::ops::{Add, Mul, Neg, Sub};

use rustfft::num_complex::Complex64;

use super::grid::GridSpec;
use crate::error::{Error, Result};

/// Relative conjugate-symmetry defect accepted by [`SpectralField::from_coeffs`].
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// Fourier-series coefficients of a real field on a periodic box.
///
/// Coefficients are stored row-major in storage-index order (see
/// [`GridSpec::mode`]); a constant field `1` has `coeff(0, 0) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    grid: GridSpec,
    coeffs: Vec<Complex64>,
}

impl SpectralField {
    pub fn zeros(grid: GridSpec) -> Self {
        SpectralField {
            grid,
            coeffs: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    /// Validated constructor: length, finiteness and conjugate symmetry.
    pub fn from_coeffs(grid: GridSpec, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                got: coeffs.len(),
            });
        }
        if coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::NonFinite("spectral coefficients".into()));
        }
        let field = SpectralField { grid, coeffs };
        let defect = field.symmetry_defect();
        if defect > SYMMETRY_TOLERANCE {
            return Err(Error::SymmetryViolated { defect });
        }
        Ok(field)
    }

    pub(crate) fn from_raw(grid: GridSpec, coeffs: Vec<Complex64>) -> Self {
        debug_assert_eq!(coeffs.len(), grid.len());
        SpectralField { grid, coeffs }
    }

    /// Field built from `(m₁, m₂, c)` triples; each conjugate partner is
    /// filled in automatically. Repeated modes accumulate.
    pub fn from_modes(grid: GridSpec, modes: &[(i64, i64, Complex64)]) -> Self {
        let mut field = SpectralField::zeros(grid);
        for &(m1, m2, c) in modes {
            let a = grid.offset(grid.index_of_mode(m1), grid.index_of_mode(m2));
            let b = grid.offset(grid.index_of_mode(-m1), grid.index_of_mode(-m2));
            if a == b {
                field.coeffs[a] += Complex64::new(c.re, 0.0);
            } else {
                field.coeffs[a] += c;
                field.coeffs[b] += c.conj();
            }
        }
        field
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient of the signed mode pair `(m₁, m₂)`.
    pub fn coeff(&self, m1: i64, m2: i64) -> Complex64 {
        let g = &self.grid;
        self.coeffs[g.offset(g.index_of_mode(m1), g.index_of_mode(m2))]
    }

    /// Mean value of the field (the zero mode).
    pub fn mean(&self) -> f64 {
        self.coeffs[0].re
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `max |c(k) − conj c(−k)|` relative to the largest coefficient.
    pub fn symmetry_defect(&self) -> f64 {
        let n = self.grid.n();
        let scale = self.max_abs();
        if scale == 0.0 {
            return 0.0;
        }
        let mut worst = 0.0_f64;
        for i1 in 0..n {
            let j1 = (n - i1) % n;
            for i2 in 0..n {
                let j2 = (n - i2) % n;
                let a = self.coeffs[i1 * n + i2];
                let b = self.coeffs[j1 * n + j2];
                worst = worst.max((a - b.conj()).norm());
            }
        }
        worst / scale
    }

    pub fn ensure_same_grid(&self, other: &SpectralField) -> Result<()> {
        if self.grid == other.grid {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    pub fn scaled(&self, factor: f64) -> SpectralField {
        SpectralField::from_raw(self.grid, self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Multiplies every coefficient by a real per-mode symbol `symbol(i₁, i₂)`.
    pub(crate) fn map_symbol(&self, mut symbol: impl FnMut(usize, usize) -> f64) -> SpectralField {
        let n = self.grid.n();
        let mut out = self.coeffs.clone();
        for i1 in 0..n {
            for i2 in 0..n {
                out[i1 * n + i2] *= symbol(i1, i2);
            }
        }
        SpectralField::from_raw(self.grid, out)
    }

    /// Same coefficients embedded in a grid `factor` times finer (same box).
    /// Every stored mode keeps its wavenumber; the source Nyquist row, which
    /// has no conjugate partner on the finer grid, is dropped.
    pub fn padded(&self, factor: usize) -> Result<SpectralField> {
        let fine = GridSpec::new(self.grid.n() * factor, self.grid.box_length())?;
        let n = self.grid.n();
        let mut out = SpectralField::zeros(fine);
        for i1 in 0..n {
            if self.grid.is_nyquist(i1) {
                continue;
            }
            let f1 = fine.index_of_mode(self.grid.mode(i1));
            for i2 in 0..n {
                if self.grid.is_nyquist(i2) {
                    continue;
                }
                let f2 = fine.index_of_mode(self.grid.mode(i2));
                out.coeffs[fine.offset(f1, f2)] = self.coeffs[i1 * n + i2];
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &SpectralField, f: impl Fn(Complex64, Complex64) -> Complex64) -> SpectralField {
        assert_eq!(self.grid, other.grid, "grid mismatch in field arithmetic");
        SpectralField::from_raw(
            self.grid,
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        )
    }

    /// `self + factor·other`, the RK-stage update.
    pub fn axpy(&self, factor: f64, other: &SpectralField) -> SpectralField {
        self.zip_with(other, |a, b| a + b * factor)
    }
}

impl Add for &SpectralField {
    type Output = SpectralField;
    fn add(self, rhs: &SpectralField) -> SpectralField {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &SpectralField {
    type Output = SpectralField;
    fn sub(self, rhs: &SpectralField) -> SpectralField {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul<f64> for &SpectralField {
    type Output = SpectralField;
    fn mul(self, rhs: f64) -> SpectralField {
        self.scaled(rhs)
    }
}

impl Neg for &SpectralField {
    type Output = SpectralField;
    fn neg(self) -> SpectralField {
        self.scaled(-1.0)
    }
}

/// Two-component field such as the SQG velocity `u = R^⊥θ`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    pub u1: SpectralField,
    pub u2: SpectralField,
}

impl VectorField {
    pub fn new(u1: SpectralField, u2: SpectralField) -> Result<Self> {
        u1.ensure_same_grid(&u2)?;
        Ok(VectorField { u1, u2 })
    }

    pub fn grid(&self) -> &GridSpec {
        self.u1.grid()
    }

    /// Largest per-mode `|k₁û₁ + k₂û₂|`.
    pub fn max_divergence(&self) -> f64 {
        let g = *self.grid();
        g.wavevectors()
            .zip(self.u1.coeffs().iter().zip(self.u2.coeffs()))
            .map(|((k1, k2), (a, b))| (a * k1 + b * k2).norm())
            .fold(0.0, f64::max)
    }
}
