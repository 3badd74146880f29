use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::field::SpectralField;
use super::grid::GridSpec;
use crate::error::{Error, Result};

/// Imaginary residue (relative to the largest real sample) that
/// [`to_physical`] silently discards.
pub const IMAGINARY_RESIDUE_TOLERANCE: f64 = 1e-12;

struct Plans {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

fn plans(n: usize) -> Arc<Plans> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Plans>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("fft plan cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            Arc::new(Plans {
                forward: planner.plan_fft_forward(n),
                inverse: planner.plan_fft_inverse(n),
            })
        })
        .clone()
}

fn transpose_in_place(buf: &mut [Complex64], n: usize) {
    for i in 0..n {
        for j in (i + 1)..n {
            buf.swap(i * n + j, j * n + i);
        }
    }
}

/// Unnormalized 2D transform of a row-major `n × n` buffer.
fn fft2(buf: &mut [Complex64], n: usize, forward: bool) {
    let plans = plans(n);
    let plan = if forward { &plans.forward } else { &plans.inverse };
    let mut scratch = vec![Complex64::new(0.0, 0.0); plan.get_inplace_scratch_len()];
    plan.process_with_scratch(buf, &mut scratch);
    transpose_in_place(buf, n);
    plan.process_with_scratch(buf, &mut scratch);
    transpose_in_place(buf, n);
}

/// Forward transform of row-major physical samples (first index along x).
pub fn to_spectral(values: &[f64], grid: &GridSpec) -> Result<SpectralField> {
    if values.len() != grid.len() {
        return Err(Error::DimensionMismatch {
            expected: grid.len(),
            got: values.len(),
        });
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("physical samples".into()));
    }
    Ok(spectral_unchecked(values, grid))
}

pub(crate) fn spectral_unchecked(values: &[f64], grid: &GridSpec) -> SpectralField {
    let n = grid.n();
    let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft2(&mut buf, n, true);
    let scale = 1.0 / grid.len() as f64;
    for c in &mut buf {
        *c *= scale;
    }
    SpectralField::from_raw(*grid, buf)
}

/// Inverse transform back to real samples.
///
/// Fails if the result carries an imaginary part above
/// [`IMAGINARY_RESIDUE_TOLERANCE`], i.e. the coefficients are not the
/// transform of a real field.
pub fn to_physical(field: &SpectralField) -> Result<Vec<f64>> {
    let n = field.grid().n();
    let mut buf = field.coeffs().to_vec();
    fft2(&mut buf, n, false);
    let scale = buf.iter().map(|c| c.re.abs()).fold(0.0, f64::max);
    let residue = buf.iter().map(|c| c.im.abs()).fold(0.0, f64::max);
    if !(scale.is_finite() && residue.is_finite()) {
        return Err(Error::NonFinite("inverse transform".into()));
    }
    if residue > IMAGINARY_RESIDUE_TOLERANCE * scale.max(f64::MIN_POSITIVE) && residue > 0.0 {
        return Err(Error::SymmetryViolated {
            defect: if scale > 0.0 { residue / scale } else { f64::INFINITY },
        });
    }
    Ok(buf.into_iter().map(|c| c.re).collect())
}

/// Inverse transforms of two real fields with a single complex FFT:
/// the transform of `â + i·b̂` is `a + i·b` when `a` and `b` are real.
pub(crate) fn to_physical_pair(a: &SpectralField, b: &SpectralField) -> (Vec<f64>, Vec<f64>) {
    debug_assert_eq!(a.grid(), b.grid());
    let n = a.grid().n();
    let i = Complex64::new(0.0, 1.0);
    let mut buf: Vec<Complex64> = a
        .coeffs()
        .iter()
        .zip(b.coeffs())
        .map(|(x, y)| x + i * y)
        .collect();
    fft2(&mut buf, n, false);
    buf.into_iter().map(|c| (c.re, c.im)).unzip()
}

/// Physical samples of `f` evaluated on `grid`, row-major.
pub fn sample(grid: &GridSpec, f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
    let n = grid.n();
    let mut out = Vec::with_capacity(grid.len());
    for i1 in 0..n {
        let x = grid.coordinate(i1);
        for i2 in 0..n {
            out.push(f(x, grid.coordinate(i2)));
        }
    }
    out
}
