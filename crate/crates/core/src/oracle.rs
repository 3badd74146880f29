//! Slow reference implementations used to cross-check the FFT paths.
//!
//! Everything here works by direct summation over modes and samples and
//! shares no code with [`crate::spectral`] beyond the [`GridSpec`] type.

use std::f64::consts::PI;

use rustfft::num_complex::Complex64;

use crate::spectral::{GridSpec, SpectralField};

fn signed_mode(j: usize, n: usize) -> i64 {
    if 2 * j < n {
        j as i64
    } else {
        j as i64 - n as i64
    }
}

fn twiddle(prod: i64, n: usize, sign: f64) -> Complex64 {
    let r = prod.rem_euclid(n as i64) as f64;
    Complex64::from_polar(1.0, sign * 2.0 * PI * r / n as f64)
}

/// `c(m) = n⁻² Σ_j v(j) e^{−2πi m·j/n}`, row-major in and out.
pub fn direct_dft(values: &[f64], n: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for m1 in 0..n {
        for m2 in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j1 in 0..n {
                for j2 in 0..n {
                    let p = (m1 * j1 + m2 * j2) as i64;
                    acc += values[j1 * n + j2] * twiddle(p, n, -1.0);
                }
            }
            out[m1 * n + m2] = acc / (n * n) as f64;
        }
    }
    out
}

/// `v(j) = Σ_m c(m) e^{2πi m·j/n}`.
pub fn direct_idft(coeffs: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for j1 in 0..n {
        for j2 in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for m1 in 0..n {
                for m2 in 0..n {
                    let p = (m1 * j1 + m2 * j2) as i64;
                    acc += coeffs[m1 * n + m2] * twiddle(p, n, 1.0);
                }
            }
            out[j1 * n + j2] = acc;
        }
    }
    out
}

/// Multiplier symbols, written out independently of `spectral::ops`.
#[derive(Debug, Clone, Copy)]
pub enum Symbol {
    Fractional(f64),
    RieszPerp1,
    RieszPerp2,
    Gradient1,
    Gradient2,
}

impl Symbol {
    pub fn eval(self, m1: i64, m2: i64, n: usize, box_length: f64) -> Complex64 {
        let unit = 2.0 * PI / box_length;
        let (k1, k2) = (unit * m1 as f64, unit * m2 as f64);
        let kk = (k1 * k1 + k2 * k2).sqrt();
        let nyquist = -(n as i64) / 2;
        let on_line = m1 == nyquist || m2 == nyquist;
        let zero = Complex64::new(0.0, 0.0);
        match self {
            Symbol::Fractional(a) => {
                if a == 0.0 {
                    Complex64::new(1.0, 0.0)
                } else if kk == 0.0 {
                    zero
                } else {
                    Complex64::new(kk.powf(a), 0.0)
                }
            }
            _ if on_line => zero,
            Symbol::RieszPerp1 if kk > 0.0 => Complex64::new(0.0, k2 / kk),
            Symbol::RieszPerp2 if kk > 0.0 => Complex64::new(0.0, -k1 / kk),
            Symbol::Gradient1 => Complex64::new(0.0, k1),
            Symbol::Gradient2 => Complex64::new(0.0, k2),
            _ => zero,
        }
    }
}

/// Physical samples → direct DFT → symbol → direct inverse DFT.
/// Returns complex samples so callers can inspect the imaginary residue.
pub fn apply_symbol(values: &[f64], grid: &GridSpec, symbol: Symbol) -> Vec<Complex64> {
    let n = grid.n();
    let mut c = direct_dft(values, n);
    for i1 in 0..n {
        for i2 in 0..n {
            c[i1 * n + i2] *= symbol.eval(signed_mode(i1, n), signed_mode(i2, n), n, grid.box_length());
        }
    }
    direct_idft(&c, n)
}

/// Alias-free `−P[(R^⊥a)·∇b]` by direct convolution over the retained
/// two-thirds band. `a` and `b` are assumed to live in that band.
pub fn advection_convolution(a: &SpectralField, b: &SpectralField) -> Vec<Complex64> {
    let grid = *a.grid();
    let n = grid.n();
    let band: Vec<i64> = (-(n as i64) / 2..(n as i64) / 2)
        .filter(|m| 3 * m.unsigned_abs() as usize <= n)
        .collect();
    let idx = |m: i64| m.rem_euclid(n as i64) as usize;
    let l = grid.box_length();
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for &p1 in &band {
        for &p2 in &band {
            let ap = a.coeffs()[idx(p1) * n + idx(p2)];
            let u1 = Symbol::RieszPerp1.eval(p1, p2, n, l) * ap;
            let u2 = Symbol::RieszPerp2.eval(p1, p2, n, l) * ap;
            for &q1 in &band {
                for &q2 in &band {
                    let (m1, m2) = (p1 + q1, p2 + q2);
                    if 3 * m1.unsigned_abs() as usize > n || 3 * m2.unsigned_abs() as usize > n {
                        continue;
                    }
                    let bq = b.coeffs()[idx(q1) * n + idx(q2)];
                    let g1 = Symbol::Gradient1.eval(q1, q2, n, l) * bq;
                    let g2 = Symbol::Gradient2.eval(q1, q2, n, l) * bq;
                    out[idx(m1) * n + idx(m2)] -= u1 * g1 + u2 * g2;
                }
            }
        }
    }
    out
}

/// Trapezoidal (equivalently rectangle, for periodic data) quadrature of `v²`.
pub fn l2_quadrature(values: &[f64], grid: &GridSpec) -> f64 {
    (values.iter().map(|v| v * v).sum::<f64>() * grid.cell_area()).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dft_of_constant() {
        let c = direct_dft(&[2.0; 64], 8);
        assert!((c[0] - Complex64::new(2.0, 0.0)).norm() < 1e-15);
        assert!(c[1..].iter().all(|z| z.norm() < 1e-14));
    }

    #[test]
    fn dft_roundtrip() {
        let v: Vec<f64> = (0..64).map(|i| ((i * 37) % 11) as f64 - 5.0).collect();
        let back = direct_idft(&direct_dft(&v, 8), 8);
        for (a, b) in v.iter().zip(&back) {
            assert!((a - b.re).abs() < 1e-12 && b.im.abs() < 1e-12);
        }
    }
}
