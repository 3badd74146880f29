use crate::error::{Error, Result};
use crate::spectral::{dealias, gradient, riesz_perp, spectral_unchecked, to_physical_pair, SpectralField};

struct Sampled {
    u1: Vec<f64>,
    u2: Vec<f64>,
    g1: Vec<f64>,
    g2: Vec<f64>,
}

/// Physical samples of `R^⊥θ` and `∇θ` for the dealiased `θ`.
fn sample_transport(theta: &SpectralField) -> Sampled {
    let projected = dealias(theta);
    let u = riesz_perp(&projected);
    let g = gradient(&projected);
    let (u1, u2) = to_physical_pair(&u.u1, &u.u2);
    let (g1, g2) = to_physical_pair(&g.u1, &g.u2);
    Sampled { u1, u2, g1, g2 }
}

fn dot_into(acc: &mut [f64], v: &Sampled, w: &Sampled) {
    for (i, a) in acc.iter_mut().enumerate() {
        *a += v.u1[i] * w.g1[i] + v.u2[i] * w.g2[i];
    }
}

/// Transforms an accumulated advection product back, dealiases and negates.
fn finish(product: &[f64], like: &SpectralField) -> Result<SpectralField> {
    if product.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("advection product".into()));
    }
    Ok(-&dealias(&spectral_unchecked(product, like.grid())))
}

/// `−P[(R^⊥a)·∇b]` with `P` the two-thirds projection applied to inputs
/// and output.
pub fn advection(a: &SpectralField, b: &SpectralField) -> Result<SpectralField> {
    a.ensure_same_grid(b)?;
    let sa = sample_transport(a);
    let sb = sample_transport(b);
    let mut acc = vec![0.0; a.grid().len()];
    dot_into(&mut acc, &sa, &sb);
    finish(&acc, a)
}

/// `−(R^⊥θ)·∇θ`, dealiased.
pub fn nonlinear_term(theta: &SpectralField) -> Result<SpectralField> {
    let s = sample_transport(theta);
    let mut acc = vec![0.0; theta.grid().len()];
    dot_into(&mut acc, &s, &s);
    finish(&acc, theta)
}

/// The three advection terms of the perturbation equation, in order
/// `−(R^⊥θ₀)·∇θ₁`, `−(R^⊥θ₁)·∇θ₁`, `−(R^⊥θ₁)·∇θ₀`.
pub fn perturbation_terms(theta1: &SpectralField, theta0: &SpectralField) -> Result<[SpectralField; 3]> {
    theta1.ensure_same_grid(theta0)?;
    Ok([
        advection(theta0, theta1)?,
        advection(theta1, theta1)?,
        advection(theta1, theta0)?,
    ])
}

/// Sum of [`perturbation_terms`] with shared transforms. The linear
/// dissipation is left to the integrating factor.
pub fn perturbation_rhs(theta1: &SpectralField, theta0: &SpectralField) -> Result<SpectralField> {
    theta1.ensure_same_grid(theta0)?;
    let s0 = sample_transport(theta0);
    let s1 = sample_transport(theta1);
    let mut acc = vec![0.0; theta1.grid().len()];
    dot_into(&mut acc, &s0, &s1);
    dot_into(&mut acc, &s1, &s1);
    dot_into(&mut acc, &s1, &s0);
    finish(&acc, theta1)
}
