//! Pseudo-spectral solver and diagnostics for the supercritical dissipative
//! surface quasi-geostrophic equation
//!
//! ```text
//! ∂ₜθ + (R^⊥θ)·∇θ + Λ^γ θ = 0,    0 < γ < 1,
//! ```
//!
//! on a large periodic box, with the solution split as `θ = θ₀ + θ₁`:
//! `θ₀ = e^{−tΛ^γ} f` is the exact fractional-heat evolution of radial data
//! `f` and `θ₁` is the perturbation evolved nonlinearly.

pub mod diagnostics;
pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod heat;
pub mod oracle;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
