//! Periodic-box spectral representation and multiplier operators.

mod field;
mod grid;
mod ops;
mod transform;

pub use field::{SpectralField, VectorField, SYMMETRY_TOLERANCE};
pub use grid::GridSpec;
pub use ops::{
    dealias, fractional_laplacian, fractional_symbol, gradient, in_retained_band, is_dealiased,
    riesz_perp, wavenumber_magnitudes,
};
pub use transform::{sample, to_physical, to_spectral, IMAGINARY_RESIDUE_TOLERANCE};

pub(crate) use transform::{spectral_unchecked, to_physical_pair};

pub use rustfft::num_complex::Complex64;
