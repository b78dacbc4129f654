//! Characteristic equations: finite (tridiagonal) and infinite (continued
//! fraction) spectra.

mod closed_form;
mod finite;
mod infinite;
mod tridiag;

pub use closed_form::{closed_form_deviation, closed_form_energies};
pub use finite::{
    arscott_check, characteristic_det, characteristic_roots, default_window, finite_spectrum,
    finite_spectrum_by_determinant, SpectrumMethod, SpectrumResult, DEGENERACY_TOL,
};
pub use infinite::{
    continued_fraction, infinite_brackets, infinite_energy, infinite_energy_at_depth, infinite_spectrum,
};
pub use tridiag::symmetric_eigenvalues;

use crate::heun::PotentialSpec;

/// The same potential with `l ↦ −l − 5`.
#[must_use]
pub fn symmetry_partner(spec: &PotentialSpec) -> PotentialSpec {
    spec.symmetry_partner()
}
