//! Independent checks: finite-difference ODE residuals, a shooting solver
//! that only sees the potential, and the family identities.

mod equivalence;
mod ode;
mod residual;
mod shooting;

pub use equivalence::{equivalence_suite, normalized_deviation, EquivalenceEntry, EquivalenceReport};
pub use ode::{integrate, Tolerance};
pub use residual::{ode_residual, ode_residual_with_step, ResidualReport, WALL_MARGIN};
pub use shooting::{shooting_energies_below, shooting_spectrum, ShootingSpectrum};
