//! Heun parameters, the two potentials and their Darboux reduction, and the
//! parameter transformations that generate the expansion families.

mod params;
mod potential;
mod transform;

pub use params::HeunParams;
pub use potential::{darboux_params, potential_value, Parity, Potential, PotentialSpec, Prefactor};
pub use transform::{family_prefactor, fractional_m49, homotopic, XPrefactor};
