//! Quasi-exactly-solvable spectra of the elliptic Ganguly potentials.
//!
//! The Schrödinger problem `-ψ'' + V(u)ψ = Eψ` is mapped onto Heun's
//! equation by `x = sn²u`. Eigenfunctions are built from three families of
//! series solutions (power series, hypergeometric series about `x = 0`, and
//! hypergeometric series about `x = 1`), whose three-term recurrences give
//! both the finite (QES) spectrum and, through continued fractions, the
//! energies of non-terminating solutions. An independent shooting solver
//! and a finite-difference residual check every result.

pub mod error;
pub mod heun;
pub mod series;
pub mod special;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result};
pub use heun::{HeunParams, Potential, PotentialSpec, Prefactor};
pub use series::{ExpansionFamily, Group, SeriesKind, SeriesSolution};
pub use special::EllipticModulus;
pub use spectrum::SpectrumResult;
