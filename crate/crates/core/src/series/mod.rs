//! Recurrences, truncation and evaluation of the expansion families.

mod family;
mod recurrence;
mod solution;

pub use family::{ExpansionFamily, Group};
pub(crate) use recurrence::layout;
pub use recurrence::{recurrence, truncation_order, RecurrenceTriple};
pub use solution::{solve_coeffs_finite, solve_coeffs_infinite, SeriesKind, SeriesSolution};
