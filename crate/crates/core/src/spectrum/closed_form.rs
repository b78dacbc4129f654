use nalgebra::Complex;

use super::SpectrumResult;
use crate::heun::{Potential, PotentialSpec};
use crate::series::{ExpansionFamily, Group};

/// Closed-form energies of the one- and two-term cases, where known.
///
/// Families with index 1, 2, 3 at `l ≤ −5/2` are reduced to their partner
/// at `−l − 5`, which has the same spectrum.
#[must_use]
pub fn closed_form_energies(spec: &PotentialSpec, fam: ExpansionFamily) -> Option<Vec<Complex<f64>>> {
    let (spec, fam) =
        if fam.index() <= 3 && spec.l() <= -2.5 { (spec.symmetry_partner(), fam.partner()) } else { (*spec, fam) };
    let k2 = spec.k2();
    let real = |v: f64| Complex::new(v, 0.0);
    let pair = |centre: f64, radicand: f64| {
        let r = Complex::new(radicand, 0.0).sqrt();
        let c = real(centre);
        vec![c - r, c + r]
    };
    let mut roots = match (spec.kind(), fam.group(), fam.index(), spec.twice_l()?) {
        (Potential::V1, Group::PowerRing, 5, 0) => vec![real(2.0 * k2 - 2.0)],
        (Potential::V2, Group::PowerRing, 5, 0) => vec![real(-2.0)],
        (Potential::V1, Group::HyperBold, 5 | 6, -3) => vec![real(-0.5 - 1.75 * k2)],
        (Potential::V1, Group::HyperBold, 5 | 6, -1) => pair(-2.5 - 0.75 * k2, 1.0 + 7.0 * k2 + k2 * k2),
        (Potential::V2, Group::HyperBar, 5 | 7, -3) => vec![real(-0.5 + 2.25 * k2)],
        (Potential::V2, Group::HyperBar, 5 | 7, -1) => pair(-2.5 + 3.25 * k2, 1.0 - 9.0 * k2 + 9.0 * k2 * k2),
        _ => return None,
    };
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Some(roots)
}

/// Largest distance between the closed form and the computed roots (real
/// energies plus reported complex roots), if a closed form exists and the
/// root counts agree.
#[must_use]
pub fn closed_form_deviation(result: &SpectrumResult) -> Option<f64> {
    let want = closed_form_energies(&result.spec, result.family)?;
    let mut got: Vec<Complex<f64>> = result.energies.iter().map(|&e| Complex::new(e, 0.0)).collect();
    got.extend(result.complex_roots.iter().copied());
    if got.len() != want.len() {
        return Some(f64::INFINITY);
    }
    got.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Some(want.iter().zip(&got).map(|(w, g)| (w - g).norm()).fold(0.0, f64::max))
}
