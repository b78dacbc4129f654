use crate::error::Result;
use crate::heun::PotentialSpec;
use crate::series::{truncation_order, ExpansionFamily, Group, SeriesSolution};
use crate::spectrum::{finite_spectrum, infinite_spectrum};

use super::residual::WALL_MARGIN;

/// Tolerance of every identity in the suite.
const IDENTITY_TOL: f64 = 1e-9;
const GRID: usize = 32;

#[derive(Debug, Clone)]
pub struct EquivalenceEntry {
    pub name: String,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Default)]
pub struct EquivalenceReport {
    pub entries: Vec<EquivalenceEntry>,
}

impl EquivalenceReport {
    #[must_use]
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }
}

/// Max difference of two eigenfunctions on `n_points` of the half cell after
/// scaling both to 1 at `u* = K/2` (or at the largest sample of `a` when
/// `u*` is close to a node).
pub fn normalized_deviation(a: &SeriesSolution, b: &SeriesSolution, n_points: usize) -> Result<f64> {
    let kk = a.spec().quarter_period();
    let lo = WALL_MARGIN * kk;
    let hi = kk - WALL_MARGIN * kk;
    let mut grid: Vec<f64> = (0..n_points).map(|i| lo + (hi - lo) * i as f64 / (n_points - 1) as f64).collect();
    grid.push(0.5 * kk);
    let pa: Vec<f64> = grid.iter().map(|&u| a.evaluate(u)).collect::<Result<_>>()?;
    let pb: Vec<f64> = grid.iter().map(|&u| b.evaluate(u)).collect::<Result<_>>()?;
    let peak = pa.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut pin = n_points;
    if pa[pin].abs() < 1e-3 * peak {
        pin = (0..n_points).max_by(|&i, &j| pa[i].abs().total_cmp(&pa[j].abs())).unwrap_or(0);
    }
    let (na, nb) = (pa[pin], pb[pin]);
    Ok(pa.iter().zip(&pb).map(|(x, y)| (x / na - y / nb).abs()).fold(0.0, f64::max))
}

fn entry(name: String, dev: Result<f64>) -> EquivalenceEntry {
    let max_deviation = dev.unwrap_or(f64::INFINITY);
    EquivalenceEntry { name, max_deviation, tolerance: IDENTITY_TOL, passed: max_deviation <= IDENTITY_TOL }
}

/// Every identity that applies at this `(potential, l, k)`:
///
/// * finite families against their `l ↦ −l − 5` partners at each shared level,
/// * for non-terminating power series, index 1 against index 5 (and the odd
///   pair) at the lowest continued-fraction level, whenever `1 − ε` is not a
///   non-negative integer.
#[must_use]
pub fn equivalence_suite(spec: &PotentialSpec) -> EquivalenceReport {
    let mut report = EquivalenceReport::default();
    let partner_spec = spec.symmetry_partner();
    let families = ExpansionFamily::supported(spec.kind());
    for &fam in families {
        let Ok(Some(_)) = truncation_order(spec, fam) else { continue };
        let Ok(spectrum) = finite_spectrum(spec, fam) else { continue };
        let partners: Vec<ExpansionFamily> = families
            .iter()
            .copied()
            .filter(|g| g.group() == fam.group() && (g.group() != Group::PowerRing || *g == fam.partner()))
            .filter(|g| matches!(truncation_order(&partner_spec, *g), Ok(Some(_))))
            .collect();
        for g in partners {
            let Ok(other) = finite_spectrum(&partner_spec, g) else { continue };
            for (sol, &e) in spectrum.solutions.iter().zip(&spectrum.energies) {
                let Some(&e2) = other.energies.iter().find(|&&x| (x - e).abs() <= 1e-8 * (1.0 + e.abs())) else {
                    continue;
                };
                let name = format!("{fam}(l={}) vs {g}(l={}) at E={e:.12}", spec.l(), partner_spec.l());
                let dev =
                    SeriesSolution::finite(&partner_spec, g, e2).and_then(|b| normalized_deviation(sol, &b, GRID));
                report.entries.push(entry(name, dev));
            }
        }
    }
    let one_minus_eps = 1.0 - (spec.l() + 3.5);
    let excluded = one_minus_eps >= 0.0 && one_minus_eps == one_minus_eps.round();
    if !excluded {
        let pairs: [(u8, u8); 2] = match spec.kind() {
            crate::heun::Potential::V1 => [(5, 1), (6, 2)],
            crate::heun::Potential::V2 => [(5, 1), (7, 3)],
        };
        for (i, j) in pairs {
            let (fi, fj) = (ExpansionFamily::ring(i), ExpansionFamily::ring(j));
            let open = |f| matches!(truncation_order(spec, f), Ok(None));
            if !(open(fi) && open(fj)) {
                continue;
            }
            let Ok(levels) = infinite_spectrum(spec, fi, None, 1) else { continue };
            let Some(&e) = levels.first() else { continue };
            let name = format!("{fi} vs {fj} (infinite, l={}) at E={e:.12}", spec.l());
            let dev = SeriesSolution::infinite(spec, fi, e, 500)
                .and_then(|a| Ok((a, SeriesSolution::infinite(spec, fj, e, 500)?)))
                .and_then(|(a, b)| normalized_deviation(&a, &b, GRID));
            report.entries.push(entry(name, dev));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heun::Potential;

    #[test]
    fn ring1_at_minus_six_equals_ring5_at_one() {
        let a_spec = PotentialSpec::new(Potential::V1, -6.0, 0.5).unwrap();
        let b_spec = a_spec.symmetry_partner();
        let a = finite_spectrum(&a_spec, ExpansionFamily::ring(1)).unwrap();
        let b = finite_spectrum(&b_spec, ExpansionFamily::ring(5)).unwrap();
        assert_eq!(a.energies.len(), b.energies.len());
        for (x, y) in a.solutions.iter().zip(&b.solutions) {
            assert!(normalized_deviation(x, y, GRID).unwrap() < 1e-10);
        }
    }

    #[test]
    fn suite_passes_for_non_integer_l() {
        let spec = PotentialSpec::new(Potential::V1, 0.3, 0.5).unwrap();
        let report = equivalence_suite(&spec);
        assert!(!report.entries.is_empty());
        assert!(report.all_passed(), "{:?}", report.entries);
    }

    #[test]
    fn v2_bar_partners() {
        let spec = PotentialSpec::new(Potential::V2, -3.5, 0.5).unwrap();
        let report = equivalence_suite(&spec);
        assert!(report.entries.iter().any(|e| e.name.starts_with("bar1")), "{:?}", report.entries);
        assert!(report.all_passed(), "{:?}", report.entries);
    }
}
