use super::default_window;
use crate::error::{Error, Result};
use crate::heun::PotentialSpec;
use crate::series::{recurrence, truncation_order, ExpansionFamily, Group};

const START_DEPTH: usize = 64;
const MAX_DEPTH: usize = 100_000;
const SCAN_DEPTH: usize = 256;
const SCAN_SAMPLES: usize = 400;

/// Precomputed `β_n(0)`, common slope and products `α_n γ_{n+1}`.
struct Fraction {
    beta0: Vec<f64>,
    slope: f64,
    coupling: Vec<f64>,
}

impl Fraction {
    fn new(spec: &PotentialSpec, fam: ExpansionFamily, depth: usize) -> Result<Self> {
        if fam.group() != Group::PowerRing {
            return Err(Error::Argument(format!("continued fractions are built for power families, not {fam}")));
        }
        if truncation_order(spec, fam)?.is_some() {
            return Err(Error::Argument(format!("{fam} terminates at l = {}", spec.l())));
        }
        let rec = recurrence(spec, fam, 0.0)?;
        let depth = depth.max(1);
        Ok(Self {
            beta0: (0..depth).map(|n| rec.beta(n)).collect(),
            slope: rec.beta_slope(),
            coupling: (0..depth).map(|n| rec.alpha(n) * rec.gamma(n + 1)).collect(),
        })
    }

    fn eval(&self, energy: f64) -> f64 {
        let d = self.beta0.len();
        let mut t = self.beta0[d - 1] + self.slope * energy;
        for n in (0..d - 1).rev() {
            if t == 0.0 {
                t = f64::MIN_POSITIVE;
            }
            t = self.beta0[n] + self.slope * energy - self.coupling[n] / t;
        }
        t
    }

    /// Determinant of the leading `depth × depth` block, rescaled with its
    /// sign kept. It vanishes exactly where the fraction of the same depth
    /// does, and has no poles.
    fn continuant(&self, energy: f64) -> f64 {
        let (mut prev2, mut prev) = (1.0, self.beta0[0] + self.slope * energy);
        for n in 1..self.beta0.len() {
            let d = (self.beta0[n] + self.slope * energy) * prev - self.coupling[n - 1] * prev2;
            prev2 = prev;
            prev = d;
            let m = prev.abs().max(prev2.abs());
            if m > 1e100 || (m < 1e-100 && m > 0.0) {
                prev /= m;
                prev2 /= m;
            }
        }
        prev
    }

    fn root(&self, lo: f64, hi: f64) -> Result<f64> {
        let (mut a, mut b) = (lo.min(hi), lo.max(hi));
        let (fa, fb) = (self.continuant(a), self.continuant(b));
        if fa == 0.0 {
            return Ok(a);
        }
        if fb == 0.0 {
            return Ok(b);
        }
        if fa.signum() == fb.signum() {
            return Err(Error::NoRoot { lo, hi });
        }
        let sa = fa.signum();
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mid == a || mid == b {
                break;
            }
            let fm = self.continuant(mid);
            if fm == 0.0 {
                return Ok(mid);
            }
            if fm.signum() == sa {
                a = mid;
            } else {
                b = mid;
            }
        }
        Ok(0.5 * (a + b))
    }
}

/// `f(E) = β_0 − α_0γ_1/(β_1 − α_1γ_2/(β_2 − ⋯ β_{depth−1}))`.
pub fn continued_fraction(spec: &PotentialSpec, fam: ExpansionFamily, energy: f64, depth: usize) -> Result<f64> {
    Ok(Fraction::new(spec, fam, depth)?.eval(energy))
}

/// Root of the continued fraction at a fixed depth.
pub fn infinite_energy_at_depth(
    spec: &PotentialSpec,
    fam: ExpansionFamily,
    bracket: (f64, f64),
    depth: usize,
) -> Result<f64> {
    Fraction::new(spec, fam, depth)?.root(bracket.0, bracket.1)
}

/// Energy of a non-terminating minimal solution inside `bracket`. The depth
/// doubles until the root moves by less than `1e-11`.
pub fn infinite_energy(spec: &PotentialSpec, fam: ExpansionFamily, bracket: (f64, f64)) -> Result<f64> {
    let mut depth = START_DEPTH;
    let mut last: Option<f64> = None;
    while depth <= MAX_DEPTH {
        match infinite_energy_at_depth(spec, fam, bracket, depth) {
            Ok(e) => {
                if last.is_some_and(|p| (e - p).abs() < 1e-11) {
                    return Ok(e);
                }
                last = Some(e);
            }
            // a shallow truncation may not yet have its root inside the bracket
            Err(Error::NoRoot { .. }) => last = None,
            Err(err) => return Err(err),
        }
        depth *= 2;
    }
    match last {
        Some(_) => Err(Error::Convergence(format!("continued fraction depth above {MAX_DEPTH}"))),
        None => Err(Error::NoRoot { lo: bracket.0, hi: bracket.1 }),
    }
}

/// Sub-intervals of `window` holding one sign change of the depth-256
/// continuant.
pub fn infinite_brackets(
    spec: &PotentialSpec,
    fam: ExpansionFamily,
    window: Option<(f64, f64)>,
) -> Result<Vec<(f64, f64)>> {
    let frac = Fraction::new(spec, fam, SCAN_DEPTH)?;
    let (lo, hi) = window.unwrap_or_else(|| default_window(spec));
    let grid: Vec<f64> = (0..=SCAN_SAMPLES).map(|i| lo + (hi - lo) * i as f64 / SCAN_SAMPLES as f64).collect();
    let vals: Vec<f64> = grid.iter().map(|&e| frac.continuant(e)).collect();
    Ok((0..SCAN_SAMPLES)
        .filter(|&i| vals[i] == 0.0 || vals[i].signum() != vals[i + 1].signum())
        .map(|i| (grid[i], grid[i + 1]))
        .collect())
}

/// Lowest `max_count` infinite-series energies in the window, ascending.
pub fn infinite_spectrum(
    spec: &PotentialSpec,
    fam: ExpansionFamily,
    window: Option<(f64, f64)>,
    max_count: usize,
) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for bracket in infinite_brackets(spec, fam, window)? {
        if out.len() >= max_count {
            break;
        }
        match infinite_energy(spec, fam, bracket) {
            Ok(e) => out.push(e),
            Err(Error::NoRoot { .. }) => {}
            Err(err) => return Err(err),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heun::Potential;

    #[test]
    fn depth_one_is_beta0() {
        let spec = PotentialSpec::new(Potential::V1, -3.0, 0.5).unwrap();
        let fam = ExpansionFamily::ring(5);
        let e = 0.81;
        let rec = recurrence(&spec, fam, e).unwrap();
        assert!((continued_fraction(&spec, fam, e, 1).unwrap() - rec.beta(0)).abs() < 1e-14);
    }

    #[test]
    fn depth_doubling_is_stable() {
        let spec = PotentialSpec::new(Potential::V1, -3.0, 0.5).unwrap();
        let fam = ExpansionFamily::ring(5);
        let b = infinite_brackets(&spec, fam, None).unwrap();
        let e1 = infinite_energy_at_depth(&spec, fam, b[0], 200).unwrap();
        let e2 = infinite_energy_at_depth(&spec, fam, b[0], 400).unwrap();
        assert!((e1 - e2).abs() < 1e-10);
    }

    #[test]
    fn lowest_even_level_l_minus3() {
        // finite-difference reference 2.4284 (even sector, k² = 1/2)
        let spec = PotentialSpec::new(Potential::V1, -3.0, 0.5).unwrap();
        let e = infinite_spectrum(&spec, ExpansionFamily::ring(5), None, 3).unwrap();
        assert!((e[0] - 2.4284).abs() < 1e-3, "{e:?}");
    }
}
