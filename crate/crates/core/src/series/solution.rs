use super::recurrence::{layout, Layout, Term};
use super::{recurrence, truncation_order, ExpansionFamily, Group};
use crate::error::{Error, Result};
use crate::heun::{PotentialSpec, Prefactor};
use crate::special::hyp2f1_tilde;

/// Largest number of stored coefficients of a non-terminating series.
pub const MAX_INFINITE_TERMS: usize = 500;

/// Error budget of a truncated infinite series, relative to its sum.
const TAIL_BUDGET: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SeriesKind {
    Finite,
    /// Minimal solution cut at `coeffs.len()`; `tail_ratio` is `b_n/b_{n−1}`
    /// at the cut.
    Infinite {
        tail_ratio: f64,
    },
}

/// Coefficients `b_0 = 1, …, b_N` of a terminating series at energy `E`.
///
/// Fails with `Consistency` when `E` is not a root of the characteristic
/// determinant, i.e. the last row of the recurrence is not closed.
pub fn solve_coeffs_finite(spec: &PotentialSpec, fam: ExpansionFamily, energy: f64) -> Result<Vec<f64>> {
    let n_top = truncation_order(spec, fam)?
        .ok_or_else(|| Error::Argument(format!("{fam} does not terminate at l = {}", spec.l())))?;
    let rec = recurrence(spec, fam, energy)?;
    let mut b = vec![1.0; n_top + 1];
    for n in 0..n_top {
        let prev = if n == 0 { 0.0 } else { rec.gamma(n) * b[n - 1] };
        b[n + 1] = -(rec.beta(n) * b[n] + prev) / rec.alpha(n);
    }
    let last = rec.beta(n_top) * b[n_top] + if n_top == 0 { 0.0 } else { rec.gamma(n_top) * b[n_top - 1] };
    let b_max = b.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let scale = 1.0f64.max(rec.beta(n_top).abs() + if n_top == 0 { 0.0 } else { rec.gamma(n_top).abs() });
    if last.abs() > 1e-9 * b_max * scale {
        return Err(Error::Consistency { residual: last.abs() / (b_max * scale) });
    }
    Ok(b)
}

/// Minimal solution `b_0 = 1, …, b_{n_max}` of a non-terminating power
/// series, plus the ratio `b_{n_max}/b_{n_max−1}`.
///
/// The ratios come from the backward recurrence
/// `r_n = −γ_n / (β_n + α_n r_{n+1})`, started `n_max` further up at the
/// smaller Poincaré–Perron root `1/a`. Backward iteration damps the dominant
/// solution, whose ratio tends to 1.
pub fn solve_coeffs_infinite(
    spec: &PotentialSpec,
    fam: ExpansionFamily,
    energy: f64,
    n_max: usize,
) -> Result<(Vec<f64>, f64)> {
    if fam.group() != Group::PowerRing {
        return Err(Error::Argument(format!("infinite series are only built for power families, not {fam}")));
    }
    if truncation_order(spec, fam)?.is_some() {
        return Err(Error::Argument(format!("{fam} terminates at l = {}", spec.l())));
    }
    let n_max = n_max.max(1);
    let rec = recurrence(spec, fam, energy)?;
    let small_root = 1.0 / rec.params().a();
    let top = 2 * n_max;
    let mut ratio = vec![0.0; n_max + 1];
    let mut r = small_root;
    for n in (1..=top).rev() {
        let denom = rec.beta(n) + rec.alpha(n) * r;
        if denom == 0.0 {
            return Err(Error::Convergence(format!("backward recurrence hit zero at n = {n}")));
        }
        r = -rec.gamma(n) / denom;
        if n <= n_max {
            ratio[n] = r;
        }
    }
    let mut b = vec![1.0; n_max + 1];
    for n in 1..=n_max {
        b[n] = b[n - 1] * ratio[n];
    }
    let tail = ratio[n_max];
    if tail.abs() > 0.5 * (small_root + 1.0) {
        return Err(Error::MinimalSolution { ratio: tail });
    }
    Ok((b, tail))
}

/// One eigenfunction candidate: family, energy, prefactor and coefficients.
#[derive(Debug, Clone)]
pub struct SeriesSolution {
    family: ExpansionFamily,
    spec: PotentialSpec,
    energy: f64,
    coeffs: Vec<f64>,
    prefactor: Prefactor,
    kind: SeriesKind,
    term: Term,
}

impl SeriesSolution {
    /// Terminating series at an eigenvalue of the characteristic determinant.
    pub fn finite(spec: &PotentialSpec, fam: ExpansionFamily, energy: f64) -> Result<Self> {
        let coeffs = solve_coeffs_finite(spec, fam, energy)?;
        Ok(Self::assemble(spec, fam, energy, coeffs, SeriesKind::Finite, layout(spec, fam, energy)?))
    }

    /// Minimal-solution series with `n_max` stored coefficients (capped at 500).
    pub fn infinite(spec: &PotentialSpec, fam: ExpansionFamily, energy: f64, n_max: usize) -> Result<Self> {
        let n_max = n_max.min(MAX_INFINITE_TERMS);
        let (coeffs, tail_ratio) = solve_coeffs_infinite(spec, fam, energy, n_max)?;
        Ok(Self::assemble(spec, fam, energy, coeffs, SeriesKind::Infinite { tail_ratio }, layout(spec, fam, energy)?))
    }

    fn assemble(
        spec: &PotentialSpec,
        fam: ExpansionFamily,
        energy: f64,
        coeffs: Vec<f64>,
        kind: SeriesKind,
        lay: Layout,
    ) -> Self {
        Self { family: fam, spec: *spec, energy, coeffs, prefactor: lay.prefactor, kind, term: lay.term }
    }

    /// Same function, but reported (and checked) at a different energy.
    #[must_use]
    pub fn with_energy_override(mut self, energy: f64) -> Self {
        self.energy = energy;
        self
    }

    #[must_use]
    pub fn family(&self) -> ExpansionFamily {
        self.family
    }
    #[must_use]
    pub fn spec(&self) -> &PotentialSpec {
        &self.spec
    }
    #[must_use]
    pub fn energy(&self) -> f64 {
        self.energy
    }
    #[must_use]
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }
    #[must_use]
    pub fn prefactor(&self) -> Prefactor {
        self.prefactor
    }
    #[must_use]
    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    /// Hypergeometric parameters `(a0, b, c0)` of the n-th term
    /// `F̃(n + a0, b; n + c0; z)`, if the family is hypergeometric.
    #[must_use]
    pub fn hyper_parameters(&self) -> Option<(f64, f64, f64)> {
        match self.term {
            Term::Power => None,
            Term::Hyper { a0, b, c0, .. } => Some((a0, b, c0)),
        }
    }

    /// `ψ(u)`.
    pub fn evaluate(&self, u: f64) -> Result<f64> {
        let j = self.spec.modulus().jacobi(u);
        let pre = self.prefactor.eval(&j)?;
        let x = j.sn * j.sn;
        let sum = match self.term {
            Term::Power => self.power_sum(x)?,
            Term::Hyper { z_is_cn2, a0, b, c0 } => {
                let z = if z_is_cn2 { j.cn * j.cn } else { x }.min(1.0);
                let mut sum = 0.0;
                let mut zn = 1.0;
                for (n, bn) in self.coeffs.iter().enumerate() {
                    let nf = n as f64;
                    sum += bn * zn * hyp2f1_tilde(nf + a0, b, nf + c0, z)?;
                    zn *= z;
                }
                sum
            }
        };
        Ok(pre * sum)
    }

    fn power_sum(&self, x: f64) -> Result<f64> {
        let sum = self.coeffs.iter().rev().fold(0.0, |acc, b| acc * x + b);
        if let SeriesKind::Infinite { tail_ratio } = self.kind {
            let rho = (tail_ratio * x).abs();
            let n = self.coeffs.len() - 1;
            let last = (self.coeffs[n] * x.powi(n as i32)).abs();
            let tail = if rho < 1.0 { last * rho / (1.0 - rho) } else { f64::INFINITY };
            if tail > TAIL_BUDGET * sum.abs().max(f64::MIN_POSITIVE) {
                return Err(Error::Convergence(format!(
                    "series tail {tail:e} above budget at x = {x} with {} terms",
                    n + 1
                )));
            }
        }
        Ok(sum)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heun::Potential;

    #[test]
    fn single_term_v1_l0() {
        // E = 2k² − 2, ψ = cn²u / dn²u
        let k2 = 0.5;
        let spec = PotentialSpec::new(Potential::V1, 0.0, k2).unwrap();
        let sol = SeriesSolution::finite(&spec, ExpansionFamily::ring(5), 2.0 * k2 - 2.0).unwrap();
        assert_eq!(sol.coeffs(), &[1.0]);
        assert_eq!(sol.evaluate(0.0).unwrap(), 1.0);
        let u = 0.7;
        let j = spec.modulus().jacobi(u);
        let want = j.cn * j.cn / (j.dn * j.dn);
        assert!((sol.evaluate(u).unwrap() - want).abs() < 1e-15);
    }

    #[test]
    fn not_an_eigenvalue() {
        let spec = PotentialSpec::new(Potential::V1, 0.0, 0.5).unwrap();
        assert!(matches!(SeriesSolution::finite(&spec, ExpansionFamily::ring(5), 0.0), Err(Error::Consistency { .. })));
    }

    #[test]
    fn odd_family_vanishes_at_origin() {
        // V1 ring6 at l = 1 has the single energy −2 at k² = 1/2.
        let spec = PotentialSpec::new(Potential::V1, 1.0, 0.5).unwrap();
        let sol = SeriesSolution::finite(&spec, ExpansionFamily::ring(6), -2.0).unwrap();
        assert_eq!(sol.evaluate(0.0).unwrap(), 0.0);
    }

    #[test]
    fn infinite_tail_ratio_tends_to_small_root() {
        let spec = PotentialSpec::new(Potential::V1, -3.0, 0.5).unwrap();
        let (b, tail) = solve_coeffs_infinite(&spec, ExpansionFamily::ring(5), 1.234, 200).unwrap();
        assert_eq!(b[0], 1.0);
        assert!((tail - 0.5).abs() < 1e-3 * 0.5 * 20.0, "tail {tail}");
        assert!(b.iter().all(|v| v.is_finite()));
    }

    #[test]
    fn infinite_buffer_doubling() {
        let spec = PotentialSpec::new(Potential::V1, -3.0, 0.5).unwrap();
        let fam = ExpansionFamily::ring(5);
        let (b1, _) = solve_coeffs_infinite(&spec, fam, 0.4, 100).unwrap();
        let (b2, _) = solve_coeffs_infinite(&spec, fam, 0.4, 200).unwrap();
        assert!((b1[50] / b2[50] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn infinite_requires_nonterminating() {
        let spec = PotentialSpec::new(Potential::V1, 2.0, 0.5).unwrap();
        assert!(solve_coeffs_infinite(&spec, ExpansionFamily::ring(5), 0.0, 50).is_err());
        let spec = PotentialSpec::new(Potential::V1, -3.0, 0.5).unwrap();
        assert!(solve_coeffs_infinite(&spec, ExpansionFamily::bold(5), 0.0, 50).is_err());
    }
}
