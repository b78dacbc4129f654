use nalgebra::{Complex, DMatrix};

use super::symmetric_eigenvalues;
use crate::error::{Error, Result};
use crate::heun::PotentialSpec;
use crate::series::{recurrence, truncation_order, ExpansionFamily, RecurrenceTriple, SeriesSolution};

/// Relative energy difference below which two levels are flagged degenerate.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Scan step of the determinant route.
const SCAN_STEP: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumMethod {
    /// Symmetrized tridiagonal matrix, Sturm-sequence bisection.
    SturmBisection,
    /// Sign changes of the determinant on an energy grid.
    DeterminantScan,
}

/// Finite-series (QES) spectrum of one family.
#[derive(Debug, Clone)]
pub struct SpectrumResult {
    pub family: ExpansionFamily,
    pub spec: PotentialSpec,
    /// Truncation order `N`; the full spectrum has `N + 1` levels.
    pub truncation: usize,
    /// Real energies, ascending.
    pub energies: Vec<f64>,
    pub solutions: Vec<SeriesSolution>,
    pub arscott_ok: bool,
    /// Indices `n` with `α_{n−1} γ_n ≤ 0`.
    pub arscott_violations: Vec<usize>,
    pub degenerate_pairs: Vec<(usize, usize)>,
    /// `N + 1` minus the number of real energies found.
    pub missing_real_roots: usize,
    /// Roots with a non-negligible imaginary part (diagnostic only).
    pub complex_roots: Vec<Complex<f64>>,
    pub method: SpectrumMethod,
}

fn truncated(spec: &PotentialSpec, fam: ExpansionFamily) -> Result<usize> {
    truncation_order(spec, fam)?.ok_or_else(|| Error::Argument(format!("{fam} does not terminate at l = {}", spec.l())))
}

/// Continuant `D_N` of the `(N+1)×(N+1)` tridiagonal matrix with diagonal
/// `β_n(E)`, super-diagonal `α_n` and sub-diagonal `γ_n`.
pub fn characteristic_det(spec: &PotentialSpec, fam: ExpansionFamily, energy: f64, n: usize) -> Result<f64> {
    let rec = recurrence(spec, fam, energy)?;
    let (mut prev2, mut prev) = (1.0, rec.beta(0));
    for k in 1..=n {
        let d = rec.beta(k) * prev - rec.alpha(k - 1) * rec.gamma(k) * prev2;
        prev2 = prev;
        prev = d;
    }
    Ok(prev)
}

/// Sign-faithful continuant, rescaled to avoid overflow.
fn scaled_det(rec0: &RecurrenceTriple, n: usize, energy: f64) -> f64 {
    let s = rec0.beta_slope();
    let (mut prev2, mut prev) = (1.0, rec0.beta(0) + s * energy);
    for k in 1..=n {
        let d = (rec0.beta(k) + s * energy) * prev - rec0.alpha(k - 1) * rec0.gamma(k) * prev2;
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

/// `(α_{n−1} γ_n > 0 for all 1 ≤ n ≤ N, violating n)`.
pub fn arscott_check(spec: &PotentialSpec, fam: ExpansionFamily) -> Result<(bool, Vec<usize>)> {
    let n_top = truncated(spec, fam)?;
    let rec = recurrence(spec, fam, 0.0)?;
    let bad: Vec<usize> = (1..=n_top).filter(|&n| rec.alpha(n - 1) * rec.gamma(n) <= 0.0).collect();
    Ok((bad.is_empty(), bad))
}

/// Default energy window `[−(l+6)², (l+6)²(1 + 1/k²)]`, with `l` replaced by
/// `max(l, −l−5)` so the window is the same for a spec and its partner.
#[must_use]
pub fn default_window(spec: &PotentialSpec) -> (f64, f64) {
    let l = spec.l().max(-spec.l() - 5.0);
    let w = (l + 6.0).powi(2).max(1.0);
    (-w, w * (1.0 + spec.modulus().a()))
}

/// All `N + 1` roots of the characteristic polynomial, complex ones included,
/// ordered by real then imaginary part.
pub fn characteristic_roots(spec: &PotentialSpec, fam: ExpansionFamily) -> Result<Vec<Complex<f64>>> {
    let n_top = truncated(spec, fam)?;
    let rec = recurrence(spec, fam, 0.0)?;
    let size = n_top + 1;
    let m = DMatrix::from_fn(size, size, |i, j| {
        if i == j {
            rec.beta(i)
        } else if j == i + 1 {
            rec.alpha(i)
        } else if i == j + 1 {
            rec.gamma(i)
        } else {
            0.0
        }
    });
    // det(M0 + sE) = 0  ⇔  E = −λ/s
    let s = rec.beta_slope();
    let mut roots: Vec<Complex<f64>> = m.complex_eigenvalues().iter().map(|lam| -lam / s).collect();
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(roots)
}

/// Real roots of the determinant by scanning and bisection.
pub fn finite_spectrum_by_determinant(
    spec: &PotentialSpec,
    fam: ExpansionFamily,
    window: Option<(f64, f64)>,
) -> Result<Vec<f64>> {
    let n_top = truncated(spec, fam)?;
    let rec0 = recurrence(spec, fam, 0.0)?;
    let (lo, hi) = window.unwrap_or_else(|| default_window(spec));
    let steps = ((hi - lo) / SCAN_STEP).ceil().max(1.0) as usize;
    let f = |e: f64| scaled_det(&rec0, n_top, e);
    let mut roots = Vec::new();
    let mut e_prev = lo;
    let mut f_prev = f(lo);
    for i in 1..=steps {
        let e = lo + (hi - lo) * i as f64 / steps as f64;
        let fe = f(e);
        if f_prev == 0.0 {
            roots.push(e_prev);
        } else if f_prev.signum() != fe.signum() && fe != 0.0 {
            roots.push(bisect(&f, e_prev, e, f_prev));
        }
        e_prev = e;
        f_prev = fe;
    }
    if f_prev == 0.0 {
        roots.push(e_prev);
    }
    Ok(roots)
}

fn bisect(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, fa: f64) -> f64 {
    let sa = fa.signum();
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid == a || mid == b {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == sa {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

/// QES spectrum of a terminating family.
///
/// `β_n(E) = β_n(0) + sE` with a common slope `s`, so the determinant
/// vanishes exactly at `E = −λ/s` for the eigenvalues `λ` of the matrix at
/// `E = 0`. Under the Arscott condition that matrix is similar to a
/// symmetric one (off-diagonal `√(α_n γ_{n+1})`), and Sturm bisection gives
/// all `N + 1` real levels. Otherwise real roots are located by scanning the
/// determinant, and the shortfall is reported.
pub fn finite_spectrum(spec: &PotentialSpec, fam: ExpansionFamily) -> Result<SpectrumResult> {
    let n_top = truncated(spec, fam)?;
    let (arscott_ok, arscott_violations) = arscott_check(spec, fam)?;
    let rec0 = recurrence(spec, fam, 0.0)?;
    let s = rec0.beta_slope();
    let (mut energies, method, complex_roots) = if arscott_ok {
        let diag: Vec<f64> = (0..=n_top).map(|n| rec0.beta(n)).collect();
        let off: Vec<f64> = (0..n_top).map(|n| (rec0.alpha(n) * rec0.gamma(n + 1)).sqrt()).collect();
        let e: Vec<f64> = symmetric_eigenvalues(&diag, &off).into_iter().map(|lam| -lam / s).collect();
        (e, SpectrumMethod::SturmBisection, Vec::new())
    } else {
        let e = finite_spectrum_by_determinant(spec, fam, None)?;
        let complex: Vec<Complex<f64>> =
            characteristic_roots(spec, fam)?.into_iter().filter(|z| z.im.abs() > 1e-9 * (1.0 + z.re.abs())).collect();
        (e, SpectrumMethod::DeterminantScan, complex)
    };
    energies.sort_by(f64::total_cmp);
    let solutions = energies.iter().map(|&e| SeriesSolution::finite(spec, fam, e)).collect::<Result<Vec<_>>>()?;
    let mut degenerate_pairs = Vec::new();
    for i in 0..energies.len() {
        for j in i + 1..energies.len() {
            let scale = 1.0f64.max(energies[i].abs());
            if (energies[i] - energies[j]).abs() <= DEGENERACY_TOL * scale {
                degenerate_pairs.push((i, j));
            }
        }
    }
    let missing_real_roots = (n_top + 1).saturating_sub(energies.len());
    Ok(SpectrumResult {
        family: fam,
        spec: *spec,
        truncation: n_top,
        energies,
        solutions,
        arscott_ok,
        arscott_violations,
        degenerate_pairs,
        missing_real_roots,
        complex_roots,
        method,
    })
}
