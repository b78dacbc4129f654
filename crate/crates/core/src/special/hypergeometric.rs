//! Gauss hypergeometric function on the real line.
//!
//! Direct summation converges slowly near `z = 1` when `c − a − b` is small
//! and positive, which is the usual situation for Heun expansions in `sn²u`
//! or `cn²u`. Near that endpoint the `1 − z` connection formula is used.

use super::gamma::{gamma, rgamma};
use super::{nonpositive_integer, MAX_SERIES_TERMS};
use crate::error::{Error, Result};

/// Relative size of a term that ends the summation.
const TERM_TOL: f64 = 1e-17;

/// Gauss hypergeometric function `₂F₁(a, b; c; z)`.
///
/// Defined for `z < 1`, and at `z = 1` when `c − a − b > 0`. Terminating
/// series (a or b a non-positive integer) are summed exactly for any `z`.
pub fn hyp2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let degree = match (nonpositive_integer(a), nonpositive_integer(b)) {
        (Some(m), Some(n)) => Some(m.min(n)),
        (m, n) => m.or(n),
    };
    if let Some(cm) = nonpositive_integer(c) {
        if degree.is_none_or(|m| m > cm) {
            return Err(Error::Undefined(format!(
                "2F1 with c = {c} a non-positive integer does not terminate in time"
            )));
        }
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if let Some(m) = degree {
        return polynomial(a, b, c, z, m);
    }
    let excess = c - a - b;
    if z > 1.0 || (z == 1.0 && excess <= 0.0) {
        return Err(Error::Domain(format!("2F1 diverges at z = {z} (c − a − b = {excess})")));
    }
    if z == 1.0 {
        return Ok(gamma(c)? * gamma(excess)? * rgamma(c - a) * rgamma(c - b));
    }
    if z < -0.5 {
        // Pfaff
        let w = z / (z - 1.0);
        return Ok((1.0 - z).powf(-a) * hyp2f1(a, c - b, c, w)?);
    }
    if z > 0.9 {
        if excess < 0.0 {
            // Euler
            return Ok((1.0 - z).powf(excess) * hyp2f1(c - a, c - b, c, z)?);
        }
        if (excess - excess.round()).abs() > 0.05 {
            return connection(a, b, c, z);
        }
    }
    series(a, b, c, z).map(|(s, _)| s)
}

/// `₂F₁(a, b; c; z) / Γ(c)`; rejects non-positive integer `c`.
pub fn hyp2f1_tilde(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if nonpositive_integer(c).is_some() {
        return Err(Error::Undefined(format!("F̃ with c = {c} requires a limit")));
    }
    Ok(hyp2f1(a, b, c, z)? * rgamma(c))
}

/// Plain power series; returns the sum and the number of terms used.
fn series(a: f64, b: f64, c: f64, z: f64) -> Result<(f64, usize)> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..MAX_SERIES_TERMS {
        let nf = n as f64;
        let ratio = (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        term *= ratio;
        sum += term;
        if term.abs() <= TERM_TOL * sum.abs() && ratio.abs() < 1.0 {
            return Ok((sum, n + 2));
        }
    }
    Err(Error::Convergence(format!("2F1({a}, {b}; {c}; {z}) needs more than {MAX_SERIES_TERMS} terms")))
}

/// Exact sum of the `m + 1` terms of a terminating series.
fn polynomial(a: f64, b: f64, c: f64, z: f64, m: u64) -> Result<f64> {
    if m as usize >= MAX_SERIES_TERMS {
        return Err(Error::Convergence(format!("polynomial degree {m} above cap")));
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..m {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        sum += term;
    }
    Ok(sum)
}

/// Connection to `1 − z` (A&S 15.3.6); `c − a − b` must not be an integer.
fn connection(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let w = 1.0 - z;
    let s = c - a - b;
    let g_c = gamma(c)?;
    let first = g_c * gamma(s)? * rgamma(c - a) * rgamma(c - b);
    let second = g_c * gamma(-s)? * rgamma(a) * rgamma(b);
    let mut total = 0.0;
    if first != 0.0 {
        total += first * series(a, b, 1.0 - s, w)?.0;
    }
    if second != 0.0 {
        total += second * w.powf(s) * series(c - a, c - b, 1.0 + s, w)?.0;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn logarithm() {
        let v = hyp2f1(1.0, 1.0, 2.0, 0.5).unwrap();
        assert!((v - 1.386_294_361_119_890_6).abs() < 1e-15);
    }

    #[test]
    fn at_origin() {
        assert_eq!(hyp2f1(3.2, -1.7, 0.4, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn undefined_lower_parameter() {
        assert!(matches!(hyp2f1(0.5, 1.5, -2.0, 0.3), Err(Error::Undefined(_))));
        // terminates before the zero denominator
        assert!(hyp2f1(-2.0, 1.5, -3.0, 0.3).is_ok());
    }

    #[test]
    fn polynomial_terms() {
        // F(−3, b; c; z) has exactly four terms
        let (b, c, z) = (1.25, 2.5, 0.7);
        let want = 1.0 - 3.0 * b / c * z + 3.0 * b * (b + 1.0) / (c * (c + 1.0)) * z * z
            - b * (b + 1.0) * (b + 2.0) / (c * (c + 1.0) * (c + 2.0)) * z * z * z;
        assert!((hyp2f1(-3.0, b, c, z).unwrap() - want).abs() < 1e-15);
        // and is a polynomial, so also fine outside the unit disc
        assert!(hyp2f1(-3.0, b, c, 3.0).is_ok());
    }

    #[test]
    fn gauss_sum_at_one() {
        // F(a, b; c; 1) = Γ(c)Γ(c−a−b)/(Γ(c−a)Γ(c−b))
        let (a, b, c) = (0.75, 1.75, 3.0);
        let want = gamma(c).unwrap() * gamma(c - a - b).unwrap() / (gamma(c - a).unwrap() * gamma(c - b).unwrap());
        assert!((hyp2f1(a, b, c, 1.0).unwrap() / want - 1.0).abs() < 1e-14);
    }

    #[test]
    fn connection_matches_series_near_one() {
        // 0.89 uses the series, the others the connection formula.
        // Reference: F(1/2, 1/2; 3/2; z) = asin(√z)/√z at 30 digits.
        let cases = [
            (0.89, 1.306_692_322_953_407_4),
            (0.91, 1.327_237_281_892_678_3),
            (0.99, 1.478_037_662_374_774_8),
            (0.999_999, 1.569_797_111_526_967_5),
        ];
        for (z, want) in cases {
            let v = hyp2f1(0.5, 0.5, 1.5, z).unwrap();
            assert!((v - want).abs() < 1e-14, "z = {z}: {v}");
        }
    }

    #[test]
    fn pfaff_branch() {
        // F(1, 1; 2; z) = −ln(1 − z)/z
        for z in [-0.6, -0.99, -5.0] {
            let want = -(1.0f64 - z).ln() / z;
            assert!((hyp2f1(1.0, 1.0, 2.0, z).unwrap() - want).abs() < 1e-14);
        }
    }

    #[test]
    fn tilde_normalization() {
        assert!((hyp2f1_tilde(1.0, 2.0, 2.5, 0.0).unwrap() - 0.752_252_778_063_675_1).abs() < 1e-15);
        assert!((hyp2f1_tilde(0.0, 3.0, 5.0, 0.4).unwrap() - 1.0 / 24.0).abs() < 1e-16);
        assert!(hyp2f1_tilde(1.0, 1.0, -1.0, 0.2).is_err());
    }

    #[test]
    fn divergent_endpoint_rejected() {
        assert!(matches!(hyp2f1(1.0, 1.0, 1.5, 1.0), Err(Error::Domain(_))));
        assert!(matches!(hyp2f1(1.0, 1.0, 1.5, 1.2), Err(Error::Domain(_))));
    }

    #[test]
    fn series_reports_term_count() {
        let (_, n) = series(0.5, 0.5, 1.5, 0.1).unwrap();
        assert!(n > 5 && n < 40);
    }
}
