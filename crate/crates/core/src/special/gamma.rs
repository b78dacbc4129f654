use std::f64::consts::PI;

use super::nonpositive_integer;
use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// sin(πx) with exact zeros at the integers.
fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    if r == r.round() {
        return 0.0;
    }
    (PI * r).sin()
}

fn lanczos(x: f64) -> f64 {
    // Valid for x >= 0.5.
    let x = x - 1.0;
    let mut sum = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        sum += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * sum
}

fn factorial(n: u32) -> f64 {
    (2..=n).fold(1.0, |acc, k| acc * f64::from(k))
}

/// Γ(x) for real `x`, about 1e-15 relative accuracy away from overflow.
pub fn gamma(x: f64) -> Result<f64> {
    if nonpositive_integer(x).is_some() {
        return Err(Error::Pole(x));
    }
    if x == x.round() && (1.0..=23.0).contains(&x) {
        return Ok(factorial(x as u32 - 1));
    }
    if x < 0.5 {
        Ok(PI / (sin_pi(x) * lanczos(1.0 - x)))
    } else {
        Ok(lanczos(x))
    }
}

/// 1/Γ(x), returning 0 at the poles of Γ.
pub fn rgamma(x: f64) -> f64 {
    if nonpositive_integer(x).is_some() {
        return 0.0;
    }
    if x < 0.5 {
        sin_pi(x) * lanczos(1.0 - x) / PI
    } else {
        match gamma(x) {
            Ok(g) => 1.0 / g,
            Err(_) => 0.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(gamma(1.0).unwrap(), 1.0);
        assert_eq!(gamma(5.0).unwrap(), 24.0);
        assert!((gamma(0.5).unwrap() - PI.sqrt()).abs() < 1e-15);
        assert!((gamma(2.5).unwrap() - 0.75 * PI.sqrt()).abs() < 2e-15);
        assert!((gamma(-0.5).unwrap() + 2.0 * PI.sqrt()).abs() < 1e-14);
        assert!((gamma(10.3).unwrap() / 716_430.689_062_376_5 - 1.0).abs() < 1e-13);
    }

    #[test]
    fn poles() {
        assert!(matches!(gamma(0.0), Err(Error::Pole(_))));
        assert!(matches!(gamma(-3.0), Err(Error::Pole(_))));
        assert_eq!(rgamma(-2.0), 0.0);
        assert!((rgamma(2.5) - 0.752_252_778_063_675_1).abs() < 1e-15);
    }

    #[test]
    fn recurrence_holds() {
        for i in 0..200 {
            let x = -7.3 + 0.071 * f64::from(i);
            if nonpositive_integer(x).is_some() || nonpositive_integer(x + 1.0).is_some() {
                continue;
            }
            let lhs = gamma(x + 1.0).unwrap();
            let rhs = x * gamma(x).unwrap();
            assert!((lhs - rhs).abs() <= 1e-13 * lhs.abs(), "x = {x}");
        }
    }
}
