use std::f64::consts::FRAC_PI_2;

use super::MAX_AGM_STEPS;
use crate::error::{Error, Result};

/// Elliptic modulus with the Heun singularity `a = 1/k²` and the quarter
/// period cached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticModulus {
    k: f64,
    k2: f64,
    a: f64,
    quarter_period: f64,
}

impl EllipticModulus {
    /// Build from `k²`; requires `0 < k² < 1`.
    pub fn new(k2: f64) -> Result<Self> {
        if !(k2 > 0.0 && k2 < 1.0) {
            return Err(Error::Domain(format!("modulus k² = {k2} outside (0, 1)")));
        }
        Ok(Self { k: k2.sqrt(), k2, a: 1.0 / k2, quarter_period: complete_k(k2)? })
    }

    #[must_use]
    pub fn k(&self) -> f64 {
        self.k
    }

    #[must_use]
    pub fn k2(&self) -> f64 {
        self.k2
    }

    /// Complementary `k'² = 1 − k²`.
    #[must_use]
    pub fn kp2(&self) -> f64 {
        1.0 - self.k2
    }

    /// Heun singularity `a = 1/k²`.
    #[must_use]
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Quarter period `K(k)`.
    #[must_use]
    pub fn quarter_period(&self) -> f64 {
        self.quarter_period
    }

    pub fn jacobi(&self, u: f64) -> JacobiTriple {
        jacobi_with_period(u, self.k2, self.quarter_period)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiTriple {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

fn agm(a0: f64, b0: f64) -> Result<f64> {
    let (mut a, mut b) = (a0, b0);
    for _ in 0..MAX_AGM_STEPS {
        if (a - b).abs() <= 4.0 * f64::EPSILON * a {
            return Ok(0.5 * (a + b));
        }
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    Err(Error::Convergence("AGM iteration cap".into()))
}

/// Complete elliptic integral of the first kind as a function of `k²`.
pub fn complete_k(k2: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&k2) {
        return Err(Error::Domain(format!("K(k) diverges or is undefined for k² = {k2}")));
    }
    Ok(FRAC_PI_2 / agm(1.0, (1.0 - k2).sqrt())?)
}

/// `(sn u, cn u, dn u)` for real `u` and `0 ≤ k² < 1`.
pub fn jacobi(u: f64, k2: f64) -> Result<JacobiTriple> {
    let kk = complete_k(k2)?;
    Ok(jacobi_with_period(u, k2, kk))
}

fn jacobi_with_period(u: f64, k2: f64, kk: f64) -> JacobiTriple {
    let sign = if u < 0.0 { -1.0 } else { 1.0 };
    let mut w = u.abs();
    let period = 4.0 * kk;
    if w >= period {
        w -= period * (w / period).floor();
    }
    // sn(w + 2K) = −sn w, cn(w + 2K) = −cn w
    let mut flip = 1.0;
    if w >= 2.0 * kk {
        w -= 2.0 * kk;
        flip = -1.0;
    }
    let j = if w <= 0.5 * kk {
        core(w, k2)
    } else if w <= 1.5 * kk {
        // Shift by K keeps cn accurate near its zero.
        let c = core(w - kk, k2);
        let kp = (1.0 - k2).sqrt();
        JacobiTriple { sn: c.cn / c.dn, cn: -kp * c.sn / c.dn, dn: kp / c.dn }
    } else {
        let c = core(w - 2.0 * kk, k2);
        JacobiTriple { sn: -c.sn, cn: -c.cn, dn: c.dn }
    };
    JacobiTriple { sn: sign * flip * j.sn, cn: flip * j.cn, dn: j.dn }
}

/// Descending Landen (AGM) evaluation, |t| ≤ K/2.
fn core(t: f64, k2: f64) -> JacobiTriple {
    if t.abs() < 1e-4 {
        let t2 = t * t;
        return JacobiTriple {
            sn: t * (1.0 - (1.0 + k2) * t2 / 6.0 + (1.0 + 14.0 * k2 + k2 * k2) * t2 * t2 / 120.0),
            cn: 1.0 - t2 / 2.0 + (1.0 + 4.0 * k2) * t2 * t2 / 24.0,
            dn: 1.0 - k2 * t2 / 2.0 + k2 * (4.0 + k2) * t2 * t2 / 24.0,
        };
    }
    let mut a = [0.0; MAX_AGM_STEPS + 1];
    let mut c = [0.0; MAX_AGM_STEPS + 1];
    a[0] = 1.0;
    let mut b = (1.0 - k2).sqrt();
    c[0] = k2.sqrt();
    let mut n = 0;
    while c[n].abs() > f64::EPSILON * a[n] && n < MAX_AGM_STEPS {
        a[n + 1] = 0.5 * (a[n] + b);
        c[n + 1] = 0.5 * (a[n] - b);
        b = (a[n] * b).sqrt();
        n += 1;
    }
    let mut phi = 2f64.powi(n as i32) * a[n] * t;
    let mut phi_prev = phi;
    for i in (1..=n).rev() {
        phi_prev = phi;
        phi = 0.5 * (phi + (c[i] * phi.sin() / a[i]).asin());
    }
    let (sn, cn) = phi.sin_cos();
    let dn = if n == 0 { (1.0 - k2 * sn * sn).sqrt() } else { cn / (phi_prev - phi).cos() };
    JacobiTriple { sn, cn, dn }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_period() {
        assert_eq!(complete_k(0.0).unwrap(), FRAC_PI_2);
        assert!((complete_k(0.5).unwrap() - 1.854_074_677_301_371_9).abs() < 1e-15);
        assert!(matches!(complete_k(1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn special_values() {
        let m = EllipticModulus::new(0.5).unwrap();
        let z = m.jacobi(0.0);
        assert_eq!((z.sn, z.cn, z.dn), (0.0, 1.0, 1.0));
        let at_k = m.jacobi(m.quarter_period());
        assert!((at_k.sn - 1.0).abs() < 1e-15);
        assert!(at_k.cn.abs() < 1e-15);
        assert!((at_k.dn - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn half_period_shift() {
        let m = EllipticModulus::new(0.7).unwrap();
        let kk = m.quarter_period();
        for i in 0..50 {
            let u = -3.0 + 0.13 * f64::from(i);
            let p = m.jacobi(u);
            let s = m.jacobi(u + 2.0 * kk);
            assert!((s.sn + p.sn).abs() < 1e-14);
            assert!((s.cn + p.cn).abs() < 1e-14);
            assert!((s.dn - p.dn).abs() < 1e-14);
        }
    }

    #[test]
    fn cn_relative_accuracy_near_quarter_period() {
        // cn(K − s) = k' sn s / dn s
        let m = EllipticModulus::new(0.5).unwrap();
        let kk = m.quarter_period();
        let kp = m.kp2().sqrt();
        for s in [1e-3, 2e-3 * kk, 0.01, 0.1] {
            let near = m.jacobi(kk - s);
            let off = m.jacobi(s);
            let want = kp * off.sn / off.dn;
            assert!((near.cn / want - 1.0).abs() < 1e-12, "s = {s}");
        }
    }

    #[test]
    fn small_modulus_limit() {
        let m = EllipticModulus::new(1e-12).unwrap();
        for i in 0..40 {
            let u = 0.2 * f64::from(i) - 4.0;
            let j = m.jacobi(u);
            assert!((j.sn - u.sin()).abs() < 1e-10);
            assert!((j.cn - u.cos()).abs() < 1e-10);
            assert!((j.dn - 1.0).abs() < 1e-10);
        }
    }
}
