//! Dormand–Prince 5(4) for two-component systems.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub rtol: f64,
    pub atol: f64,
    pub h_max: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { rtol: 1e-11, atol: 1e-300, h_max: f64::INFINITY }
    }
}

const MAX_STEPS: usize = 1_000_000;

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// 5th minus 4th order weights
const E: [f64; 7] =
    [71.0 / 57600.0, 0.0, -71.0 / 16695.0, 71.0 / 1920.0, -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0];

/// Integrate `y' = f(t, y)` from `t0` to `t1 > t0`. `observe` sees every
/// accepted step.
pub fn integrate<F, O>(f: F, t0: f64, y0: [f64; 2], t1: f64, tol: Tolerance, mut observe: O) -> Result<[f64; 2]>
where
    F: Fn(f64, [f64; 2]) -> Result<[f64; 2]>,
    O: FnMut(f64, [f64; 2]),
{
    let mut t = t0;
    let mut y = y0;
    let span = t1 - t0;
    if span <= 0.0 {
        return Ok(y);
    }
    let mut h = (span / 100.0).min(tol.h_max);
    let mut k = [[0.0; 2]; 7];
    k[0] = f(t, y)?;
    for _ in 0..MAX_STEPS {
        if t >= t1 {
            return Ok(y);
        }
        let last = t + h >= t1;
        if last {
            h = t1 - t;
        }
        for s in 1..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(s) {
                ys[0] += h * A[s][j] * kj[0];
                ys[1] += h * A[s][j] * kj[1];
            }
            k[s] = f(t + C[s] * h, ys)?;
        }
        // The last stage is evaluated at the 5th-order solution (FSAL).
        let mut y_new = y;
        let mut err = [0.0; 2];
        for (s, ks) in k.iter().enumerate() {
            for i in 0..2 {
                if s < 6 {
                    y_new[i] += h * A[6][s] * ks[i];
                }
                err[i] += h * E[s] * ks[i];
            }
        }
        let norm = ((0..2)
            .map(|i| {
                let sc = tol.atol + tol.rtol * y[i].abs().max(y_new[i].abs());
                (err[i] / sc).powi(2)
            })
            .sum::<f64>()
            / 2.0)
            .sqrt();
        if norm <= 1.0 {
            t = if last { t1 } else { t + h };
            y = y_new;
            k[0] = k[6];
            observe(t, y);
        }
        let factor = if norm == 0.0 { 5.0 } else { (0.9 * norm.powf(-0.2)).clamp(0.2, 5.0) };
        h = (h * factor).min(tol.h_max);
        if h <= 1e-15 * t.abs().max(1.0) {
            return Err(Error::Convergence(format!("step size underflow at t = {t}")));
        }
    }
    Err(Error::Convergence("integrator step cap".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator() {
        let tol = Tolerance { rtol: 1e-11, atol: 1e-14, h_max: 0.1 };
        let y = integrate(|_, y| Ok([y[1], -y[0]]), 0.0, [0.0, 1.0], 10.0, tol, |_, _| {}).unwrap();
        assert!((y[0] - 10f64.sin()).abs() < 1e-9);
        assert!((y[1] - 10f64.cos()).abs() < 1e-9);
    }
}
