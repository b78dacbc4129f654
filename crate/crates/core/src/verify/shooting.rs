//! Shooting eigenvalues from the potential alone.
//!
//! The half cell runs from the regular symmetry point to the wall. Near the
//! wall `V ≈ 2/s² + v₀` in the distance `s`, so the bounded solution starts
//! as `ψ = s²(1 + c₂s²)` with `c₂ = (v₀ − E)/10`. At the symmetry point the
//! parity fixes `ψ' = 0` (even) or `ψ = 0` (odd).
//!
//! Both solutions are tracked by their Prüfer angle `θ = atan2(ψ, ψ')`,
//! each measured in its own direction of integration. The two solutions
//! join smoothly iff `θ_wall + θ_sym ≡ 0 (mod π)` at the matching point,
//! and this sum increases monotonically with `E`, so level `j` sits where it
//! equals `(j + 1)π`. This is the log-derivative condition without its poles.

use std::f64::consts::PI;

use super::ode::{integrate, Tolerance};
use crate::error::Result;
use crate::heun::{potential_value, Parity, Potential, PotentialSpec};

const START_OFFSET: f64 = 1e-3;
const ENERGY_TOL: f64 = 1e-10;
const MAX_ENERGY_SPAN: f64 = 1e5;

#[derive(Debug, Clone)]
pub struct ShootingSpectrum {
    pub energies: Vec<f64>,
    /// False when the search stopped before finding every requested level.
    pub complete: bool,
}

struct Shooter {
    spec: PotentialSpec,
    parity: Parity,
    kk: f64,
    v0: f64,
    tol: Tolerance,
}

impl Shooter {
    fn new(spec: &PotentialSpec, parity: Parity) -> Result<Self> {
        let kk = spec.quarter_period();
        let mut s =
            Self { spec: *spec, parity, kk, v0: 0.0, tol: Tolerance { rtol: 1e-11, atol: 1e-300, h_max: kk / 100.0 } };
        // v₀ = lim (V − 2/s²), Richardson on the even expansion in s
        let g = |s_: f64| -> Result<f64> { Ok(potential_value(spec, s.u_from_wall(s_))? - 2.0 / (s_ * s_)) };
        let h = 0.02 * kk;
        s.v0 = (4.0 * g(0.5 * h)? - g(h)?) / 3.0;
        Ok(s)
    }

    fn u_from_wall(&self, s: f64) -> f64 {
        match self.spec.kind() {
            Potential::V1 => self.kk - s,
            Potential::V2 => s,
        }
    }

    /// Distance from the wall to the matching point.
    fn wall_span(&self) -> f64 {
        match self.spec.kind() {
            Potential::V1 => 0.5 * self.kk,
            Potential::V2 => self.kk,
        }
    }

    fn angle_along<F>(&self, rhs: F, t1: f64, t0: f64, y0: [f64; 2]) -> Result<f64>
    where
        F: Fn(f64, [f64; 2]) -> Result<[f64; 2]>,
    {
        let mut raw = y0[0].atan2(y0[1]);
        let mut theta = raw;
        integrate(rhs, t0, y0, t1, self.tol, |_, y| {
            let next = y[0].atan2(y[1]);
            let mut d = next - raw;
            if d > PI {
                d -= 2.0 * PI;
            } else if d < -PI {
                d += 2.0 * PI;
            }
            theta += d;
            raw = next;
        })?;
        Ok(theta)
    }

    fn matching_angle(&self, e: f64) -> Result<f64> {
        let s0 = START_OFFSET * self.kk;
        let c2 = (self.v0 - e) / 10.0;
        let start = [s0 * s0 * (1.0 + c2 * s0 * s0), 2.0 * s0 + 4.0 * c2 * s0.powi(3)];
        let wall = self.angle_along(
            |s, y| Ok([y[1], (potential_value(&self.spec, self.u_from_wall(s))? - e) * y[0]]),
            self.wall_span(),
            s0,
            start,
        )?;
        let sym_start = match self.parity {
            Parity::Even => [1.0, 0.0],
            Parity::Odd => [0.0, 1.0],
        };
        let sym = match self.spec.kind() {
            Potential::V1 => self.angle_along(
                |u, y| Ok([y[1], (potential_value(&self.spec, u)? - e) * y[0]]),
                0.5 * self.kk,
                0.0,
                sym_start,
            )?,
            Potential::V2 => sym_start[0].atan2(sym_start[1]),
        };
        Ok(wall + sym)
    }

    /// Energy below the ground state of the sector.
    fn floor(&self) -> Result<f64> {
        let mut v_min = f64::INFINITY;
        for i in 1..200 {
            let s = self.wall_span() * f64::from(i) / 200.0;
            v_min = v_min.min(potential_value(&self.spec, self.u_from_wall(s))?);
        }
        let mut e = v_min - 1.0;
        for _ in 0..20 {
            if self.matching_angle(e)? < PI {
                break;
            }
            e -= 10.0 + e.abs();
        }
        Ok(e)
    }

    fn level(&self, j: usize, lo: f64, e_cap: f64) -> Result<Option<f64>> {
        let target = (j as f64 + 1.0) * PI;
        let mut a = lo;
        let mut step = 1.0;
        let mut b = lo + step;
        while self.matching_angle(b)? < target {
            if b >= e_cap {
                return Ok(None);
            }
            a = b;
            step *= 2.0;
            b = (b + step).min(e_cap);
        }
        while b - a > ENERGY_TOL * (1.0 + a.abs()) {
            let mid = 0.5 * (a + b);
            if self.matching_angle(mid)? < target {
                a = mid;
            } else {
                b = mid;
            }
        }
        Ok(Some(0.5 * (a + b)))
    }
}

/// Lowest `max_count` levels of one parity sector.
pub fn shooting_spectrum(spec: &PotentialSpec, parity: Parity, max_count: usize) -> Result<ShootingSpectrum> {
    let shooter = Shooter::new(spec, parity)?;
    let floor = shooter.floor()?;
    let cap = floor + MAX_ENERGY_SPAN;
    let mut energies = Vec::with_capacity(max_count);
    let mut lo = floor;
    for j in 0..max_count {
        match shooter.level(j, lo, cap)? {
            Some(e) => {
                energies.push(e);
                lo = e;
            }
            None => return Ok(ShootingSpectrum { energies, complete: false }),
        }
    }
    Ok(ShootingSpectrum { energies, complete: true })
}

/// Every level of one parity sector up to `e_max`.
pub fn shooting_energies_below(spec: &PotentialSpec, parity: Parity, e_max: f64) -> Result<ShootingSpectrum> {
    let shooter = Shooter::new(spec, parity)?;
    let floor = shooter.floor()?;
    let top = shooter.matching_angle(e_max)?;
    let count = (top / PI).floor().max(0.0) as usize;
    let mut energies = Vec::with_capacity(count);
    let mut lo = floor;
    for j in 0..count {
        match shooter.level(j, lo, e_max + 1.0)? {
            Some(e) => {
                energies.push(e);
                lo = e;
            }
            None => return Ok(ShootingSpectrum { energies, complete: false }),
        }
    }
    Ok(ShootingSpectrum { energies, complete: true })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn v2_l0_ground_state() {
        let spec = PotentialSpec::new(Potential::V2, 0.0, 0.5).unwrap();
        let s = shooting_spectrum(&spec, Parity::Even, 1).unwrap();
        assert!((s.energies[0] + 2.0).abs() < 1e-7, "{:?}", s.energies);
    }

    #[test]
    fn v1_l2_even_sector() {
        let spec = PotentialSpec::new(Potential::V1, 2.0, 0.5).unwrap();
        let s = shooting_spectrum(&spec, Parity::Even, 2).unwrap();
        assert!((s.energies[0] + 6.0 + 11f64.sqrt()).abs() < 1e-7, "{:?}", s.energies);
        assert!((s.energies[1] + 6.0 - 11f64.sqrt()).abs() < 1e-7, "{:?}", s.energies);
    }
}
