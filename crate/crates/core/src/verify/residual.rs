use crate::error::{Error, Result};
use crate::heun::potential_value;
use crate::series::SeriesSolution;

/// Distance kept from the ends of the half cell, in units of `K`.
pub const WALL_MARGIN: f64 = 1e-3;

#[derive(Debug, Clone)]
pub struct ResidualReport {
    pub grid: Vec<f64>,
    pub max_rel_residual: f64,
    pub l2_rel_residual: f64,
    /// Margin from the ends of `(0, K)` in units of `K`.
    pub excluded_margin: f64,
}

/// Residual of `ψ'' + (E − V)ψ = 0` on `n_grid` points of the half cell
/// `(0, K)`, with `ψ''` from the 5-point stencil and step `K/(8 n_grid)`.
///
/// Each point is weighed against the local size of the equation,
/// `|ψ''| + (1 + |E| + |V|)|ψ|`; the potential itself blows up at the wall
/// while `Vψ` stays bounded.
pub fn ode_residual(sol: &SeriesSolution, n_grid: usize) -> Result<ResidualReport> {
    let h = sol.spec().quarter_period() / (8.0 * n_grid as f64);
    ode_residual_with_step(sol, n_grid, h)
}

/// As [`ode_residual`] with an explicit finite-difference step.
pub fn ode_residual_with_step(sol: &SeriesSolution, n_grid: usize, h: f64) -> Result<ResidualReport> {
    if n_grid < 16 {
        return Err(Error::Argument(format!("n_grid = {n_grid} below 16")));
    }
    let spec = sol.spec();
    let kk = spec.quarter_period();
    let lo = WALL_MARGIN * kk + 2.0 * h;
    let hi = kk - WALL_MARGIN * kk - 2.0 * h;
    if lo >= hi {
        return Err(Error::Argument(format!("step {h} too large for the half cell")));
    }
    let grid: Vec<f64> = (0..n_grid).map(|i| lo + (hi - lo) * i as f64 / (n_grid - 1) as f64).collect();
    let e = sol.energy();
    let (mut r_max, mut s_max, mut r2, mut s2) = (0.0f64, 0.0f64, 0.0, 0.0);
    for &u in &grid {
        let v = potential_value(spec, u)?;
        let p: Vec<f64> = [-2.0, -1.0, 0.0, 1.0, 2.0].iter().map(|d| sol.evaluate(u + d * h)).collect::<Result<_>>()?;
        let d2 = (-p[0] + 16.0 * p[1] - 30.0 * p[2] + 16.0 * p[3] - p[4]) / (12.0 * h * h);
        let r = (d2 + (e - v) * p[2]).abs();
        let scale = d2.abs() + (1.0 + e.abs() + v.abs()) * p[2].abs();
        r_max = r_max.max(r);
        s_max = s_max.max(scale);
        r2 += r * r;
        s2 += scale * scale;
    }
    let ratio = |a: f64, b: f64| if b == 0.0 { 0.0 } else { a / b };
    Ok(ResidualReport {
        grid,
        max_rel_residual: ratio(r_max, s_max),
        l2_rel_residual: ratio(r2.sqrt(), s2.sqrt()),
        excluded_margin: WALL_MARGIN,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heun::{Potential, PotentialSpec};
    use crate::series::ExpansionFamily;

    fn bold5_minus_three_halves() -> SeriesSolution {
        let spec = PotentialSpec::new(Potential::V1, -1.5, 0.5).unwrap();
        SeriesSolution::finite(&spec, ExpansionFamily::bold(5), -0.5 - 0.875).unwrap()
    }

    #[test]
    fn eigenfunction_has_small_residual() {
        let rep = ode_residual(&bold5_minus_three_halves(), 64).unwrap();
        assert!(rep.max_rel_residual < 1e-7, "{}", rep.max_rel_residual);
        assert!(rep.l2_rel_residual <= rep.max_rel_residual);
        assert_eq!(rep.excluded_margin, WALL_MARGIN);
    }

    #[test]
    fn perturbed_energy_is_detected() {
        let sol = bold5_minus_three_halves().with_energy_override(-0.5 - 0.875 + 0.01);
        let rep = ode_residual(&sol, 64).unwrap();
        assert!(rep.max_rel_residual > 1e-4, "{}", rep.max_rel_residual);
    }

    #[test]
    fn small_grid_rejected() {
        assert!(matches!(ode_residual(&bold5_minus_three_halves(), 15), Err(Error::Argument(_))));
    }
}
