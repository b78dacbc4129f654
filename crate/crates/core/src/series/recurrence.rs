use super::{ExpansionFamily, Group};
use crate::error::Result;
use crate::heun::{darboux_params, fractional_m49, homotopic, HeunParams, PotentialSpec, Prefactor};

/// How the n-th basis function depends on `u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Term {
    /// `sn^{2n}u`
    Power,
    /// `z^n F̃(n + a0, b; n + c0; z)` with `z = sn²u` or `cn²u`.
    Hyper { z_is_cn2: bool, a0: f64, b: f64, c0: f64 },
}

/// Everything needed to build and evaluate one family at one energy.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Layout {
    pub params: HeunParams,
    pub prefactor: Prefactor,
    pub term: Term,
    pub beta_slope: f64,
}

/// Derive a family from the Darboux parameters.
///
/// The power group applies `T_i` and expands in `x`. The bar group applies
/// `T_i` and expands in hypergeometric functions of `x`. The bold group
/// applies `T_i`, then `x ↦ 1 − x`, and expands in functions of `1 − x`.
/// When the hypergeometric terms would diverge at `z = 1` (`δ > 1`), the
/// Euler relation moves `(1 − z)^{1−δ}` into the prefactor.
pub(crate) fn layout(spec: &PotentialSpec, fam: ExpansionFamily, energy: f64) -> Result<Layout> {
    fam.check(spec.kind())?;
    let base = darboux_params(spec, energy);
    let (transformed, xpre) = homotopic(fam.index(), &base)?;
    let mut prefactor = Prefactor::base(spec).combine(xpre.to_prefactor());
    // E enters only through q, with dq/dE = −a/4.
    let quarter_a = 0.25 * spec.modulus().a();
    let (params, term, beta_slope) = match fam.group() {
        Group::PowerRing => (transformed, Term::Power, quarter_a),
        Group::HyperBar | Group::HyperBold => {
            let bold = fam.group() == Group::HyperBold;
            let p = if bold { fractional_m49(&transformed) } else { transformed };
            let (al, ga, de) = (p.alpha(), p.gamma(), p.delta());
            let term = if de > 1.0 {
                let shift = 2.0 * (1.0 - de);
                if bold {
                    prefactor.p_sn += shift;
                } else {
                    prefactor.p_cn += shift;
                }
                Term::Hyper { z_is_cn2: bold, a0: al + 1.0 - de, b: ga - al, c0: ga }
            } else {
                Term::Hyper { z_is_cn2: bold, a0: al, b: ga + de - al - 1.0, c0: ga }
            };
            (p, term, if bold { -quarter_a } else { quarter_a })
        }
    };
    Ok(Layout { params, prefactor, term, beta_slope })
}

/// Coefficients of `α_n b_{n+1} + β_n b_n + γ_n b_{n−1} = 0` for one family
/// at one energy.
#[derive(Debug, Clone, Copy)]
pub struct RecurrenceTriple {
    params: HeunParams,
    power: bool,
    beta_slope: f64,
}

impl RecurrenceTriple {
    #[must_use]
    pub fn alpha(&self, n: usize) -> f64 {
        let p = &self.params;
        let n = n as f64;
        if self.power {
            p.a() * (n + p.gamma()) * (n + 1.0)
        } else {
            p.a() * (n + 1.0)
        }
    }

    #[must_use]
    pub fn beta(&self, n: usize) -> f64 {
        let p = &self.params;
        let (a, al, be, ga, de) = (p.a(), p.alpha(), p.beta(), p.gamma(), p.delta());
        let n = n as f64;
        if self.power {
            -(a + 1.0) * n * n - (a * (ga + de - 1.0) + al + be - de) * n - p.q()
        } else {
            -(a + 1.0) * n * n
                - (a * (2.0 * al + 1.0 - ga - de) + al + be - de) * n
                - p.q()
                - a * al * (al + 1.0 - ga - de)
        }
    }

    /// `γ_n` for `n ≥ 1`; `γ_0` is never used.
    #[must_use]
    pub fn gamma(&self, n: usize) -> f64 {
        self.gamma_zeros().iter().map(|r| n as f64 - r).product()
    }

    /// `dβ_n/dE`, the same for every `n`.
    #[must_use]
    pub fn beta_slope(&self) -> f64 {
        self.beta_slope
    }

    /// Effective Heun parameters the recurrence was generated from.
    #[must_use]
    pub fn params(&self) -> &HeunParams {
        &self.params
    }

    /// Values of `n` at which `γ_n` vanishes.
    pub(crate) fn gamma_zeros(&self) -> Vec<f64> {
        let p = &self.params;
        let (al, be, ga, de) = (p.alpha(), p.beta(), p.gamma(), p.delta());
        if self.power {
            vec![1.0 - al, 1.0 - be]
        } else {
            vec![1.0 - al, de - al, ga + de - al - be]
        }
    }
}

pub fn recurrence(spec: &PotentialSpec, fam: ExpansionFamily, energy: f64) -> Result<RecurrenceTriple> {
    let lay = layout(spec, fam, energy)?;
    Ok(RecurrenceTriple { params: lay.params, power: matches!(lay.term, Term::Power), beta_slope: lay.beta_slope })
}

/// Smallest `N` with `γ_{N+1} = 0` and `γ_n ≠ 0` for `1 ≤ n ≤ N`.
///
/// The zeros of `γ_n` are affine in `l` with half-integer coefficients, so
/// they can only be integers when `2l` is. In that case every parameter is a
/// multiple of 1/4 and the test below runs on exact integers.
pub fn truncation_order(spec: &PotentialSpec, fam: ExpansionFamily) -> Result<Option<usize>> {
    let rec = recurrence(spec, fam, 0.0)?;
    if spec.twice_l().is_none() {
        return Ok(None);
    }
    let n = rec
        .gamma_zeros()
        .into_iter()
        .filter_map(|r| {
            let quarters = 4.0 * r;
            if quarters != quarters.round() {
                return None;
            }
            let quarters = quarters as i64;
            (quarters % 4 == 0 && quarters >= 4).then(|| (quarters / 4 - 1) as usize)
        })
        .min();
    Ok(n)
}
