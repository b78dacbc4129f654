use super::{HeunParams, PotentialSpec, Prefactor};
use crate::error::{Error, Result};
use crate::series::{layout, ExpansionFamily};

/// Exponents of `x^{e0} (1−x)^{e1} (1−x/a)^{e2}` multiplying a transformed
/// Heun function.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct XPrefactor {
    pub x: f64,
    pub one_minus_x: f64,
    pub one_minus_x_over_a: f64,
}

impl XPrefactor {
    /// With `x = sn²u`: `1 − x = cn²u` and `1 − x/a = dn²u`.
    #[must_use]
    pub fn to_prefactor(self) -> Prefactor {
        Prefactor { p_sn: 2.0 * self.x, p_cn: 2.0 * self.one_minus_x, p_dn: 2.0 * self.one_minus_x_over_a }
    }
}

/// Homotopic transformation `T_i`, `i ∈ 1..=8`.
pub fn homotopic(i: u8, p: &HeunParams) -> Result<(HeunParams, XPrefactor)> {
    let (a, q) = (p.a(), p.q());
    let (al, be, ga, de, ep) = (p.alpha(), p.beta(), p.gamma(), p.delta(), p.epsilon());
    let pre = |x: f64, y: f64, z: f64| XPrefactor { x, one_minus_x: y, one_minus_x_over_a: z };
    let (q2, al2, be2, ga2, de2, f) = match i {
        1 => (q, al, be, ga, de, pre(0.0, 0.0, 0.0)),
        2 => (q - (ga - 1.0) * (de * a + ep), be - ga + 1.0, al - ga + 1.0, 2.0 - ga, de, pre(1.0 - ga, 0.0, 0.0)),
        3 => (q - (de - 1.0) * ga * a, be - de + 1.0, al - de + 1.0, ga, 2.0 - de, pre(0.0, 1.0 - de, 0.0)),
        4 => (
            q - (ga + de - 2.0) * a - (ga - 1.0) * ep,
            al - ga - de + 2.0,
            be - ga - de + 2.0,
            2.0 - ga,
            2.0 - de,
            pre(1.0 - ga, 1.0 - de, 0.0),
        ),
        5 => (q - ga * (al + be - ga - de), -al + ga + de, -be + ga + de, ga, de, pre(0.0, 0.0, 1.0 - ep)),
        6 => (
            q - de * (ga - 1.0) * a - al - be + de + 1.0,
            -be + de + 1.0,
            -al + de + 1.0,
            2.0 - ga,
            de,
            pre(1.0 - ga, 0.0, 1.0 - ep),
        ),
        7 => (
            q - ga * ((de - 1.0) * a + al + be - ga - de),
            -be + ga + 1.0,
            -al + ga + 1.0,
            ga,
            2.0 - de,
            pre(0.0, 1.0 - de, 1.0 - ep),
        ),
        8 => (
            q - (ga + de - 2.0) * a - al - be + de + 1.0,
            2.0 - al,
            2.0 - be,
            2.0 - ga,
            2.0 - de,
            pre(1.0 - ga, 1.0 - de, 1.0 - ep),
        ),
        other => return Err(Error::Argument(format!("homotopic index {other} not in 1..=8"))),
    };
    Ok((HeunParams::new(a, q2, al2, be2, ga2, de2)?, f))
}

/// `H(a, q; α, β, γ, δ; x) = H(1−a, αβ−q; α, β, δ, γ; 1−x)`.
#[must_use]
pub fn fractional_m49(p: &HeunParams) -> HeunParams {
    HeunParams::new(1.0 - p.a(), -p.q() + p.alpha() * p.beta(), p.alpha(), p.beta(), p.delta(), p.gamma())
        .expect("M49 preserves finiteness and moves a off {0, 1} when a ∉ {0, 1}")
}

/// Multiplicative factor of an expansion family, including the Darboux
/// substitution and, for hypergeometric groups, the Euler step.
pub fn family_prefactor(spec: &PotentialSpec, fam: ExpansionFamily) -> Result<Prefactor> {
    Ok(layout(spec, fam, 0.0)?.prefactor)
}
