use super::HeunParams;
use crate::error::{Error, Result};
use crate::special::{EllipticModulus, JacobiTriple};

/// The two elliptic potentials.
///
/// * `V1(u) = (1−k²)[2/cn²u − (l+2)(l+3)/dn²u]`, walls at `cn u = 0`,
///   physical cell `(−K, K)`.
/// * `V2(u) = 2/sn²u − (1−k²)(l+2)(l+3)/dn²u`, walls at `sn u = 0`,
///   physical cell `(0, 2K)`.
///
/// Both are invariant under `l ↦ −l − 5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Potential {
    V1,
    V2,
}

impl Potential {
    #[must_use]
    pub fn label(self) -> &'static str {
        match self {
            Potential::V1 => "v1",
            Potential::V2 => "v2",
        }
    }
}

impl std::str::FromStr for Potential {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "v1" => Ok(Potential::V1),
            "v2" => Ok(Potential::V2),
            other => Err(Error::Argument(format!("unknown potential '{other}'"))),
        }
    }
}

/// Symmetry class about the regular end of the half cell (`u = 0` for V1,
/// `u = K` for V2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// Tolerance for treating `l` as an integer or half-odd integer.
pub(crate) const L_SNAP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSpec {
    kind: Potential,
    l: f64,
    modulus: EllipticModulus,
}

impl PotentialSpec {
    /// `l` within `1e-9` of a multiple of 1/2 is snapped onto it.
    pub fn new(kind: Potential, l: f64, k2: f64) -> Result<Self> {
        Ok(Self::with_modulus(kind, l, EllipticModulus::new(k2)?))
    }

    #[must_use]
    pub fn with_modulus(kind: Potential, l: f64, modulus: EllipticModulus) -> Self {
        let twice = (2.0 * l).round();
        let l = if (2.0 * l - twice).abs() <= 2.0 * L_SNAP { 0.5 * twice } else { l };
        Self { kind, l, modulus }
    }

    #[must_use]
    pub fn kind(&self) -> Potential {
        self.kind
    }
    #[must_use]
    pub fn l(&self) -> f64 {
        self.l
    }
    #[must_use]
    pub fn modulus(&self) -> EllipticModulus {
        self.modulus
    }
    #[must_use]
    pub fn k2(&self) -> f64 {
        self.modulus.k2()
    }
    #[must_use]
    pub fn quarter_period(&self) -> f64 {
        self.modulus.quarter_period()
    }

    /// `2l` when it is an integer.
    #[must_use]
    pub fn twice_l(&self) -> Option<i64> {
        let t = 2.0 * self.l;
        (t == t.round()).then_some(t as i64)
    }

    /// Singular end of the half cell `[0, K]`: `K` for V1, `0` for V2.
    #[must_use]
    pub fn wall(&self) -> f64 {
        match self.kind {
            Potential::V1 => self.quarter_period(),
            Potential::V2 => 0.0,
        }
    }

    /// Regular end of the half cell, where the potential is symmetric.
    #[must_use]
    pub fn symmetry_point(&self) -> f64 {
        match self.kind {
            Potential::V1 => 0.0,
            Potential::V2 => self.quarter_period(),
        }
    }

    /// The same potential written with `l ↦ −l − 5`.
    #[must_use]
    pub fn symmetry_partner(&self) -> Self {
        Self::with_modulus(self.kind, -self.l - 5.0, self.modulus)
    }
}

/// Value of the potential at `u`.
pub fn potential_value(spec: &PotentialSpec, u: f64) -> Result<f64> {
    let j = spec.modulus().jacobi(u);
    let kp2 = spec.modulus().kp2();
    let coupling = (spec.l + 2.0) * (spec.l + 3.0);
    let v = match spec.kind {
        Potential::V1 => {
            if j.cn == 0.0 {
                return Err(Error::SingularPoint(u));
            }
            kp2 * (2.0 / (j.cn * j.cn) - coupling / (j.dn * j.dn))
        }
        Potential::V2 => {
            if j.sn == 0.0 {
                return Err(Error::SingularPoint(u));
            }
            2.0 / (j.sn * j.sn) - kp2 * coupling / (j.dn * j.dn)
        }
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::SingularPoint(u))
    }
}

/// Heun parameters of the Darboux form at energy `E`.
#[must_use]
pub fn darboux_params(spec: &PotentialSpec, energy: f64) -> HeunParams {
    let l = spec.l;
    let a = spec.modulus.a();
    let alpha = 0.5 * (l + 6.0);
    let beta = 0.5 * (l + 5.0);
    let (gamma, delta, q) = match spec.kind {
        Potential::V1 => (0.5, 2.5, 0.25 * (l * l + 6.0 * l + 7.0) - 0.25 * a * (l * l + 5.0 * l + 2.0 + energy)),
        Potential::V2 => (2.5, 0.5, 0.25 * (l + 5.0) * (l + 5.0) - 0.25 * a * (energy + 2.0 + l * l + 5.0 * l)),
    };
    HeunParams::new(a, q, alpha, beta, gamma, delta).expect("Darboux parameters are finite with a = 1/k² > 1")
}

/// Exponents of `ψ(u) = sn^{p_sn} cn^{p_cn} dn^{p_dn} · S(x(u))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prefactor {
    pub p_sn: f64,
    pub p_cn: f64,
    pub p_dn: f64,
}

impl Prefactor {
    /// The Darboux substitution factor: `cn² dn^{l+3}` (V1), `sn² dn^{l+3}` (V2).
    #[must_use]
    pub fn base(spec: &PotentialSpec) -> Self {
        let p_dn = spec.l + 3.0;
        match spec.kind {
            Potential::V1 => Self { p_sn: 0.0, p_cn: 2.0, p_dn },
            Potential::V2 => Self { p_sn: 2.0, p_cn: 0.0, p_dn },
        }
    }

    #[must_use]
    pub fn combine(self, other: Self) -> Self {
        Self { p_sn: self.p_sn + other.p_sn, p_cn: self.p_cn + other.p_cn, p_dn: self.p_dn + other.p_dn }
    }

    /// Integer exponents keep the sign of sn and cn; fractional ones need a
    /// positive base.
    pub fn eval(&self, j: &JacobiTriple) -> Result<f64> {
        Ok(power(j.sn, self.p_sn)? * power(j.cn, self.p_cn)? * power(j.dn, self.p_dn)?)
    }
}

fn power(base: f64, p: f64) -> Result<f64> {
    if p == 0.0 {
        return Ok(1.0);
    }
    if base == 0.0 && p < 0.0 {
        return Err(Error::SingularPoint(base));
    }
    if p == p.round() && p.abs() < f64::from(i32::MAX) {
        return Ok(base.powi(p as i32));
    }
    if base < 0.0 {
        return Err(Error::Domain(format!("fractional power {p} of negative {base}")));
    }
    Ok(base.powf(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn v2_value_at_quarter_period() {
        let spec = PotentialSpec::new(Potential::V2, 0.0, 0.5).unwrap();
        let v = potential_value(&spec, spec.quarter_period()).unwrap();
        assert!((v + 4.0).abs() < 1e-13);
    }

    #[test]
    fn walls() {
        let v1 = PotentialSpec::new(Potential::V1, 0.0, 0.5).unwrap();
        assert!(matches!(potential_value(&v1, v1.quarter_period()), Err(Error::SingularPoint(_))));
        let v2 = PotentialSpec::new(Potential::V2, 1.0, 0.3).unwrap();
        assert!(matches!(potential_value(&v2, 0.0), Err(Error::SingularPoint(_))));
    }

    #[test]
    fn darboux_v1_example() {
        let spec = PotentialSpec::new(Potential::V1, 0.0, 0.5).unwrap();
        let p = darboux_params(&spec, 0.0);
        assert_eq!(p.a(), 2.0);
        assert_eq!(p.alpha(), 3.0);
        assert_eq!(p.beta(), 2.5);
        assert_eq!(p.gamma(), 0.5);
        assert_eq!(p.delta(), 2.5);
        assert_eq!(p.epsilon(), 3.5);
        assert!((p.q() - 0.75).abs() < 1e-15);
    }

    #[test]
    fn darboux_v2_at_minus_five() {
        let spec = PotentialSpec::new(Potential::V2, -5.0, 0.4).unwrap();
        for e in [-3.0, 0.0, 2.5] {
            let p = darboux_params(&spec, e);
            assert!((p.q() + (e + 2.0) / (4.0 * 0.4)).abs() < 1e-14);
        }
    }

    #[test]
    fn l_snapping() {
        let spec = PotentialSpec::new(Potential::V1, -1.500_000_000_1, 0.5).unwrap();
        assert_eq!(spec.l(), -1.5);
        assert_eq!(spec.twice_l(), Some(-3));
        let generic = PotentialSpec::new(Potential::V1, 0.3, 0.5).unwrap();
        assert_eq!(generic.twice_l(), None);
    }

    #[test]
    fn prefactor_sign() {
        let j = JacobiTriple { sn: -0.5, cn: 0.8, dn: 0.9 };
        let p = Prefactor { p_sn: 1.0, p_cn: 2.0, p_dn: -1.5 };
        let want = -0.5 * 0.64 * 0.9f64.powf(-1.5);
        assert!((p.eval(&j).unwrap() - want).abs() < 1e-15);
    }
}
