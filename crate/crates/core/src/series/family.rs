use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::heun::{Parity, Potential};

/// Expansion group.
///
/// * `PowerRing`: power series in `x = sn²u`.
/// * `HyperBar`: series of hypergeometric functions of `x`.
/// * `HyperBold`: the same after `x ↦ 1 − x`, i.e. functions of `cn²u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    PowerRing,
    HyperBar,
    HyperBold,
}

/// A group together with the homotopic index `1..=8` that generated it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExpansionFamily {
    group: Group,
    index: u8,
}

const V1_FAMILIES: [ExpansionFamily; 8] = [
    ExpansionFamily::ring(1),
    ExpansionFamily::ring(2),
    ExpansionFamily::ring(5),
    ExpansionFamily::ring(6),
    ExpansionFamily::bold(1),
    ExpansionFamily::bold(2),
    ExpansionFamily::bold(5),
    ExpansionFamily::bold(6),
];

const V2_FAMILIES: [ExpansionFamily; 8] = [
    ExpansionFamily::ring(1),
    ExpansionFamily::ring(3),
    ExpansionFamily::ring(5),
    ExpansionFamily::ring(7),
    ExpansionFamily::bar(1),
    ExpansionFamily::bar(3),
    ExpansionFamily::bar(5),
    ExpansionFamily::bar(7),
];

impl ExpansionFamily {
    pub fn new(group: Group, index: u8) -> Result<Self> {
        if !(1..=8).contains(&index) {
            return Err(Error::Argument(format!("family index {index} not in 1..=8")));
        }
        Ok(Self { group, index })
    }

    #[must_use]
    pub const fn ring(index: u8) -> Self {
        Self { group: Group::PowerRing, index }
    }

    #[must_use]
    pub const fn bar(index: u8) -> Self {
        Self { group: Group::HyperBar, index }
    }

    #[must_use]
    pub const fn bold(index: u8) -> Self {
        Self { group: Group::HyperBold, index }
    }

    #[must_use]
    pub fn group(&self) -> Group {
        self.group
    }

    #[must_use]
    pub fn index(&self) -> u8 {
        self.index
    }

    /// Families giving bounded eigenfunctions of the potential.
    #[must_use]
    pub fn supported(kind: Potential) -> &'static [ExpansionFamily] {
        match kind {
            Potential::V1 => &V1_FAMILIES,
            Potential::V2 => &V2_FAMILIES,
        }
    }

    pub fn check(&self, kind: Potential) -> Result<()> {
        if Self::supported(kind).contains(self) {
            Ok(())
        } else {
            Err(Error::Argument(format!("family {self} is not an expansion of {}", kind.label())))
        }
    }

    /// The family representing the same functions after `l ↦ −l − 5`.
    ///
    /// That map turns `T_i` into `T_i ∘ T_5`, which pairs 1↔5, 2↔6, 3↔7.
    #[must_use]
    pub fn partner(&self) -> Self {
        let index = match self.index {
            1 => 5,
            2 => 6,
            3 => 7,
            4 => 8,
            5 => 1,
            6 => 2,
            7 => 3,
            _ => 4,
        };
        Self { group: self.group, index }
    }

    /// Definite parity of power-series families; hypergeometric families
    /// have none on the full cell.
    #[must_use]
    pub fn parity(&self, kind: Potential) -> Option<Parity> {
        if self.group != Group::PowerRing {
            return None;
        }
        match (kind, self.index) {
            (_, 1 | 5) => Some(Parity::Even),
            (Potential::V1, 2 | 6) | (Potential::V2, 3 | 7) => Some(Parity::Odd),
            _ => None,
        }
    }
}

impl fmt::Display for ExpansionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.group {
            Group::PowerRing => "ring",
            Group::HyperBar => "bar",
            Group::HyperBold => "bold",
        };
        write!(f, "{name}{}", self.index)
    }
}

impl FromStr for ExpansionFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let split = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
        let group = match &s[..split] {
            "ring" => Group::PowerRing,
            "bar" => Group::HyperBar,
            "bold" => Group::HyperBold,
            _ => return Err(Error::Argument(format!("unknown family selector '{s}'"))),
        };
        let index = s[split..].parse::<u8>().map_err(|_| Error::Argument(format!("missing family index in '{s}'")))?;
        Self::new(group, index)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selectors_round_trip() {
        for sel in [
            "ring1", "ring2", "ring3", "ring5", "ring6", "ring7", "bar1", "bar3", "bar5", "bar7", "bold1", "bold2",
            "bold5", "bold6",
        ] {
            let fam: ExpansionFamily = sel.parse().unwrap();
            assert_eq!(fam.to_string(), sel);
        }
        assert!("ring9".parse::<ExpansionFamily>().is_err());
        assert!("hat5".parse::<ExpansionFamily>().is_err());
    }

    #[test]
    fn support_matrix() {
        assert!(ExpansionFamily::bold(5).check(Potential::V1).is_ok());
        assert!(ExpansionFamily::bar(5).check(Potential::V1).is_err());
        assert!(ExpansionFamily::ring(7).check(Potential::V1).is_err());
        assert!(ExpansionFamily::ring(7).check(Potential::V2).is_ok());
        assert!(ExpansionFamily::bold(1).check(Potential::V2).is_err());
    }
}
