use serde::Serialize;

use crate::commands::CliError;
use crate::{DEFAULT_GRID, DEFAULT_MARGIN};

#[derive(Serialize)]
pub struct Metadata {
    pub version: &'static str,
    #[serde(serialize_with = "finite::one")]
    pub margin: f64,
    pub grid: usize,
    pub family_auto: bool,
}

impl Metadata {
    pub fn new(family_auto: bool) -> Self {
        Self { version: env!("CARGO_PKG_VERSION"), margin: DEFAULT_MARGIN, grid: DEFAULT_GRID, family_auto }
    }
}

#[derive(Serialize)]
pub struct SpectrumDoc {
    pub potential: String,
    #[serde(serialize_with = "finite::one")]
    pub l: f64,
    #[serde(serialize_with = "finite::one")]
    pub k2: f64,
    pub family: String,
    pub series: String,
    #[serde(rename = "truncation_N")]
    pub truncation_n: Option<usize>,
    pub arscott_ok: Option<bool>,
    pub arscott_violations: Vec<usize>,
    #[serde(serialize_with = "finite::many")]
    pub energies: Vec<f64>,
    pub degenerate_pairs: Vec<[usize; 2]>,
    pub missing_real_roots: usize,
    /// `[re, im]` pairs.
    #[serde(serialize_with = "finite::pairs")]
    pub complex_roots: Vec<[f64; 2]>,
    pub closed_form_match: Option<bool>,
    #[serde(serialize_with = "finite::opt")]
    pub closed_form_deviation: Option<f64>,
    pub metadata: Metadata,
}

#[derive(Serialize)]
pub struct EigenfunctionDoc {
    pub potential: String,
    #[serde(serialize_with = "finite::one")]
    pub l: f64,
    #[serde(serialize_with = "finite::one")]
    pub k2: f64,
    pub family: String,
    pub index: usize,
    #[serde(serialize_with = "finite::one")]
    pub energy: f64,
    #[serde(serialize_with = "finite::many")]
    pub u: Vec<f64>,
    #[serde(serialize_with = "finite::many")]
    pub psi: Vec<f64>,
    pub metadata: Metadata,
}

#[derive(Serialize)]
pub struct CheckDoc {
    pub name: String,
    pub family: String,
    #[serde(serialize_with = "finite::opt")]
    pub energy: Option<f64>,
    /// `None` when the quantity could not be computed.
    #[serde(serialize_with = "finite::opt")]
    pub value: Option<f64>,
    #[serde(serialize_with = "finite::one")]
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Serialize)]
pub struct ArscottDoc {
    pub family: String,
    pub arscott_ok: bool,
}

#[derive(Serialize)]
pub struct VerifyDoc {
    pub potential: String,
    #[serde(serialize_with = "finite::one")]
    pub l: f64,
    #[serde(serialize_with = "finite::one")]
    pub k2: f64,
    pub arscott: Vec<ArscottDoc>,
    pub checks: Vec<CheckDoc>,
    pub passed: bool,
    pub metadata: Metadata,
}

/// serde_json would write NaN and ±∞ as `null`; refuse them instead.
mod finite {
    use serde::ser::{Error, SerializeSeq};
    use serde::Serializer;

    fn check<E: Error>(v: f64) -> Result<f64, E> {
        if v.is_finite() {
            Ok(v)
        } else {
            Err(E::custom(format!("non-finite number {v} in output")))
        }
    }

    pub fn one<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(check(*v)?)
    }

    pub fn opt<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => s.serialize_some(&check::<S::Error>(*x)?),
            None => s.serialize_none(),
        }
    }

    pub fn many<S: Serializer>(v: &[f64], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for &x in v {
            seq.serialize_element(&check::<S::Error>(x)?)?;
        }
        seq.end()
    }

    pub fn pairs<S: Serializer>(v: &[[f64; 2]], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for &[a, b] in v {
            seq.serialize_element(&[check::<S::Error>(a)?, check::<S::Error>(b)?])?;
        }
        seq.end()
    }
}

pub fn to_json<T: Serialize>(doc: &T) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(doc).map_err(|e| CliError::Domain(e.to_string()))?;
    text.push('\n');
    Ok(text)
}
