use std::fmt;

use rayon::prelude::*;

use heun_qes::heun::Parity;
use heun_qes::series::truncation_order;
use heun_qes::spectrum::{closed_form_deviation, finite_spectrum, infinite_spectrum};
use heun_qes::verify::{equivalence_suite, ode_residual, shooting_energies_below};
use heun_qes::{ExpansionFamily, Potential, PotentialSpec, SeriesSolution, SpectrumResult};

use crate::output::{to_json, CheckDoc, EigenfunctionDoc, Metadata, SpectrumDoc, VerifyDoc};
use crate::{DEFAULT_INFINITE_COUNT, DEFAULT_MARGIN};

const RESIDUAL_TOL: f64 = 1e-7;
const RESIDUAL_GRID: usize = 64;
const SHOOTING_TOL: f64 = 1e-6;
const MAX_INFINITE_TERMS: usize = 500;

#[derive(Debug)]
pub enum CliError {
    /// Bad input or a numerical failure; exit 2.
    Domain(String),
    /// Level index outside the spectrum; exit 3.
    Index(String),
    /// A check failed; carries the report, exit 1.
    Verification(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Domain(_) => 2,
            CliError::Index(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Domain(m) | CliError::Index(m) | CliError::Verification(m) => f.write_str(m),
        }
    }
}

impl From<heun_qes::Error> for CliError {
    fn from(e: heun_qes::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

/// A fully resolved `(potential, l, k², family)` case.
pub struct Problem {
    pub spec: PotentialSpec,
    pub family: ExpansionFamily,
    pub terminating: bool,
    /// Whether the family was picked automatically.
    pub auto_family: bool,
}

impl Problem {
    pub fn new(kind: Potential, l: f64, k2: f64, family: Option<&str>) -> Result<Self, CliError> {
        if !l.is_finite() {
            return Err(CliError::Domain(format!("l = {l} is not finite")));
        }
        let spec = PotentialSpec::new(kind, l, k2)?;
        let (family, auto_family) = match family {
            Some(sel) => {
                let fam: ExpansionFamily = sel.parse()?;
                fam.check(kind)?;
                (fam, false)
            }
            None => (default_family(&spec)?, true),
        };
        let terminating = truncation_order(&spec, family)?.is_some();
        Ok(Self { spec, family, terminating, auto_family })
    }
}

/// First terminating family that satisfies the Arscott condition, else the
/// first terminating one, else the even power series.
fn default_family(spec: &PotentialSpec) -> Result<ExpansionFamily, CliError> {
    let terminating: Vec<ExpansionFamily> = ExpansionFamily::supported(spec.kind())
        .iter()
        .copied()
        .filter(|f| matches!(truncation_order(spec, *f), Ok(Some(_))))
        .collect();
    for &fam in &terminating {
        if finite_spectrum(spec, fam)?.arscott_ok {
            return Ok(fam);
        }
    }
    Ok(terminating.first().copied().unwrap_or_else(|| ExpansionFamily::ring(5)))
}

enum Levels {
    Finite(Box<SpectrumResult>),
    Infinite(Vec<f64>),
}

impl Levels {
    fn of(problem: &Problem, count: usize) -> Result<Self, CliError> {
        if problem.terminating {
            Ok(Levels::Finite(Box::new(finite_spectrum(&problem.spec, problem.family)?)))
        } else {
            Ok(Levels::Infinite(infinite_spectrum(&problem.spec, problem.family, None, count)?))
        }
    }

    fn energies(&self) -> &[f64] {
        match self {
            Levels::Finite(r) => &r.energies,
            Levels::Infinite(e) => e,
        }
    }

    fn solution(&self, problem: &Problem, index: usize) -> Result<SeriesSolution, CliError> {
        let energies = self.energies();
        let Some(&e) = energies.get(index) else {
            return Err(CliError::Index(format!(
                "level {index} out of range: {} has {} real level(s)",
                problem.family,
                energies.len()
            )));
        };
        match self {
            Levels::Finite(r) => Ok(r.solutions[index].clone()),
            Levels::Infinite(_) => Ok(SeriesSolution::infinite(&problem.spec, problem.family, e, MAX_INFINITE_TERMS)?),
        }
    }
}

pub fn spectrum(problem: &Problem, count: usize) -> Result<String, CliError> {
    let levels = Levels::of(problem, count)?;
    let spec = &problem.spec;
    let mut doc = SpectrumDoc {
        potential: spec.kind().label().to_string(),
        l: spec.l(),
        k2: spec.k2(),
        family: problem.family.to_string(),
        series: if problem.terminating { "finite" } else { "infinite" }.to_string(),
        truncation_n: None,
        arscott_ok: None,
        arscott_violations: Vec::new(),
        energies: levels.energies().to_vec(),
        degenerate_pairs: Vec::new(),
        missing_real_roots: 0,
        complex_roots: Vec::new(),
        closed_form_match: None,
        closed_form_deviation: None,
        metadata: Metadata::new(problem.auto_family),
    };
    if let Levels::Finite(r) = &levels {
        doc.truncation_n = Some(r.truncation);
        doc.arscott_ok = Some(r.arscott_ok);
        doc.arscott_violations = r.arscott_violations.clone();
        doc.degenerate_pairs = r.degenerate_pairs.iter().map(|&(i, j)| [i, j]).collect();
        doc.missing_real_roots = r.missing_real_roots;
        doc.complex_roots = r.complex_roots.iter().map(|z| [z.re, z.im]).collect();
        if let Some(dev) = closed_form_deviation(r) {
            doc.closed_form_match = Some(dev <= 1e-10);
            doc.closed_form_deviation = dev.is_finite().then_some(dev);
        }
    }
    to_json(&doc)
}

/// Sample points from the regular end of the half cell to the wall; only
/// the singular end is pulled in by the margin.
fn sample_grid(spec: &PotentialSpec, n: usize) -> Vec<f64> {
    let kk = spec.quarter_period();
    let (lo, hi) = match spec.kind() {
        Potential::V1 => (0.0, kk - DEFAULT_MARGIN * kk),
        Potential::V2 => (DEFAULT_MARGIN * kk, kk),
    };
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

pub fn eigenfunction(problem: &Problem, index: usize, grid: usize, json: bool) -> Result<String, CliError> {
    if grid < 16 {
        return Err(CliError::Domain(format!("grid size {grid} below 16")));
    }
    let levels = Levels::of(problem, (index + 1).max(DEFAULT_INFINITE_COUNT))?;
    let sol = levels.solution(problem, index)?;
    let u = sample_grid(&problem.spec, grid);
    let psi = u.iter().map(|&x| sol.evaluate(x)).collect::<Result<Vec<f64>, _>>()?;
    if let Some(bad) = psi.iter().position(|v| !v.is_finite()) {
        return Err(CliError::Domain(format!("eigenfunction not finite at u = {}", u[bad])));
    }
    if json {
        return to_json(&EigenfunctionDoc {
            potential: problem.spec.kind().label().to_string(),
            l: problem.spec.l(),
            k2: problem.spec.k2(),
            family: problem.family.to_string(),
            index,
            energy: sol.energy(),
            u,
            psi,
            metadata: Metadata::new(problem.auto_family),
        });
    }
    let mut out = String::from("# u psi\n");
    for (x, y) in u.iter().zip(&psi) {
        out += &format!("{x:.14e} {y:.14e}\n");
    }
    Ok(out)
}

fn shooting_levels(spec: &PotentialSpec, family: ExpansionFamily, e_max: f64) -> Result<Vec<f64>, CliError> {
    let sectors = match family.parity(spec.kind()) {
        Some(p) => vec![p],
        None => vec![Parity::Even, Parity::Odd],
    };
    let mut out = Vec::new();
    for p in sectors {
        out.extend(shooting_energies_below(spec, p, e_max)?.energies);
    }
    Ok(out)
}

fn check(name: &str, family: ExpansionFamily, energy: Option<f64>, value: f64, tolerance: f64) -> CheckDoc {
    CheckDoc {
        name: name.to_string(),
        family: family.to_string(),
        energy,
        value: value.is_finite().then_some(value),
        tolerance,
        passed: value <= tolerance,
    }
}

fn level_checks(problem: &Problem, sol: &SeriesSolution, checks: &mut Vec<CheckDoc>) -> Result<(), CliError> {
    let e = sol.energy();
    let residual = ode_residual(sol, RESIDUAL_GRID).map_or(f64::INFINITY, |r| r.max_rel_residual);
    checks.push(check("ode_residual", problem.family, Some(e), residual, RESIDUAL_TOL));
    let reference = shooting_levels(&problem.spec, problem.family, e + 1.0)?;
    let gap = reference.iter().map(|x| (x - e).abs()).fold(f64::INFINITY, f64::min);
    checks.push(check("shooting", problem.family, Some(e), gap, SHOOTING_TOL));
    Ok(())
}

pub fn verify(problem: &Problem, energy_override: Option<(usize, f64)>) -> Result<String, CliError> {
    let spec = &problem.spec;
    // an omitted family means every terminating family, or the given one
    let families: Vec<ExpansionFamily> = if problem.auto_family && problem.terminating {
        ExpansionFamily::supported(spec.kind())
            .iter()
            .copied()
            .filter(|f| matches!(truncation_order(spec, *f), Ok(Some(_))))
            .collect()
    } else {
        vec![problem.family]
    };
    let mut checks = Vec::new();
    let mut arscott = Vec::new();
    for family in families {
        let sub = Problem { spec: *spec, family, terminating: problem.terminating, auto_family: false };
        let levels = Levels::of(&sub, DEFAULT_INFINITE_COUNT)?;
        if let Levels::Finite(r) = &levels {
            arscott.push((family.to_string(), r.arscott_ok));
        }
        match energy_override {
            Some((index, e)) => {
                if !e.is_finite() {
                    return Err(CliError::Domain(format!("energy override {e} is not finite")));
                }
                let sol = levels.solution(&sub, index)?.with_energy_override(e);
                level_checks(&sub, &sol, &mut checks)?;
            }
            None => {
                for index in 0..levels.energies().len() {
                    level_checks(&sub, &levels.solution(&sub, index)?, &mut checks)?;
                }
            }
        }
    }
    for entry in equivalence_suite(spec).entries {
        checks.push(CheckDoc {
            name: format!("equivalence: {}", entry.name),
            family: String::new(),
            energy: None,
            value: entry.max_deviation.is_finite().then_some(entry.max_deviation),
            tolerance: entry.tolerance,
            passed: entry.passed,
        });
    }
    let passed = !checks.is_empty() && checks.iter().all(|c| c.passed);
    let doc = VerifyDoc {
        potential: spec.kind().label().to_string(),
        l: spec.l(),
        k2: spec.k2(),
        arscott: arscott.into_iter().map(|(family, ok)| crate::output::ArscottDoc { family, arscott_ok: ok }).collect(),
        checks,
        passed,
        metadata: Metadata::new(problem.auto_family),
    };
    let text = to_json(&doc)?;
    if passed {
        Ok(text)
    } else {
        Err(CliError::Verification(text))
    }
}

/// `(k2, l, family, index, energy)`.
type Row = (f64, f64, String, usize, f64);

pub fn sweep(problems: &[Problem], count: usize) -> Result<String, CliError> {
    let rows: Vec<Vec<Row>> = problems
        .par_iter()
        .map(|p| {
            let levels = Levels::of(p, count)?;
            Ok(levels
                .energies()
                .iter()
                .enumerate()
                .map(|(i, &e)| (p.spec.k2(), p.spec.l(), p.family.to_string(), i, e))
                .collect())
        })
        .collect::<Result<_, CliError>>()?;
    let mut rows: Vec<_> = rows.into_iter().flatten().collect();
    rows.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.3.cmp(&b.3)));
    let mut out = String::from("k2,l,family,index,energy\n");
    for (k2, l, family, index, e) in rows {
        if !e.is_finite() {
            return Err(CliError::Domain(format!("non-finite energy at k2 = {k2}")));
        }
        out += &format!("{k2},{l},{family},{index},{e}\n");
    }
    Ok(out)
}
