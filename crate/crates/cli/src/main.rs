use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

use commands::{CliError, Problem};

/// Distance kept from singular points, in units of K.
pub const DEFAULT_MARGIN: f64 = 1e-3;
/// Samples per eigenfunction.
pub const DEFAULT_GRID: usize = 256;
/// Levels reported for non-terminating families.
pub const DEFAULT_INFINITE_COUNT: usize = 5;

#[derive(Parser)]
#[command(name = "heun-qes", version, about = "Spectra and eigenfunctions of the elliptic Ganguly potentials")]
#[command(after_help = "Defaults: margin 1e-3 K from singular points, 256-point eigenfunction grid.\n\
Exit codes: 0 success, 1 verification failure, 2 domain error, 3 index error.")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Energies of one expansion family as JSON.
    Spectrum(SpectrumArgs),
    /// Eigenfunction samples on the half cell.
    Eigenfunction(EigenfunctionArgs),
    /// Residual, shooting and equivalence checks; exit 1 on any failure.
    Verify(VerifyArgs),
    /// Energies over a list or range of k² as CSV.
    Sweep(SweepArgs),
}

#[derive(Args, Clone)]
struct CaseArgs {
    /// Potential: v1 or v2.
    #[arg(long, value_parser = parse_potential)]
    potential: heun_qes::Potential,
    /// Coupling l.
    #[arg(long, allow_hyphen_values = true)]
    l: f64,
    /// Family selector: ring1..ring7, bar1..bar7, bold1..bold6. Picked automatically when omitted.
    #[arg(long)]
    family: Option<String>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    case: CaseArgs,
    /// Squared modulus, 0 < k2 < 1.
    #[arg(long)]
    k2: f64,
    /// Levels reported for non-terminating families.
    #[arg(long, default_value_t = DEFAULT_INFINITE_COUNT)]
    count: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct EigenfunctionArgs {
    #[command(flatten)]
    case: CaseArgs,
    #[arg(long)]
    k2: f64,
    /// Level index, 0 = lowest.
    #[arg(long, default_value_t = 0)]
    index: usize,
    /// Number of samples (at least 16).
    #[arg(long, default_value_t = DEFAULT_GRID)]
    grid: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    case: CaseArgs,
    #[arg(long)]
    k2: f64,
    /// Check the level at --index with this energy instead of its own.
    #[arg(long, allow_hyphen_values = true)]
    energy_override: Option<f64>,
    /// Level used with --energy-override.
    #[arg(long, default_value_t = 0)]
    index: usize,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    case: CaseArgs,
    /// Comma-separated k² values.
    #[arg(long, value_delimiter = ',', conflicts_with = "k2_range", required_unless_present = "k2_range")]
    k2: Vec<f64>,
    /// Evenly spaced k² values as start:stop:count.
    #[arg(long)]
    k2_range: Option<String>,
    /// Levels reported for non-terminating families.
    #[arg(long, default_value_t = DEFAULT_INFINITE_COUNT)]
    count: usize,
}

fn parse_potential(s: &str) -> Result<heun_qes::Potential, String> {
    s.parse().map_err(|e: heun_qes::Error| e.to_string())
}

impl CaseArgs {
    fn problem(&self, k2: f64) -> Result<Problem, CliError> {
        Problem::new(self.potential, self.l, k2, self.family.as_deref())
    }
}

fn parse_range(s: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || CliError::Domain(format!("k2 range '{s}' is not start:stop:count"));
    let [a, b, n] = parts.as_slice() else { return Err(bad()) };
    let (a, b): (f64, f64) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
    let n: usize = n.parse().map_err(|_| bad())?;
    Ok(match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect(),
    })
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Spectrum(args) => {
            let problem = args.case.problem(args.k2)?;
            commands::spectrum(&problem, args.count)
        }
        Command::Eigenfunction(args) => {
            let problem = args.case.problem(args.k2)?;
            commands::eigenfunction(&problem, args.index, args.grid, matches!(args.format, Format::Json))
        }
        Command::Verify(args) => {
            let problem = args.case.problem(args.k2)?;
            commands::verify(&problem, args.energy_override.map(|e| (args.index, e)))
        }
        Command::Sweep(args) => {
            let k2s = match &args.k2_range {
                Some(r) => parse_range(r)?,
                None => args.k2.clone(),
            };
            if k2s.is_empty() {
                return Err(CliError::Domain("empty k2 range".into()));
            }
            let problems = k2s.iter().map(|&k2| args.case.problem(k2)).collect::<Result<Vec<_>, _>>()?;
            commands::sweep(&problems, args.count)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Verification(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.code())
        }
    }
}
