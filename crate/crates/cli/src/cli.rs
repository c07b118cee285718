//! Argument surface and the process entry point.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands;
use crate::error::CliError;
use crate::output::Format;

/// Directory that relative `--out` paths are resolved against, when set.
pub const OUTPUT_DIR_ENV: &str = "DWS_OUTPUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "dws", version, about = "Bound states of the deformed Woods-Saxon well")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Potential, mass and output settings shared by every subcommand.
#[derive(Debug, Args)]
pub struct CommonArgs {
    /// `key = value` file; flags override its entries
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Mass number A0 (default 40)
    #[arg(long, global = true)]
    pub mass_number: Option<u32>,
    /// Well depth V0 in MeV (default 40.5 + 0.13 A0)
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub v0: Option<f64>,
    /// Deformation q (default 1)
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub q: Option<f64>,
    /// Diffuseness a in fm (default 0.65)
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// Radius parameter r0 in fm (default 1.285)
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub r0: Option<f64>,
    /// Coupling 2mu/hbar^2 in MeV^-1 fm^-2 (default 0.4727)
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub two_mu_over_hbar2: Option<f64>,
    /// Units with hbar = 1: the coupling becomes 2 mu
    #[arg(long, global = true)]
    pub natural_units: bool,
    /// Mass mu for --natural-units (default 1)
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    /// Output table format (default csv)
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write here instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pekeris expansion coefficients D0, D1, D2
    Coeffs,
    /// Closed-form levels for n <= n-max, l <= l-max
    Spectrum(SpectrumArgs),
    /// Closed-form and Numerov energies next to the published reference set
    TableReport(TableReportArgs),
    /// Closed-form energies along a parameter sweep
    Scan(ScanArgs),
    /// Asymptotic-iteration root for one state, with its k schedule
    Aim(AimArgs),
    /// The same states by every route: closed form, AIM, Numerov
    Verify(VerifyArgs),
    /// Normalized radial wavefunction samples
    Wf(WfArgs),
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub n_max: Option<u32>,
    #[arg(long)]
    pub l_max: Option<u32>,
}

#[derive(Debug, Args, Clone)]
pub struct NumerovArgs {
    /// Numerov step in fm (default 0.01)
    #[arg(long)]
    pub numerov_h: Option<f64>,
    /// Grid extent beyond R in fm (default 40)
    #[arg(long)]
    pub r_margin: Option<f64>,
}

#[derive(Debug, Args)]
pub struct TableReportArgs {
    /// Write the embedded reference set instead of the report
    #[arg(long)]
    pub dump_ref: bool,
    #[command(flatten)]
    pub numerov: NumerovArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanParam {
    Q,
    A,
    V0,
    Mu,
}

impl std::str::FromStr for ScanParam {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        <ScanParam as ValueEnum>::from_str(s, true)
    }
}

impl crate::config::Echo for ScanParam {
    fn echo(&self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Parameter to sweep (default q)
    #[arg(long, value_enum)]
    pub param: Option<ScanParam>,
    /// First value of the sweep (default depends on the parameter)
    #[arg(long, allow_negative_numbers = true)]
    pub from: Option<f64>,
    /// Last value of the sweep
    #[arg(long, allow_negative_numbers = true)]
    pub to: Option<f64>,
    /// Number of grid points, endpoints included
    #[arg(long)]
    pub steps: Option<usize>,
    /// Radial quantum numbers, e.g. `0` or `0-2`
    #[arg(long)]
    pub n: Option<String>,
    /// Orbital quantum numbers, e.g. `0-4` or `0,2`
    #[arg(long)]
    pub l: Option<String>,
}

#[derive(Debug, Args, Clone)]
pub struct AimTuning {
    /// First iteration depth (default 40)
    #[arg(long)]
    pub k: Option<usize>,
    /// Energy tolerance in MeV (default 1e-10)
    #[arg(long)]
    pub tol: Option<f64>,
    /// Expansion point in z = exp((r - R)/a) (default 4)
    #[arg(long)]
    pub z0: Option<f64>,
    /// Power-of-two rescaling of the recurrence (default true)
    #[arg(long)]
    pub rescale: Option<bool>,
    /// Energy spacing of the bracketing scan in MeV (default 0.25)
    #[arg(long)]
    pub scan_step: Option<f64>,
}

#[derive(Debug, Args)]
pub struct AimArgs {
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub l: Option<u32>,
    #[command(flatten)]
    pub tuning: AimTuning,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub n_max: Option<u32>,
    #[arg(long)]
    pub l_max: Option<u32>,
    /// Include the AIM route (default true)
    #[arg(long)]
    pub with_aim: Option<bool>,
    #[command(flatten)]
    pub numerov: NumerovArgs,
    #[command(flatten)]
    pub tuning: AimTuning,
}

#[derive(Debug, Args)]
pub struct WfArgs {
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub l: Option<u32>,
    /// Sample count on [0, r_max], endpoints included (default 2001)
    #[arg(long)]
    pub samples: Option<usize>,
    /// Tolerance of the normalization integral (default 1e-8)
    #[arg(long)]
    pub quad_tol: Option<f64>,
}

fn resolve_out(path: PathBuf) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if path.is_relative() && !dir.is_empty() => PathBuf::from(dir).join(path),
        _ => path,
    }
}

fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let out = cli.common.out.clone();
    let text = commands::dispatch(cli)?;
    match out {
        Some(path) => {
            let path = resolve_out(path);
            std::fs::write(&path, text)
                .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
        }
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code: 0 success, 1 usage or validation, 2 numerical
/// non-convergence, 3 no state found.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                1
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    match execute(cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
