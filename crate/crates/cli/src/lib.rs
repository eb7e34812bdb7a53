//! Front end for the fockdirac library: identity verification, the polarized
//! electron example and field sampling.

pub mod config;
pub mod output;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use fockdirac::{DiracError, ExampleReport, ExpectationEngine, StateFamily, VerificationReport, Verifier};
use thiserror::Error;

pub use config::{Axis, GridSpec, RunConfig, SampleCounts};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(String),
    #[error("numerical failure: {0}")]
    Numerical(DiracError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Numerical(_) => 1,
            _ => 2,
        }
    }
}

impl From<DiracError> for CliError {
    fn from(e: DiracError) -> Self {
        match e {
            DiracError::QuadratureNotConverged { .. }
            | DiracError::Diverged { .. }
            | DiracError::Ambiguous { .. }
            | DiracError::NoSolution { .. }
            | DiracError::NotNormalized { .. } => CliError::Numerical(e),
            other => CliError::Config(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "fockdirac", version, about = "Free Dirac field on a per-k Fock space")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Overrides,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the identity suites; exit 1 if any check fails.
    Verify,
    /// Energies and charge of the sech^2 polarized electron.
    Example,
    /// Classical spinor and r current over a spacetime grid, as CSV.
    SampleField,
}

/// Command-line values override the config file, which overrides defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// JSON run configuration.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,
    /// Length scale a of rho = sech^2(a|k|).
    #[arg(long, global = true, value_name = "X", allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long, global = true, value_name = "X", allow_hyphen_values = true)]
    pub kappa: Option<f64>,
    #[arg(long, global = true, value_name = "X", allow_hyphen_values = true)]
    pub ell: Option<f64>,
    /// Gauss-Legendre nodes per radial panel.
    #[arg(long, global = true, value_name = "N")]
    pub nodes: Option<usize>,
    /// Radial cutoff in units of the profile scale.
    #[arg(long, global = true, value_name = "X", allow_hyphen_values = true)]
    pub rmax: Option<f64>,
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Add this amount to one entry of gamma^1 (fault injection).
    #[arg(long, global = true, value_name = "EPS", allow_hyphen_values = true)]
    pub perturb: Option<f64>,
}

impl Overrides {
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.a {
            cfg.a = v;
        }
        if let Some(v) = self.kappa {
            cfg.constants.kappa = v;
        }
        if let Some(v) = self.ell {
            cfg.constants.ell = v;
        }
        if let Some(v) = self.nodes {
            cfg.quadrature.radial_nodes = v;
        }
        if let Some(v) = self.rmax {
            cfg.quadrature.r_max = v;
        }
        if let Some(v) = &self.out {
            cfg.output = Some(v.clone());
        }
        if let Some(v) = self.perturb {
            cfg.perturbation = Some(v);
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// What a command printed and how the process should exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String, code: u8) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code,
        }
    }

    fn error(e: &CliError) -> Self {
        Self {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit_code(),
        }
    }
}

/// Parse arguments (including the program name) and run.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::ok(text, 0)
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => Outcome::error(&e),
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let cfg = cli.opts.resolve()?;
    match cli.command {
        Command::Verify => {
            let report = cmd_verify(&cfg)?;
            let json = output::to_json(&report)?;
            if let Some(path) = &cfg.output {
                write_file(path, &json)?;
            }
            let text = if cli.opts.json { json } else { output::verify_text(&report) };
            Ok(Outcome::ok(text, if report.all_pass { 0 } else { 1 }))
        }
        Command::Example => {
            let report = cmd_example(&cfg)?;
            let json = output::to_json(&report)?;
            if let Some(path) = &cfg.output {
                write_file(path, &json)?;
            }
            let text = if cli.opts.json { json } else { output::example_text(&report) };
            Ok(Outcome::ok(text, 0))
        }
        Command::SampleField => {
            let csv = cmd_sample_field(&cfg)?;
            match &cfg.output {
                Some(path) => {
                    write_file(path, &csv)?;
                    let mut s = String::new();
                    let _ = writeln!(s, "wrote {} rows to {}", csv.lines().count() - 1, path.display());
                    Ok(Outcome::ok(s, 0))
                }
                None => Ok(Outcome::ok(csv, 0)),
            }
        }
    }
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<VerificationReport, CliError> {
    let verifier = Verifier::new(cfg.constants, cfg.verify_config())?;
    Ok(verifier.run())
}

pub fn cmd_example(cfg: &RunConfig) -> Result<ExampleReport, CliError> {
    let engine = ExpectationEngine::new(cfg.constants, cfg.quadrature)?;
    Ok(engine.example_report(cfg.a)?)
}

pub fn cmd_sample_field(cfg: &RunConfig) -> Result<String, CliError> {
    let engine = ExpectationEngine::new(cfg.constants, cfg.quadrature)?;
    let state = StateFamily::Rho(cfg.state());
    let mut csv = String::from(output::CSV_HEADER);
    csv.push('\n');
    for x in cfg.grid.points() {
        let phi = engine.classical_spinor(&state, &x)?;
        let r = engine.r_density(&state, &x)?.real();
        output::push_row(&mut csv, &x.to_array(), &phi, &r);
    }
    Ok(csv)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}
