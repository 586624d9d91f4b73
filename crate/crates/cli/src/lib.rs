//! Command-line front end for the torsion coefficient calculus.
//!
//! Every subcommand prints a JSON report with sorted keys. Exact values are
//! `"p/q"` strings, floats carry 12 significant digits, and each numeric
//! field has an entry in `sources` naming the formula or oracle behind it.
//! Exit codes: 0 success, 2 input error, 3 invariant violation.

pub mod commands;
pub mod corpus;
pub mod csvio;
pub mod error;
pub mod problem;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use torsion_core::singularity::SpectralConvention;

use crate::report::Report;

pub use crate::error::{CliError, EXIT_INPUT, EXIT_INVARIANT};

#[derive(Debug, Parser)]
#[command(name = "torsion", version, about = "Boundary coefficients of analytic torsion under degenerations")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Series and ring truncation order
    #[arg(long, global = true)]
    pub order: Option<usize>,
    /// Spectral genus sign convention
    #[arg(long, global = true, value_enum, default_value_t = Convention::Steenbrink)]
    pub convention: Convention,
    /// Fitting tolerance (ϱ rounding for `fit`, coefficient cutoff for `bt-fit`)
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Convention {
    Steenbrink,
    Alt,
}

impl From<Convention> for SpectralConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Steenbrink => SpectralConvention::Steenbrink,
            Convention::Alt => SpectralConvention::Alt,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Milnor numbers by every applicable route
    Milnor { problem: PathBuf },
    /// Spectra of quasi-homogeneous germs
    Spectrum { problem: PathBuf },
    /// Spectral genus p̃_g
    SpectralGenus { problem: PathBuf },
    /// κ for isolated hypersurface singularities
    KappaIhs { problem: PathBuf },
    /// κ for ordinary quadratic rank-2 singular loci
    KappaQuadratic { problem: PathBuf },
    /// κ from semi-stable reduction data
    KappaSemistable { problem: PathBuf },
    /// Elementary exponents and δ
    Exponents { problem: PathBuf },
    /// Fit `r,value` samples to the boundary model
    Fit {
        csv: PathBuf,
        /// Include the 1/log(1/r) column
        #[arg(long)]
        with_c: bool,
    },
    /// Fit a determinant series in log|t|^{-2}
    BtFit {
        csv: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// Numeric curvature of a log-type metric against its leading term
    CurvatureCheck { problem: PathBuf },
    /// Eta identities and the node family fit
    EllipticVerify {
        #[arg(long, default_value_t = 10.0)]
        im_tau_min: f64,
        #[arg(long, default_value_t = 200.0)]
        im_tau_max: f64,
        #[arg(long, default_value_t = 60)]
        count: usize,
        /// Also write the samples as CSV
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Re-derive every corpus value through independent routes
    CorpusCheck {
        /// Corpus file (default: $TORSION_CORPUS_DIR/corpus.json, else the bundled one)
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

/// A finished command: its report and exit code.
#[derive(Debug)]
pub struct Done {
    pub report: Report,
    pub code: u8,
}

impl Done {
    pub fn ok(report: Report) -> Self {
        Done { report, code: 0 }
    }

    pub fn invariant(report: Report) -> Self {
        Done { report, code: EXIT_INVARIANT }
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let output = cli.global.output.clone();
    let (code, text) = match commands::dispatch(&cli.command, &cli.global) {
        Ok(done) => (done.code, done.report.render()),
        Err(e) => (e.code, error_report(&e).render()),
    };
    let mut stderr = String::new();
    if code != 0 {
        stderr.push_str(&format!("torsion: exit {code}\n"));
    }
    match output {
        Some(path) => match std::fs::write(&path, &text) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr },
            Err(e) => Outcome {
                code: EXIT_INPUT,
                stdout: String::new(),
                stderr: format!("torsion: cannot write {}: {e}\n", path.display()),
            },
        },
        None => Outcome { code, stdout: text, stderr },
    }
}

fn error_report(e: &CliError) -> Report {
    let mut r = Report::new();
    r.value("error", serde_json::Value::String(e.message.clone()));
    r.number("exitCode", e.code, "exit status");
    r
}
