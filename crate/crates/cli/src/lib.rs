//! Command-line front end for `kreinkit-core`.

// `!(x <= y)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use kreinkit_core::{Complex64, ScanOptions};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "kreinkit", version, about = "Self-adjoint extensions via boundary triples", allow_negative_numbers = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the boundary condition encoding of a model.
    Validate {
        config: PathBuf,
    },
    /// Eigenvalues in [zmin, zmax] as CSV rows (z, indicator_residual, multiplicity).
    Spectrum {
        config: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        zmin: f64,
        #[arg(long, allow_negative_numbers = true)]
        zmax: f64,
        #[command(flatten)]
        scan: ScanFlags,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Green function G(x, y; z) along x as CSV rows (x, re_g, im_g).
    Green {
        config: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        z: f64,
        /// Imaginary part of z.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        z_im: f64,
        #[arg(long, allow_negative_numbers = true)]
        y: f64,
        #[arg(long, allow_negative_numbers = true)]
        xmin: f64,
        #[arg(long, allow_negative_numbers = true)]
        xmax: f64,
        #[arg(long, default_value_t = 101)]
        samples: usize,
        /// Refuse z when the spectral indicator is at most this times 1 + ‖BQ − A‖.
        #[arg(long, default_value_t = ScanOptions::default().accept_rtol)]
        accept_rtol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Residual of the Q-function identity Q(z) − Q(ζ)* = (z − conj ζ) γ(ζ)*γ(z).
    Qcheck {
        config: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        z: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        z_im: f64,
        #[arg(long, allow_negative_numbers = true)]
        zeta: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        zeta_im: f64,
        /// Exit with failure when the residual exceeds this value.
        #[arg(long, default_value_t = 1e-5)]
        max_residual: f64,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct ScanFlags {
    /// Number of scan sample points.
    #[arg(long, default_value_t = ScanOptions::default().grid)]
    pub grid: usize,
    /// Golden-section bracket width.
    #[arg(long, default_value_t = ScanOptions::default().tol)]
    pub tol: f64,
    /// Accept a minimum when the indicator is at most this times 1 + ‖BQ − A‖.
    #[arg(long, default_value_t = ScanOptions::default().accept_rtol)]
    pub accept_rtol: f64,
    /// Kernel vectors have singular values at most this times the acceptance threshold.
    #[arg(long, default_value_t = ScanOptions::default().kernel_factor)]
    pub kernel_factor: f64,
}

impl From<ScanFlags> for ScanOptions {
    fn from(f: ScanFlags) -> Self {
        ScanOptions {
            grid: f.grid,
            tol: f.tol,
            accept_rtol: f.accept_rtol,
            kernel_factor: f.kernel_factor,
        }
    }
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Validate { config } => commands::validate(&config),
        Command::Spectrum {
            config,
            zmin,
            zmax,
            scan,
            out,
        } => commands::spectrum(&commands::SpectrumArgs {
            config,
            zmin,
            zmax,
            scan: scan.into(),
            out,
        }),
        Command::Green {
            config,
            z,
            z_im,
            y,
            xmin,
            xmax,
            samples,
            accept_rtol,
            out,
        } => commands::green(&commands::GreenArgs {
            config,
            z: Complex64::new(z, z_im),
            y,
            xmin,
            xmax,
            samples,
            accept_rtol,
            out,
        }),
        Command::Qcheck {
            config,
            z,
            z_im,
            zeta,
            zeta_im,
            max_residual,
        } => commands::qcheck(&commands::QcheckArgs {
            config,
            z: Complex64::new(z, z_im),
            zeta: Complex64::new(zeta, zeta_im),
            max_residual,
        }),
    }
}
