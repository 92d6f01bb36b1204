//! The four subcommands. Reports go to standard output; the returned value is the exit code.

use std::path::{Path, PathBuf};

use kreinkit_core::krein::{self, ScanOptions};
use kreinkit_core::linalg;
use kreinkit_core::linrel::{self, LinearRelation};
use kreinkit_core::point::Resolvent;
use kreinkit_core::{robin, Complex64};

use crate::config::{Model, ModelConfig};
use crate::error::{CliError, EXIT_FAILURE, EXIT_OK};
use crate::output::{format_number, write_csv, Cell};

fn load(path: &Path) -> Result<Model, CliError> {
    ModelConfig::load(path)?.build()
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "yes"
    } else {
        "no"
    }
}

pub fn validate(config: &Path) -> Result<i32, CliError> {
    match load(config)? {
        Model::Point(model) => {
            let pair = model.build_pair()?;
            let check = linrel::check_pair(&pair);
            let normalized = linrel::is_normalized(&pair);
            println!(
                "model: point_interactions, {} points, boundary dimension {}",
                model.len(),
                2 * model.len()
            );
            println!("bg1 (AB* = BA*): {} (residual {:.3e})", verdict(check.bg1), check.bg1_residual);
            println!(
                "bg2 (M^{{A,B}} invertible): {} (smallest singular value {:.3e})",
                verdict(check.bg2),
                check.block_sigma_min
            );
            println!(
                "self-adjoint: {}; normalized encoding: {}",
                verdict(check.is_selfadjoint()),
                verdict(normalized)
            );
            if check.is_selfadjoint() {
                let u = linrel::cayley_transform(&LinearRelation::from_pair(&pair))?;
                println!("cayley unitarity residual: {:.3e}", linalg::unitarity_residual(&u));
                Ok(EXIT_OK)
            } else {
                Ok(EXIT_FAILURE)
            }
        }
        Model::Robin(problem) => {
            println!(
                "model: robin_halfspace, period {}, {} boundary samples",
                format_number(problem.period()),
                problem.grid_size()
            );
            println!("coefficients: valid (|a| + |b| > 0 at every sample)");
            match problem.symmetrized_asymmetry(-1.0)? {
                Some(r) => println!("b > 0 everywhere: yes (symmetrized asymmetry at z = -1: {r:.3e})"),
                None => println!("b > 0 everywhere: no (mixed or sign-changing boundary condition)"),
            }
            Ok(EXIT_OK)
        }
    }
}

pub struct SpectrumArgs {
    pub config: PathBuf,
    pub zmin: f64,
    pub zmax: f64,
    pub scan: ScanOptions,
    pub out: Option<PathBuf>,
}

pub fn spectrum(args: &SpectrumArgs) -> Result<i32, CliError> {
    let rows: Vec<Vec<Cell>> = match load(&args.config)? {
        Model::Point(model) => {
            let pair = model.build_pair()?;
            krein::eigenvalue_scan(&model, &pair, args.zmin, args.zmax, &args.scan)?
                .iter()
                .map(|r| vec![Cell::Real(r.eigenvalue), Cell::Real(r.indicator_residual), Cell::Count(r.multiplicity())])
                .collect()
        }
        Model::Robin(problem) => robin::robin_bound_states(&problem, args.zmin, args.zmax, &args.scan)?
            .iter()
            .map(|r| vec![Cell::Real(r.z), Cell::Real(r.indicator), Cell::Count(r.multiplicity())])
            .collect(),
    };
    write_csv(args.out.as_deref(), &["z", "indicator_residual", "multiplicity"], &rows)?;
    Ok(EXIT_OK)
}

pub struct GreenArgs {
    pub config: PathBuf,
    pub z: Complex64,
    pub y: f64,
    pub xmin: f64,
    pub xmax: f64,
    pub samples: usize,
    pub accept_rtol: f64,
    pub out: Option<PathBuf>,
}

pub fn green(args: &GreenArgs) -> Result<i32, CliError> {
    let Model::Point(model) = load(&args.config)? else {
        return Err(CliError::Unsupported(
            "green: Green functions are available for point_interactions models only".into(),
        ));
    };
    if args.samples == 0 || !(args.xmin <= args.xmax) {
        return Err(CliError::Invalid(format!(
            "green: need samples >= 1 and xmin <= xmax, got {} samples on [{}, {}]",
            args.samples, args.xmin, args.xmax
        )));
    }
    let pair = model.build_pair()?;
    let resolvent = Resolvent::new(&model, &pair, args.z, args.accept_rtol).map_err(|e| match e {
        kreinkit_core::Error::InSpectrum { z, indicator } => CliError::Invalid(format!(
            "green: z = {z} is at or near a bound state (spectral indicator {indicator:.3e}); choose z off the spectrum"
        )),
        other => other.into(),
    })?;
    let step = if args.samples > 1 {
        (args.xmax - args.xmin) / (args.samples - 1) as f64
    } else {
        0.0
    };
    let rows: Vec<Vec<Cell>> = (0..args.samples)
        .map(|i| {
            let x = if i + 1 == args.samples && args.samples > 1 {
                args.xmax
            } else {
                args.xmin + step * i as f64
            };
            let g = resolvent.kernel(x, args.y);
            vec![Cell::Real(x), Cell::Real(g.re), Cell::Real(g.im)]
        })
        .collect();
    write_csv(args.out.as_deref(), &["x", "re_g", "im_g"], &rows)?;
    Ok(EXIT_OK)
}

pub struct QcheckArgs {
    pub config: PathBuf,
    pub z: Complex64,
    pub zeta: Complex64,
    pub max_residual: f64,
}

pub fn qcheck(args: &QcheckArgs) -> Result<i32, CliError> {
    let Model::Point(model) = load(&args.config)? else {
        return Err(CliError::Unsupported(
            "qcheck: the Q-function identity needs gamma-field Gram matrices, which robin_halfspace models do not provide"
                .into(),
        ));
    };
    let residual = krein::q_identity_residual(&model, args.z, args.zeta)?;
    let ok = residual <= args.max_residual;
    println!("z = {}, zeta = {}", args.z, args.zeta);
    println!("residual: {residual:.3e} (limit {:.1e}): {}", args.max_residual, if ok { "pass" } else { "fail" });
    Ok(if ok { EXIT_OK } else { EXIT_FAILURE })
}
