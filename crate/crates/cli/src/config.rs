//! JSON model definitions.

use std::path::Path;

use kreinkit_core::{InteractionPoint, PointModel, RobinProblem};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelConfig {
    PointInteractions { points: Vec<PointSpec> },
    RobinHalfspace {
        period: f64,
        grid_size: usize,
        coefficients: CoefficientSpec,
    },
}

/// One interaction point: either the full parameter set or a δ / δ′ shorthand.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSpec {
    pub position: f64,
    pub theta: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub gamma: Option<f64>,
    pub delta: Option<f64>,
    pub delta_strength: Option<f64>,
    pub delta_prime_strength: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum CoefficientSpec {
    Constant { a: f64, b: f64 },
    /// Piece `i` covers `[start_i, start_{i+1})`; the last piece runs to the period.
    Piecewise { pieces: Vec<Piece> },
    /// One value per grid point `x_i = i·period/grid_size`.
    Sampled { a: Vec<f64>, b: Vec<f64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Piece {
    pub start: f64,
    pub a: f64,
    pub b: f64,
}

/// A validated model ready for computation.
#[derive(Debug, Clone)]
pub enum Model {
    Point(PointModel),
    Robin(RobinProblem),
}

impl ModelConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Parse { line, column, message, .. } => CliError::Parse {
                path: path.display().to_string(),
                line,
                column,
                message,
            },
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse {
            path: "<config>".into(),
            line: e.line(),
            column: e.column(),
            message: strip_position(&e.to_string()),
        })
    }

    /// Checks every model invariant and builds the core model.
    pub fn build(&self) -> Result<Model, CliError> {
        match self {
            Self::PointInteractions { points } => {
                let points = points
                    .iter()
                    .enumerate()
                    .map(|(i, p)| p.resolve(i))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Model::Point(PointModel::new(points)?))
            }
            Self::RobinHalfspace {
                period,
                grid_size,
                coefficients,
            } => {
                let problem = match coefficients {
                    CoefficientSpec::Constant { a, b } => RobinProblem::constant(*period, *grid_size, *a, *b)?,
                    CoefficientSpec::Piecewise { pieces } => {
                        check_pieces(pieces, *period)?;
                        RobinProblem::from_fn(*period, *grid_size, |x| {
                            let p = pieces.iter().rev().find(|p| p.start <= x).unwrap_or(&pieces[0]);
                            (p.a, p.b)
                        })?
                    }
                    CoefficientSpec::Sampled { a, b } => {
                        if a.len() != *grid_size {
                            return Err(CliError::Invalid(format!(
                                "sampled coefficients: {} values of a for grid_size {grid_size}",
                                a.len()
                            )));
                        }
                        RobinProblem::new(*period, a.clone(), b.clone())?
                    }
                };
                Ok(Model::Robin(problem))
            }
        }
    }
}

impl PointSpec {
    fn resolve(&self, index: usize) -> Result<InteractionPoint, CliError> {
        let general = [self.theta, self.alpha, self.beta, self.gamma, self.delta];
        let has_general = general.iter().any(Option::is_some);
        match (self.delta_strength, self.delta_prime_strength, has_general) {
            (Some(c), None, false) => Ok(InteractionPoint::delta(self.position, c)),
            (None, Some(b), false) => Ok(InteractionPoint::delta_prime(self.position, b)),
            (None, None, _) => match (self.alpha, self.beta, self.gamma, self.delta) {
                (Some(alpha), Some(beta), Some(gamma), Some(delta)) => Ok(InteractionPoint::new(
                    self.position,
                    self.theta.unwrap_or(0.0),
                    alpha,
                    beta,
                    gamma,
                    delta,
                )),
                _ => Err(CliError::Invalid(format!(
                    "point {index}: give alpha, beta, gamma, delta (and optionally theta), \
                     or one of delta_strength / delta_prime_strength"
                ))),
            },
            _ => Err(CliError::Invalid(format!(
                "point {index}: shorthand strengths cannot be combined with each other or with alpha/beta/gamma/delta/theta"
            ))),
        }
    }
}

fn check_pieces(pieces: &[Piece], period: f64) -> Result<(), CliError> {
    if pieces.is_empty() {
        return Err(CliError::Invalid("piecewise coefficients need at least one piece".into()));
    }
    if pieces[0].start != 0.0 {
        return Err(CliError::Invalid(format!(
            "first piece must start at 0, got {}",
            pieces[0].start
        )));
    }
    for (i, w) in pieces.windows(2).enumerate() {
        if !(w[1].start > w[0].start) {
            return Err(CliError::Invalid(format!("piece {}: starts must be strictly increasing", i + 1)));
        }
    }
    if let Some(last) = pieces.last().filter(|p| !(p.start < period)) {
        return Err(CliError::Invalid(format!(
            "piece start {} is not inside the period {period}",
            last.start
        )));
    }
    Ok(())
}

/// serde_json appends " at line L column C"; the position is reported separately.
fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message.to_string(),
    }
}
