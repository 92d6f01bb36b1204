//! The Laplacian on the half-plane `{y > 0}` with Robin/mixed boundary condition
//! `a u + b ∂_y u = 0` on `y = 0`, periodized in `x` with period `P` and sampled
//! on `M` boundary points.
//!
//! A real `z < 0` is an eigenvalue when `(a − bΛ(z))u = 0` has a nonzero solution,
//! where `Λ(z) = (−∂²_x − z)^{1/2}` acts on the grid as the Fourier multiplier
//! `√(k_j² − z)`, `k_j = 2πj/P`, `j = −M/2, …, M/2 − 1`.

use alloc::format;
use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::krein::{self, ScanOptions};
use crate::linalg::{self, ComplexMatrix};

/// `√(k² − z)` for `z < 0`.
pub fn lambda_multiplier(z: f64, k: f64) -> Result<f64> {
    if !(z < 0.0) {
        return Err(Error::ReferenceSpectrum { z, threshold: 0.0 });
    }
    Ok((k * k - z).sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub struct RobinProblem {
    period: f64,
    a: Vec<f64>,
    b: Vec<f64>,
    /// `cos(2π m / M)` for `m = 0, …, M − 1`.
    cos_table: Vec<f64>,
}

impl RobinProblem {
    /// Coefficients sampled at `x_i = i·P/M`; `M` must be a power of two (at least 2).
    pub fn new(period: f64, a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        let m = a.len();
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::InvalidProblem(format!("period must be positive, got {period}")));
        }
        if m < 2 || !m.is_power_of_two() {
            return Err(Error::InvalidProblem(format!(
                "grid size must be a power of two >= 2, got {m}"
            )));
        }
        if b.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: b.len(),
            });
        }
        if a.iter().chain(&b).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("Robin coefficients"));
        }
        if let Some(i) = (0..m).find(|&i| a[i] == 0.0 && b[i] == 0.0) {
            return Err(Error::InvalidProblem(format!(
                "|a| + |b| vanishes at sample {i}"
            )));
        }
        let cos_table = (0..m)
            .map(|r| (2.0 * core::f64::consts::PI * r as f64 / m as f64).cos())
            .collect();
        Ok(Self {
            period,
            a,
            b,
            cos_table,
        })
    }

    pub fn constant(period: f64, grid_size: usize, a: f64, b: f64) -> Result<Self> {
        Self::new(period, alloc::vec![a; grid_size], alloc::vec![b; grid_size])
    }

    /// Samples `coeffs(x) = (a(x), b(x))` on the grid.
    pub fn from_fn<F: Fn(f64) -> (f64, f64)>(period: f64, grid_size: usize, coeffs: F) -> Result<Self> {
        let (a, b) = (0..grid_size)
            .map(|i| coeffs(period * i as f64 / grid_size as f64))
            .unzip();
        Self::new(period, a, b)
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn grid_size(&self) -> usize {
        self.a.len()
    }

    pub fn a_samples(&self) -> &[f64] {
        &self.a
    }

    pub fn b_samples(&self) -> &[f64] {
        &self.b
    }

    pub fn sample_points(&self) -> Vec<f64> {
        let m = self.grid_size();
        (0..m).map(|i| self.period * i as f64 / m as f64).collect()
    }

    /// Grid frequencies `k_j` for `j = −M/2, …, M/2 − 1`.
    pub fn frequencies(&self) -> Vec<f64> {
        let m = self.grid_size() as i64;
        (-m / 2..m / 2)
            .map(|j| 2.0 * core::f64::consts::PI * j as f64 / self.period)
            .collect()
    }

    /// First column of the circulant matrix of `Λ(z)`. The multiplier is even in `j`
    /// apart from the unpaired `j = −M/2`, whose sine part vanishes on the grid, so the
    /// matrix is real.
    fn lambda_column(&self, z: f64) -> Result<Vec<f64>> {
        let m = self.grid_size();
        let half = (m / 2) as i64;
        let lambdas: Vec<(usize, f64)> = (-half..half)
            .map(|j| {
                let k = 2.0 * core::f64::consts::PI * j as f64 / self.period;
                Ok((j.rem_euclid(m as i64) as usize, lambda_multiplier(z, k)?))
            })
            .collect::<Result<_>>()?;
        Ok((0..m)
            .map(|r| {
                lambdas
                    .iter()
                    .map(|&(j, l)| l * self.cos_table[(j * r) % m])
                    .sum::<f64>()
                    / m as f64
            })
            .collect())
    }

    /// Real matrix of `u ↦ a·u − b·Λ(z)u` in the position basis.
    pub fn real_operator(&self, z: f64) -> Result<DMatrix<f64>> {
        let m = self.grid_size();
        let col = self.lambda_column(z)?;
        Ok(DMatrix::from_fn(m, m, |r, s| {
            let diag = if r == s { self.a[r] } else { 0.0 };
            diag - self.b[r] * col[(r + m - s) % m]
        }))
    }

    pub fn boundary_operator(&self, z: f64) -> Result<ComplexMatrix> {
        Ok(linalg::from_real(&self.real_operator(z)?))
    }

    /// `σ_min(a − bΛ(z))`.
    pub fn spectral_indicator(&self, z: f64) -> Result<f64> {
        let op = self.real_operator(z)?;
        Ok(op.svd(false, false).singular_values.min())
    }

    /// For `b > 0` everywhere, `b^{−1/2}(a − bΛ)b^{1/2}` is symmetric; returns its
    /// relative asymmetry, or `None` when `b` is not strictly positive.
    pub fn symmetrized_asymmetry(&self, z: f64) -> Result<Option<f64>> {
        if self.b.iter().any(|&b| !(b > 0.0)) {
            return Ok(None);
        }
        let op = self.real_operator(z)?;
        let m = self.grid_size();
        let s = DMatrix::from_fn(m, m, |r, c| op[(r, c)] * (self.b[c] / self.b[r]).sqrt());
        Ok(Some((&s - s.transpose()).norm() / s.norm()))
    }
}

/// A detected eigenvalue with its boundary traces.
#[derive(Debug, Clone, PartialEq)]
pub struct RobinRoot {
    pub z: f64,
    pub indicator: f64,
    /// Orthonormal basis of the numerical kernel of `a − bΛ(z)` on the grid.
    pub traces: Vec<DVector<f64>>,
}

impl RobinRoot {
    pub fn multiplicity(&self) -> usize {
        self.traces.len()
    }
}

/// Eigenvalues in `[z_lo, z_hi]` (`z_hi < 0`), found with the same scan-and-refine
/// procedure and acceptance threshold as [`krein::eigenvalue_scan`].
pub fn robin_bound_states(
    problem: &RobinProblem,
    z_lo: f64,
    z_hi: f64,
    opts: &ScanOptions,
) -> Result<Vec<RobinRoot>> {
    krein::validate_interval(z_lo, z_hi, 0.0, opts.grid)?;
    let minima = krein::scan_indicator(|z| problem.spectral_indicator(z), z_lo, z_hi, opts)?;
    let mut roots = Vec::new();
    for (z, indicator) in minima {
        let op = problem.real_operator(z)?;
        let threshold = opts.accept_rtol * (1.0 + op.norm());
        if indicator > threshold {
            continue;
        }
        let svd = op.svd(false, true);
        let v_t = svd.v_t.expect("right singular vectors requested");
        let traces = (0..problem.grid_size())
            .filter(|&j| svd.singular_values[j] <= opts.kernel_factor * threshold)
            .map(|j| v_t.row(j).transpose())
            .collect();
        roots.push(RobinRoot {
            z,
            indicator,
            traces,
        });
    }
    Ok(roots)
}
