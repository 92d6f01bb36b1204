//! Krein resolvent corrections, the spectral indicator and eigenvalue search for
//! any model that supplies its Weyl function `Q(z)`.
//!
//! With boundary conditions `AΓ₁φ = BΓ₂φ` the resolvent of the extension is
//! `(H⁰ − z)⁻¹ − γ(z) C(z) γ*(z̄)`, where the middle factor `C(z)` is computed
//! here. A real `z` below the threshold of the reference operator is an
//! eigenvalue exactly when `BQ(z) − A` has a kernel.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, ComplexVector};
use crate::linrel::{self, ParamPair};
use crate::scan;

/// Relative tolerance on the consistency residual of the weak-form correction.
pub const WEAK_FORM_RTOL: f64 = 1e-8;

/// A self-adjoint reference operator with a finite-dimensional boundary triple.
///
/// Implementations must be pure: `q_at` may be called from any context and in any order.
pub trait BoundaryModel {
    /// Boundary-space dimension.
    fn dim(&self) -> usize;

    /// The Weyl function `Q(z)` for `z` in the resolvent set of the reference operator.
    fn q_at(&self, z: Complex64) -> Result<ComplexMatrix>;

    /// Gram matrix `γ*(ζ)γ(z)` of the Γ-field.
    fn gamma_gram(&self, _zeta: Complex64, _z: Complex64) -> Result<ComplexMatrix> {
        Err(Error::Unsupported("gamma_gram"))
    }

    /// Every real `z` strictly below this value lies in the resolvent set of the reference operator.
    fn reference_spectrum_threshold(&self) -> f64;
}

fn check_dims(pair: &ParamPair, q: &ComplexMatrix) -> Result<()> {
    if q.nrows() != pair.dim() || q.ncols() != pair.dim() {
        return Err(Error::DimensionMismatch {
            expected: pair.dim(),
            found: q.nrows(),
        });
    }
    Ok(())
}

/// `BQ − A`.
pub fn boundary_matrix(pair: &ParamPair, q: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_dims(pair, q)?;
    Ok(pair.b() * q - pair.a())
}

/// `C = Bᴴ(QBᴴ − Aᴴ)⁻¹` for a normalized pair.
pub fn correction_left(pair: &ParamPair, q: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_dims(pair, q)?;
    if !linrel::is_normalized(pair) {
        return Err(Error::NotNormalized);
    }
    let bh = pair.b().adjoint();
    let inner = q * &bh - pair.a().adjoint();
    Ok(bh * linalg::inverse(&inner, "QB* − A*")?)
}

/// Correction `(BQ − A)⁻¹B` together with the residual `‖(BQ − A)C − B‖`.
#[derive(Debug, Clone, PartialEq)]
pub struct RightCorrection {
    pub matrix: ComplexMatrix,
    pub residual: f64,
}

/// `C = (BQ − A)⁻¹B`. When `BQ − A` is singular the pseudo-inverse is used and the
/// result is accepted only if `B` maps into the range of `BQ − A`.
pub fn correction_right(pair: &ParamPair, q: &ComplexMatrix) -> Result<RightCorrection> {
    let m = boundary_matrix(pair, q)?;
    let sv = linalg::singular_values(&m);
    let smax = sv.first().copied().unwrap_or(0.0);
    let smin = sv.last().copied().unwrap_or(0.0);
    let matrix = if pair.dim() == 0 || smin > linalg::rank_cutoff(smax) {
        linalg::inverse(&m, "BQ − A")? * pair.b()
    } else {
        linalg::pseudo_inverse(&m) * pair.b()
    };
    let residual = (&m * &matrix - pair.b()).norm();
    if residual > WEAK_FORM_RTOL * pair.b().norm().max(1.0) {
        return Err(Error::Singular {
            what: "BQ − A on the range of B",
            sigma_min: smin,
        });
    }
    Ok(RightCorrection { matrix, residual })
}

/// `‖correction_left − correction_right‖`.
pub fn corrections_consistent(pair: &ParamPair, q: &ComplexMatrix) -> Result<f64> {
    let left = correction_left(pair, q)?;
    let right = correction_right(pair, q)?;
    Ok((left - right.matrix).norm())
}

/// `σ_min(BQ − A)`.
pub fn spectral_indicator(pair: &ParamPair, q: &ComplexMatrix) -> Result<f64> {
    Ok(linalg::sigma_min(&boundary_matrix(pair, q)?))
}

/// Parameters of [`eigenvalue_scan`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    /// Number of sample points on the interval.
    pub grid: usize,
    /// Final golden-section bracket width.
    pub tol: f64,
    /// A root is accepted when the indicator is at most `accept_rtol·(1 + ‖BQ − A‖)`.
    pub accept_rtol: f64,
    /// Kernel vectors are singular vectors with `σ ≤ kernel_factor · threshold`.
    pub kernel_factor: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            grid: 1000,
            tol: 1e-10,
            accept_rtol: 1e-6,
            kernel_factor: 10.0,
        }
    }
}

impl ScanOptions {
    pub fn threshold(&self, boundary_matrix: &ComplexMatrix) -> f64 {
        self.accept_rtol * (1.0 + boundary_matrix.norm())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralResult {
    pub eigenvalue: f64,
    /// Orthonormal basis of `ker(BQ − A)` at the eigenvalue.
    pub kernel_vectors: Vec<ComplexVector>,
    /// Indicator value at the refined root.
    pub indicator_residual: f64,
}

impl SpectralResult {
    pub fn multiplicity(&self) -> usize {
        self.kernel_vectors.len()
    }
}

pub(crate) fn validate_interval(lo: f64, hi: f64, threshold: f64, grid: usize) -> Result<()> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidInterval { lo, hi });
    }
    if hi >= threshold {
        return Err(Error::ReferenceSpectrum { z: hi, threshold });
    }
    if grid < 2 {
        return Err(Error::GridTooSmall(grid));
    }
    Ok(())
}

/// Runs a sampled indicator scan, keeping the first model error.
pub(crate) fn scan_indicator<F>(
    mut indicator_at: F,
    lo: f64,
    hi: f64,
    opts: &ScanOptions,
) -> Result<Vec<(f64, f64)>>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut failure = None;
    let minima = scan::scan_minima(
        |z| match indicator_at(z) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::INFINITY
            }
        },
        lo,
        hi,
        opts.grid,
        opts.tol,
    );
    match failure {
        Some(e) => Err(e),
        None => Ok(minima),
    }
}

/// Eigenvalues of the extension in `[z_lo, z_hi]`, ascending.
///
/// Roots closer together than the grid spacing may be reported once; refine `grid` to split them.
pub fn eigenvalue_scan<M: BoundaryModel + ?Sized>(
    model: &M,
    pair: &ParamPair,
    z_lo: f64,
    z_hi: f64,
    opts: &ScanOptions,
) -> Result<Vec<SpectralResult>> {
    validate_interval(z_lo, z_hi, model.reference_spectrum_threshold(), opts.grid)?;
    if pair.dim() != model.dim() {
        return Err(Error::DimensionMismatch {
            expected: model.dim(),
            found: pair.dim(),
        });
    }
    let at = |z: f64| -> Result<ComplexMatrix> {
        boundary_matrix(pair, &model.q_at(Complex64::new(z, 0.0))?)
    };
    let minima = scan_indicator(|z| Ok(linalg::sigma_min(&at(z)?)), z_lo, z_hi, opts)?;
    let mut out = Vec::new();
    for (z, value) in minima {
        let m = at(z)?;
        let threshold = opts.threshold(&m);
        if value > threshold {
            continue;
        }
        let kernel_vectors = linalg::small_singular_vectors(&m, opts.kernel_factor * threshold);
        out.push(SpectralResult {
            eigenvalue: z,
            kernel_vectors,
            indicator_residual: value,
        });
    }
    Ok(out)
}

/// Orthonormal basis of `ker(BQ(z) − A)` at a detected eigenvalue.
pub fn eigenspace<M: BoundaryModel + ?Sized>(
    model: &M,
    pair: &ParamPair,
    z: f64,
    opts: &ScanOptions,
) -> Result<Vec<ComplexVector>> {
    let m = boundary_matrix(pair, &model.q_at(Complex64::new(z, 0.0))?)?;
    let indicator = linalg::sigma_min(&m);
    let threshold = opts.threshold(&m);
    if indicator > threshold {
        return Err(Error::NotEigenvalue {
            z,
            indicator,
            threshold,
        });
    }
    Ok(linalg::small_singular_vectors(&m, opts.kernel_factor * threshold))
}

/// `‖Q(z) − Q(ζ)ᴴ − (z − ζ̄)γ*(ζ)γ(z)‖`.
pub fn q_identity_residual<M: BoundaryModel + ?Sized>(
    model: &M,
    z: Complex64,
    zeta: Complex64,
) -> Result<f64> {
    let gram = model.gamma_gram(zeta, z)?;
    let qz = model.q_at(z)?;
    let qzeta = model.q_at(zeta)?;
    Ok((qz - qzeta.adjoint() - gram * (z - zeta.conj())).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{diag, from_row_major, identity, I, ZERO};

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn scalar_pair(a: f64, b: f64) -> ParamPair {
        ParamPair::new(diag(&[c(a)]), diag(&[c(b)])).unwrap()
    }

    /// `Q(z) = diag(1/(2κ), −κ/2)` with `κ = √−z`: a single free junction's Weyl function.
    struct Diagonal;

    impl BoundaryModel for Diagonal {
        fn dim(&self) -> usize {
            2
        }

        fn q_at(&self, z: Complex64) -> Result<ComplexMatrix> {
            let k = (-z).sqrt();
            Ok(diag(&[c(0.5) / k, -k * 0.5]))
        }

        fn reference_spectrum_threshold(&self) -> f64 {
            0.0
        }
    }

    #[test]
    fn h0_pair_has_zero_correction() {
        let pair = ParamPair::new(identity(2) * (I * 2.0), ComplexMatrix::zeros(2, 2)).unwrap();
        let q = Diagonal.q_at(c(-3.0)).unwrap();
        assert!(correction_left(&pair, &q).unwrap().norm() < 1e-15);
        assert!(correction_right(&pair, &q).unwrap().matrix.norm() < 1e-15);
    }

    #[test]
    fn scalar_corrections() {
        let pair = scalar_pair(1.0, 1.0);
        for q in [c(3.0), Complex64::new(0.25, 1.0), c(-2.0)] {
            let qm = diag(&[q]);
            let expected = c(1.0) / (q - 1.0);
            assert!((correction_left(&pair, &qm).unwrap()[(0, 0)] - expected).norm() < 1e-14);
            assert!((correction_right(&pair, &qm).unwrap().matrix[(0, 0)] - expected).norm() < 1e-14);
            assert!(corrections_consistent(&pair, &qm).unwrap() < 1e-15);
        }
    }

    #[test]
    fn left_correction_needs_normalized_pair() {
        let pair = scalar_pair(0.0, 0.0);
        assert_eq!(
            correction_left(&pair, &diag(&[c(1.0)])),
            Err(Error::NotNormalized)
        );
    }

    #[test]
    fn right_correction_flags_spectrum() {
        let pair = scalar_pair(1.0, 1.0);
        assert!(matches!(
            correction_right(&pair, &diag(&[c(1.0)])),
            Err(Error::Singular { .. })
        ));
    }

    #[test]
    fn right_correction_weak_form_on_degenerate_pair() {
        // Second row carries no condition: B e₂ = 0 and the row of BQ − A vanishes.
        let a = from_row_major(2, 2, &[c(1.0), ZERO, ZERO, ZERO]).unwrap();
        let b = from_row_major(2, 2, &[c(2.0), ZERO, ZERO, ZERO]).unwrap();
        let pair = ParamPair::new(a, b).unwrap();
        let q = diag(&[c(3.0), c(-1.0)]);
        let right = correction_right(&pair, &q).unwrap();
        assert!(right.residual < 1e-14);
        assert!((right.matrix[(0, 0)] - c(0.4)).norm() < 1e-14);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let pair = scalar_pair(1.0, 1.0);
        assert!(matches!(
            spectral_indicator(&pair, &identity(2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn h0_scan_is_empty_and_bounded_below() {
        let a = diag(&[c(2.0), Complex64::new(0.0, 3.0)]);
        let pair = ParamPair::new(a, ComplexMatrix::zeros(2, 2)).unwrap();
        let roots =
            eigenvalue_scan(&Diagonal, &pair, -10.0, -0.01, &ScanOptions::default()).unwrap();
        assert!(roots.is_empty());
        for z in [-7.0, -0.5] {
            let q = Diagonal.q_at(c(z)).unwrap();
            assert!((spectral_indicator(&pair, &q).unwrap() - 2.0).abs() < 1e-14);
        }
        assert!(matches!(
            eigenspace(&Diagonal, &pair, -1.0, &ScanOptions::default()),
            Err(Error::NotEigenvalue { .. })
        ));
    }

    #[test]
    fn scan_rejects_bad_intervals() {
        let pair = scalar_pair(1.0, 1.0);
        let opts = ScanOptions::default();
        let m = Diagonal;
        let pair2 = ParamPair::new(identity(2), identity(2)).unwrap();
        assert!(matches!(
            eigenvalue_scan(&m, &pair2, -1.0, -2.0, &opts),
            Err(Error::InvalidInterval { .. })
        ));
        assert!(matches!(
            eigenvalue_scan(&m, &pair2, -1.0, 0.0, &opts),
            Err(Error::ReferenceSpectrum { .. })
        ));
        let coarse = ScanOptions { grid: 1, ..opts };
        assert_eq!(
            eigenvalue_scan(&m, &pair2, -2.0, -1.0, &coarse),
            Err(Error::GridTooSmall(1))
        );
        assert!(matches!(
            eigenvalue_scan(&m, &pair, -2.0, -1.0, &opts),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn scan_finds_roots_of_diagonal_model() {
        // A = diag(1, −2κ₀/2·…): first component vanishes at κ = 1/2, i.e. z = −1/4
        let pair = ParamPair::new(diag(&[c(1.0), c(1.0)]), diag(&[c(1.0), ZERO])).unwrap();
        let roots =
            eigenvalue_scan(&Diagonal, &pair, -3.0, -0.01, &ScanOptions::default()).unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0].eigenvalue + 0.25).abs() < 1e-9);
        assert_eq!(roots[0].multiplicity(), 1);
        assert!(roots[0].kernel_vectors[0][0].norm() > 1.0 - 1e-9);
    }

    #[test]
    fn q_identity_without_gram_is_unsupported() {
        assert_eq!(
            q_identity_residual(&Diagonal, c(-1.0), c(-2.0)),
            Err(Error::Unsupported("gamma_gram"))
        );
    }

    #[test]
    fn pair_normalization_does_not_change_right_correction() {
        let pair = scalar_pair(1.0, 3.0);
        let normalized = linrel::normalize_pair(&pair).unwrap();
        let q = diag(&[Complex64::new(0.5, 1.0)]);
        let c1 = correction_right(&pair, &q).unwrap().matrix;
        let c2 = correction_right(&normalized, &q).unwrap().matrix;
        assert!((c1 - c2).norm() < 1e-14);
    }
}
