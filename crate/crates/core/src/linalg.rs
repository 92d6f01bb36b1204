//! Dense complex linear algebra shared by every module.
//!
//! Matrices are `nalgebra` dynamic matrices over `Complex64`. All rank and
//! kernel decisions go through [`rank_cutoff`]: a singular value `σ` counts as
//! zero when `σ < 1e-10 · max(1, σ_max)`.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexMatrix = DMatrix<Complex64>;
pub type ComplexVector = DVector<Complex64>;

/// Relative singular-value cutoff for rank decisions.
pub const RANK_RTOL: f64 = 1e-10;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn rank_cutoff(sigma_max: f64) -> f64 {
    RANK_RTOL * sigma_max.max(1.0)
}

/// Builds a matrix from row-major entries, rejecting wrong lengths and NaN/Inf.
pub fn from_row_major(rows: usize, cols: usize, entries: &[Complex64]) -> Result<ComplexMatrix> {
    if entries.len() != rows * cols {
        return Err(Error::DimensionMismatch {
            expected: rows * cols,
            found: entries.len(),
        });
    }
    if !entries.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite("matrix entries"));
    }
    Ok(DMatrix::from_row_slice(rows, cols, entries))
}

pub fn from_real(m: &DMatrix<f64>) -> ComplexMatrix {
    m.map(|x| Complex64::new(x, 0.0))
}

pub fn is_finite(m: &ComplexMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

pub fn identity(n: usize) -> ComplexMatrix {
    DMatrix::identity(n, n)
}

pub fn diag(entries: &[Complex64]) -> ComplexMatrix {
    DMatrix::from_diagonal(&DVector::from_column_slice(entries))
}

/// Singular values in descending order. Empty for matrices with a zero dimension.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    m.clone().svd(false, false).singular_values.iter().copied().collect()
}

/// Smallest singular value of the `min(rows, cols)` computed ones; `0` for empty matrices.
pub fn sigma_min(m: &ComplexMatrix) -> f64 {
    singular_values(m).last().copied().unwrap_or(0.0)
}

pub fn sigma_max(m: &ComplexMatrix) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Numerical rank under [`rank_cutoff`].
pub fn rank(m: &ComplexMatrix) -> usize {
    let sv = singular_values(m);
    let cutoff = rank_cutoff(sv.first().copied().unwrap_or(0.0));
    sv.iter().filter(|&&s| s > cutoff).count()
}

/// `true` when the square matrix is invertible under the rank cutoff.
pub fn is_invertible(m: &ComplexMatrix) -> bool {
    m.is_square() && rank(m) == m.nrows()
}

/// Orthonormal basis (as columns) of the column space.
pub fn orthonormal_range(m: &ComplexMatrix) -> ComplexMatrix {
    let rows = m.nrows();
    if rows == 0 || m.ncols() == 0 {
        return DMatrix::zeros(rows, 0);
    }
    let svd = m.clone().svd(true, false);
    let sv = &svd.singular_values;
    let cutoff = rank_cutoff(sv[0]);
    let r = sv.iter().filter(|&&s| s > cutoff).count();
    let u = svd.u.expect("left singular vectors requested");
    u.columns(0, r).into_owned()
}

/// Orthonormal basis (as columns) of the kernel.
pub fn null_space(m: &ComplexMatrix) -> ComplexMatrix {
    let cols = m.ncols();
    if cols == 0 {
        return DMatrix::zeros(0, 0);
    }
    if m.nrows() == 0 {
        return identity(cols);
    }
    // Pad wide matrices with zero rows so that the SVD returns a full V.
    let padded = if m.nrows() < cols {
        let mut p = DMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let sv = &svd.singular_values;
    let cutoff = rank_cutoff(sv[0]);
    let v = svd.v_t.expect("right singular vectors requested").adjoint();
    let kernel: Vec<usize> = (0..cols).filter(|&j| sv[j] <= cutoff).collect();
    let mut out = DMatrix::zeros(cols, kernel.len());
    for (dst, &j) in kernel.iter().enumerate() {
        out.set_column(dst, &v.column(j));
    }
    out
}

/// Right singular vectors whose singular value is at most `threshold`.
pub fn small_singular_vectors(m: &ComplexMatrix, threshold: f64) -> Vec<ComplexVector> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let n = m.ncols();
    let padded = if m.nrows() < n {
        let mut p = DMatrix::zeros(n, n);
        p.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v = svd.v_t.expect("right singular vectors requested").adjoint();
    (0..n)
        .filter(|&j| svd.singular_values[j] <= threshold)
        .map(|j| v.column(j).into_owned())
        .collect()
}

/// Orthogonal projector `Y Yᴴ` onto the span of the orthonormal columns of `basis`.
pub fn projector(basis: &ComplexMatrix) -> ComplexMatrix {
    basis * basis.adjoint()
}

/// Inverse of a square matrix, refusing numerically singular input.
pub fn inverse(m: &ComplexMatrix, what: &'static str) -> Result<ComplexMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let sv = singular_values(m);
    let smin = sv.last().copied().unwrap_or(0.0);
    if m.nrows() > 0 && smin <= rank_cutoff(sv[0]) {
        return Err(Error::Singular {
            what,
            sigma_min: smin,
        });
    }
    m.clone().try_inverse().ok_or(Error::Singular {
        what,
        sigma_min: smin,
    })
}

/// Moore–Penrose pseudo-inverse with the global rank cutoff.
pub fn pseudo_inverse(m: &ComplexMatrix) -> ComplexMatrix {
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        return DMatrix::zeros(cols, rows);
    }
    let svd = m.clone().svd(true, true);
    let cutoff = rank_cutoff(svd.singular_values[0]);
    let u = svd.u.as_ref().expect("u requested");
    let v_t = svd.v_t.as_ref().expect("v_t requested");
    let mut out = DMatrix::zeros(cols, rows);
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s > cutoff {
            out += v_t.row(k).adjoint() * u.column(k).adjoint() * Complex64::new(1.0 / s, 0.0);
        }
    }
    out
}

/// `[[a, b], [c, d]]` for square blocks of equal size.
pub fn block2x2(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    d: &ComplexMatrix,
) -> ComplexMatrix {
    let n = a.nrows();
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (n, n)).copy_from(a);
    m.view_mut((0, n), (n, n)).copy_from(b);
    m.view_mut((n, 0), (n, n)).copy_from(c);
    m.view_mut((n, n), (n, n)).copy_from(d);
    m
}

/// `‖UᴴU − I‖_F`.
pub fn unitarity_residual(u: &ComplexMatrix) -> f64 {
    (u.adjoint() * u - identity(u.ncols())).norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn null_space_of_wide_matrix() {
        // [1 0 0; 0 1 0] has kernel span(e3)
        let m = from_row_major(2, 3, &[c(1.0), ZERO, ZERO, ZERO, c(1.0), ZERO]).unwrap();
        let k = null_space(&m);
        assert_eq!(k.ncols(), 1);
        assert!((k[(2, 0)].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn range_collapses_dependent_columns() {
        let m = from_row_major(2, 2, &[c(1.0), c(2.0), ZERO, ZERO]).unwrap();
        assert_eq!(orthonormal_range(&m).ncols(), 1);
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn rejects_nan_entries() {
        let err = from_row_major(1, 1, &[Complex64::new(f64::NAN, 0.0)]).unwrap_err();
        assert_eq!(err, Error::NonFinite("matrix entries"));
    }

    #[test]
    fn pseudo_inverse_of_rank_one() {
        let m = from_row_major(2, 2, &[c(2.0), ZERO, ZERO, ZERO]).unwrap();
        let p = pseudo_inverse(&m);
        assert!((p[(0, 0)] - c(0.5)).norm() < 1e-15);
        assert!(p[(1, 1)].norm() < 1e-15);
    }

    #[test]
    fn inverse_refuses_singular() {
        let m = from_row_major(2, 2, &[c(1.0), c(1.0), c(1.0), c(1.0)]).unwrap();
        assert!(matches!(inverse(&m, "test"), Err(Error::Singular { .. })));
    }
}
