//! Linear relations on `G = C^n` and boundary-condition parameter pairs.
//!
//! A linear relation is a subspace of `G ⊕ G`, stored as an orthonormal
//! basis of `2n`-component columns (first `n` rows: the `x₁` components, last
//! `n` rows: the `x₂` components). A [`ParamPair`] `(A, B)` encodes the
//! relation `{(x₁, x₂) : A x₁ = B x₂}`.

use alloc::vec::Vec;

use nalgebra::DMatrix;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, ComplexVector, I};

/// Tolerance for the symplectic form and projector distances on orthonormal bases.
pub const SUBSPACE_TOL: f64 = 1e-10;

/// Relative tolerance for `AB* = BA*`.
pub const PAIR_TOL: f64 = 1e-10;

/// Largest boundary dimension accepted by [`arnold_projection`].
pub const ARNOLD_MAX_DIM: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct LinearRelation {
    n: usize,
    basis: ComplexMatrix,
}

impl LinearRelation {
    /// Relation spanned by `2n`-component vectors. Linearly dependent input collapses.
    pub fn from_span(n: usize, vectors: &[ComplexVector]) -> Result<Self> {
        for v in vectors {
            if v.len() != 2 * n {
                return Err(Error::DimensionMismatch {
                    expected: 2 * n,
                    found: v.len(),
                });
            }
        }
        if vectors.is_empty() {
            return Ok(Self::zero(n));
        }
        let m = ComplexMatrix::from_columns(vectors);
        if !linalg::is_finite(&m) {
            return Err(Error::NonFinite("spanning vectors"));
        }
        Ok(Self::from_columns(n, &m))
    }

    /// Relation spanned by the columns of a `2n × k` matrix.
    pub fn from_columns(n: usize, columns: &ComplexMatrix) -> Self {
        debug_assert_eq!(columns.nrows(), 2 * n);
        Self {
            n,
            basis: linalg::orthonormal_range(columns),
        }
    }

    /// `Λ^{A,B} = ker [A | −B]`.
    pub fn from_pair(pair: &ParamPair) -> Self {
        let n = pair.dim();
        let mut m = DMatrix::zeros(n, 2 * n);
        m.view_mut((0, 0), (n, n)).copy_from(&pair.a);
        m.view_mut((0, n), (n, n)).copy_from(&(-&pair.b));
        Self {
            n,
            basis: linalg::null_space(&m),
        }
    }

    /// `{(B*u, A*u) : u ∈ G}`; equal to [`from_pair`](Self::from_pair) for normalized pairs.
    pub fn from_normalized_range(pair: &ParamPair) -> Result<Self> {
        let check = check_pair(pair);
        if !check.bg2 {
            return Err(Error::NotNormalized);
        }
        if !check.bg1 {
            return Err(Error::NotHermitianPair);
        }
        let n = pair.dim();
        let mut stacked = DMatrix::zeros(2 * n, n);
        stacked.view_mut((0, 0), (n, n)).copy_from(&pair.b.adjoint());
        stacked.view_mut((n, 0), (n, n)).copy_from(&pair.a.adjoint());
        Ok(Self::from_columns(n, &stacked))
    }

    /// Graph `{(x, Lx)}` of an `n × n` operator.
    pub fn graph(l: &ComplexMatrix) -> Result<Self> {
        if !l.is_square() {
            return Err(Error::NotSquare {
                rows: l.nrows(),
                cols: l.ncols(),
            });
        }
        let n = l.nrows();
        let mut stacked = DMatrix::zeros(2 * n, n);
        stacked.view_mut((0, 0), (n, n)).copy_from(&linalg::identity(n));
        stacked.view_mut((n, 0), (n, n)).copy_from(l);
        Ok(Self::from_columns(n, &stacked))
    }

    /// The zero relation `{(0, 0)}`.
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            basis: DMatrix::zeros(2 * n, 0),
        }
    }

    /// `G ⊕ 0`.
    pub fn first_axis(n: usize) -> Self {
        let mut basis = DMatrix::zeros(2 * n, n);
        basis.view_mut((0, 0), (n, n)).fill_with_identity();
        Self { n, basis }
    }

    /// `0 ⊕ G`.
    pub fn second_axis(n: usize) -> Self {
        let mut basis = DMatrix::zeros(2 * n, n);
        basis.view_mut((n, 0), (n, n)).fill_with_identity();
        Self { n, basis }
    }

    /// Boundary-space dimension `n`.
    pub fn boundary_dim(&self) -> usize {
        self.n
    }

    /// Subspace dimension `m`.
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &ComplexMatrix {
        &self.basis
    }

    /// `x₁` components of the basis (`n × m`).
    pub fn first_block(&self) -> ComplexMatrix {
        self.basis.rows(0, self.n).into_owned()
    }

    /// `x₂` components of the basis (`n × m`).
    pub fn second_block(&self) -> ComplexMatrix {
        self.basis.rows(self.n, self.n).into_owned()
    }

    pub fn projector(&self) -> ComplexMatrix {
        linalg::projector(&self.basis)
    }

    /// `Λ* = {(x₁, x₂) : ⟨x₁, y₂⟩ = ⟨x₂, y₁⟩ for all (y₁, y₂) ∈ Λ}`.
    pub fn adjoint(&self) -> Self {
        let n = self.n;
        if self.dim() == 0 {
            return Self {
                n,
                basis: linalg::identity(2 * n),
            };
        }
        // Row j of the constraint matrix is (y₂ᴴ, −y₁ᴴ) for basis column j.
        let m = self.dim();
        let mut constraints = DMatrix::zeros(m, 2 * n);
        constraints
            .view_mut((0, 0), (m, n))
            .copy_from(&self.second_block().adjoint());
        constraints
            .view_mut((0, n), (m, n))
            .copy_from(&(-self.first_block().adjoint()));
        Self {
            n,
            basis: linalg::null_space(&constraints),
        }
    }

    /// `‖X₁ᴴX₂ − X₂ᴴX₁‖`: the symplectic form evaluated on all basis pairs.
    pub fn symplectic_residual(&self) -> f64 {
        let x1 = self.first_block();
        let x2 = self.second_block();
        (x1.adjoint() * &x2 - x2.adjoint() * &x1).norm()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symplectic_residual() <= SUBSPACE_TOL
    }

    pub fn is_selfadjoint(&self) -> bool {
        self.dim() == self.n && self.is_symmetric()
    }
}

/// Frobenius distance between the orthogonal projectors, `None` if the boundary spaces differ.
pub fn projector_distance(r1: &LinearRelation, r2: &LinearRelation) -> Option<f64> {
    (r1.n == r2.n).then(|| (r1.projector() - r2.projector()).norm())
}

pub fn relations_equal(r1: &LinearRelation, r2: &LinearRelation) -> bool {
    r1.dim() == r2.dim()
        && projector_distance(r1, r2).is_some_and(|d| d <= SUBSPACE_TOL)
}

/// Boundary condition `A Γ₁φ = B Γ₂φ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamPair {
    a: ComplexMatrix,
    b: ComplexMatrix,
}

impl ParamPair {
    pub fn new(a: ComplexMatrix, b: ComplexMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NotSquare {
                rows: a.nrows(),
                cols: a.ncols(),
            });
        }
        if b.shape() != a.shape() {
            return Err(Error::DimensionMismatch {
                expected: a.nrows(),
                found: b.nrows(),
            });
        }
        if !linalg::is_finite(&a) || !linalg::is_finite(&b) {
            return Err(Error::NonFinite("parameter pair"));
        }
        Ok(Self { a, b })
    }

    pub fn dim(&self) -> usize {
        self.a.nrows()
    }

    pub fn a(&self) -> &ComplexMatrix {
        &self.a
    }

    pub fn b(&self) -> &ComplexMatrix {
        &self.b
    }

    /// `(LA, LB)`: same relation for injective `L`.
    pub fn left_multiplied(&self, l: &ComplexMatrix) -> Result<Self> {
        if l.shape() != self.a.shape() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: l.nrows(),
            });
        }
        Ok(Self {
            a: l * &self.a,
            b: l * &self.b,
        })
    }

    /// `M^{A,B} = [[A, −B], [B, A]]`.
    pub fn block_matrix(&self) -> ComplexMatrix {
        linalg::block2x2(&self.a, &(-&self.b), &self.b, &self.a)
    }

    pub(crate) fn scale(&self) -> f64 {
        (self.a.norm_squared() + self.b.norm_squared()).max(1.0)
    }
}

/// Outcome of the self-adjointness test for a parameter pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairCheck {
    /// `AB* = BA*` within tolerance.
    pub bg1: bool,
    /// `ker M^{A,B} = 0`.
    pub bg2: bool,
    pub bg1_residual: f64,
    pub block_sigma_min: f64,
}

impl PairCheck {
    pub fn is_selfadjoint(&self) -> bool {
        self.bg1 && self.bg2
    }
}

pub fn check_pair(pair: &ParamPair) -> PairCheck {
    let bg1_residual = (&pair.a * pair.b.adjoint() - &pair.b * pair.a.adjoint()).norm();
    let sv = linalg::singular_values(&pair.block_matrix());
    let smin = sv.last().copied().unwrap_or(0.0);
    let smax = sv.first().copied().unwrap_or(0.0);
    PairCheck {
        bg1: bg1_residual <= PAIR_TOL * pair.scale(),
        bg2: pair.dim() == 0 || smin > linalg::rank_cutoff(smax),
        bg1_residual,
        block_sigma_min: smin,
    }
}

/// `0 ∈ res M^{A,B}`. In finite dimension this coincides with the `bg2` condition.
pub fn is_normalized(pair: &ParamPair) -> bool {
    linalg::is_invertible(&pair.block_matrix())
}

/// `(A, B) = (i(1 + U), 1 − U)`.
pub fn cayley_pair(u: &ComplexMatrix) -> Result<ParamPair> {
    if !u.is_square() {
        return Err(Error::NotSquare {
            rows: u.nrows(),
            cols: u.ncols(),
        });
    }
    let n = u.nrows();
    let residual = linalg::unitarity_residual(u);
    if !(residual <= SUBSPACE_TOL * (n.max(1) as f64)) {
        return Err(Error::NotUnitary { residual });
    }
    let id = linalg::identity(n);
    ParamPair::new((&id + u) * I, &id - u)
}

/// The unique unitary `U` with `U(x₂ + i x₁) = x₂ − i x₁` on the relation.
pub fn cayley_transform(rel: &LinearRelation) -> Result<ComplexMatrix> {
    if !rel.is_selfadjoint() {
        return Err(Error::NotSelfAdjoint);
    }
    let x1 = rel.first_block();
    let x2 = rel.second_block();
    let p = &x2 + &x1 * I;
    let q = &x2 - &x1 * I;
    let p_inv = linalg::inverse(&p, "x₂ + i x₁ basis matrix")?;
    Ok(q * p_inv)
}

/// Replaces any self-adjoint pair by the Cayley pair of its relation.
pub fn normalize_pair(pair: &ParamPair) -> Result<ParamPair> {
    let check = check_pair(pair);
    if !check.bg1 {
        return Err(Error::NotHermitianPair);
    }
    if !check.bg2 {
        return Err(Error::NotSelfAdjoint);
    }
    let u = cayley_transform(&LinearRelation::from_pair(pair))?;
    cayley_pair(&u)
}

/// Recovers the injective `L` with `C = LA`, `D = LB`, where `(A, B)` is normalized
/// and `(C, D)` describes the same relation.
pub fn recover_denormalizer(normalized: &ParamPair, other: &ParamPair) -> Result<ComplexMatrix> {
    let n = normalized.dim();
    if other.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: other.dim(),
        });
    }
    let m_inv = linalg::inverse(&normalized.block_matrix(), "M^{A,B}")
        .map_err(|_| Error::NotNormalized)?;
    if !relations_equal(
        &LinearRelation::from_pair(normalized),
        &LinearRelation::from_pair(other),
    ) {
        return Err(Error::RelationMismatch);
    }
    let ll = other.block_matrix() * m_inv;
    let l = ll.view((0, 0), (n, n)).into_owned();
    let tol = PAIR_TOL * other.scale().sqrt() * normalized.scale().sqrt();
    let block_defect = (ll.view((n, n), (n, n)) - &l).norm()
        + ll.view((0, n), (n, n)).norm()
        + ll.view((n, 0), (n, n)).norm();
    let fit = (&other.a - &l * &normalized.a).norm() + (&other.b - &l * &normalized.b).norm();
    if block_defect > tol || fit > tol {
        return Err(Error::RelationMismatch);
    }
    if !linalg::is_invertible(&l) {
        return Err(Error::Singular {
            what: "denormalizer",
            sigma_min: linalg::sigma_min(&l),
        });
    }
    Ok(l)
}

/// The `n × n` minor of the basis selecting row `j` of the `x₂` block for `j ∈ theta`
/// and row `j` of the `x₁` block otherwise.
pub fn coordinate_minor(rel: &LinearRelation, theta: &[usize]) -> ComplexMatrix {
    let n = rel.n;
    let basis = &rel.basis;
    let mut minor = DMatrix::zeros(n, basis.ncols());
    for j in 0..n {
        let src = if theta.contains(&j) { n + j } else { j };
        minor.set_row(j, &basis.row(src));
    }
    minor
}

/// Smallest set `θ ⊆ {0, …, n−1}` (lexicographically first among equal sizes) for which
/// the Lagrangian `rel` projects injectively onto the coordinate subspace
/// `span{(e_j, 0) : j ∉ θ} ∪ {(0, e_j) : j ∈ θ}`.
pub fn arnold_projection(rel: &LinearRelation) -> Result<Vec<usize>> {
    let n = rel.n;
    if n > ARNOLD_MAX_DIM {
        return Err(Error::DimensionTooLarge(n));
    }
    if !rel.is_selfadjoint() {
        return Err(Error::NotSelfAdjoint);
    }
    for size in 0..=n {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            if linalg::is_invertible(&coordinate_minor(rel, &combo)) {
                return Ok(combo);
            }
            if !next_combination(&mut combo, n) {
                break;
            }
        }
    }
    Err(Error::NoCoordinateChart)
}

/// Advances `combo` to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Applies the boundary-triple rotation for `θ`: components `j ∈ θ` of `(Γ₁, Γ₂)`
/// become `(Γ₂^j, −Γ₁^j)`. Maps a relation to its description in the rotated triple.
pub fn rotate_relation(rel: &LinearRelation, theta: &[usize]) -> LinearRelation {
    let n = rel.n;
    let mut basis = rel.basis.clone();
    for &j in theta {
        let x1 = rel.basis.row(j).into_owned();
        let x2 = rel.basis.row(n + j).into_owned();
        basis.set_row(j, &x2);
        basis.set_row(n + j, &(-x1));
    }
    LinearRelation { n, basis }
}
