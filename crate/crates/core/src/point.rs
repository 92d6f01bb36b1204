//! Generalized point interactions for `−d²/dx²` on the real line.
//!
//! At each point `a_k` the one-sided values are coupled by
//! `(f′(a_k+), f(a_k+)) = e^{iθ_k} T_k (f′(a_k−), f(a_k−))` with a real
//! unimodular `T_k = [[α_k, β_k], [γ_k, δ_k]]`. The boundary triple uses, per point,
//!
//! * `Γ₁f = (f′(a−) − f′(a+), f(a+) − f(a−))`,
//! * `Γ₂f = ((f(a+) + f(a−))/2, (f′(a+) + f′(a−))/2)`,
//!
//! so component `2k` of a boundary vector belongs to the derivative jump at
//! point `k` and component `2k + 1` to the value jump. The reference operator
//! is the free Laplacian with spectrum `[0, ∞)`.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::krein::{self, BoundaryModel, ScanOptions, SpectralResult};
use crate::linalg::{self, ComplexMatrix, ComplexVector, ZERO};
use crate::linrel::{self, ParamPair};
use crate::quadrature::{self, QuadOptions};

/// Tolerance on `αδ − βγ = 1`, relative to `max(1, |αδ| + |βγ|)`.
pub const UNIMODULAR_TOL: f64 = 1e-12;

/// Kernels are truncated where they fall below this factor of their peak.
const TAIL_CUTOFF: f64 = 1e-12;

/// Truncation of the resolvent integral at `TAIL_DECAY / Re κ` beyond the outermost breakpoint.
const TAIL_DECAY: f64 = 30.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteractionPoint {
    pub position: f64,
    /// Phase in `[0, π]`.
    pub theta: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

impl InteractionPoint {
    pub fn new(position: f64, theta: f64, alpha: f64, beta: f64, gamma: f64, delta: f64) -> Self {
        Self {
            position,
            theta,
            alpha,
            beta,
            gamma,
            delta,
        }
    }

    /// Continuous `f`, `f′(a+) − f′(a−) = c·f(a)`.
    pub fn delta(position: f64, c: f64) -> Self {
        Self::new(position, 0.0, 1.0, c, 0.0, 1.0)
    }

    /// Continuous `f′`, `f(a+) − f(a−) = b·f′(a)`.
    pub fn delta_prime(position: f64, b: f64) -> Self {
        Self::new(position, 0.0, 1.0, 0.0, b, 1.0)
    }

    /// No interaction: `f` and `f′` continuous.
    pub fn free(position: f64) -> Self {
        Self::new(position, 0.0, 1.0, 0.0, 0.0, 1.0)
    }

    /// Checks the point's invariants; `index` is reported in errors.
    pub fn validate(&self, index: usize) -> Result<()> {
        let values = [self.position, self.theta, self.alpha, self.beta, self.gamma, self.delta];
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("interaction point parameters"));
        }
        if !(0.0..=core::f64::consts::PI).contains(&self.theta) {
            return Err(Error::ThetaRange {
                index,
                theta: self.theta,
            });
        }
        let ad = self.alpha * self.delta;
        let bg = self.beta * self.gamma;
        let det = ad - bg;
        if (det - 1.0).abs() > UNIMODULAR_TOL * (ad.abs() + bg.abs()).max(1.0) {
            return Err(Error::Unimodularity { index, det });
        }
        Ok(())
    }

    pub fn phase(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.theta)
    }

    /// The `2 × 2` blocks `(A_k, B_k)` of the boundary condition at this point.
    pub fn blocks(&self) -> (ComplexMatrix, ComplexMatrix) {
        let e = self.phase();
        let one = Complex64::new(1.0, 0.0);
        let a = DMatrix::from_row_slice(
            2,
            2,
            &[one + e * self.alpha, -e * self.beta, -e * self.gamma, one + e * self.delta],
        );
        let b = DMatrix::from_row_slice(
            2,
            2,
            &[
                -e * (2.0 * self.beta),
                (one - e * self.alpha) * 2.0,
                (e * self.delta - one) * 2.0,
                e * (2.0 * self.gamma),
            ],
        );
        (a, b)
    }
}

/// Finitely many interaction points with strictly increasing positions.
#[derive(Debug, Clone, PartialEq)]
pub struct PointModel {
    points: Vec<InteractionPoint>,
}

/// `sgn` with `sgn(0) = 0`.
fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Principal `√−z`, refusing `z ∈ [0, ∞)`.
pub fn kappa(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite("spectral parameter"));
    }
    if z.im == 0.0 && z.re >= 0.0 {
        return Err(Error::ReferenceSpectrum {
            z: z.re,
            threshold: 0.0,
        });
    }
    Ok((-z).sqrt())
}

/// Kernel of `(H⁰ − z)⁻¹` on the line.
pub fn free_green(x: f64, y: f64, z: Complex64) -> Complex64 {
    let k = (-z).sqrt();
    (-k * (x - y).abs()).exp() / (k * 2.0)
}

impl PointModel {
    pub fn new(points: Vec<InteractionPoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyModel);
        }
        for (i, p) in points.iter().enumerate() {
            p.validate(i)?;
            if i > 0 && points[i - 1].position >= p.position {
                return Err(Error::PositionsNotIncreasing { index: i });
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[InteractionPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn positions(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.position)
    }

    /// Block-diagonal `(A, B)` from the per-point blocks.
    pub fn build_pair(&self) -> Result<ParamPair> {
        let n = 2 * self.len();
        let mut a = DMatrix::zeros(n, n);
        let mut b = DMatrix::zeros(n, n);
        for (k, p) in self.points.iter().enumerate() {
            let (ak, bk) = p.blocks();
            a.view_mut((2 * k, 2 * k), (2, 2)).copy_from(&ak);
            b.view_mut((2 * k, 2 * k), (2, 2)).copy_from(&bk);
        }
        let pair = ParamPair::new(a, b)?;
        let check = linrel::check_pair(&pair);
        if !check.is_selfadjoint() {
            return Err(Error::NotSelfAdjoint);
        }
        Ok(pair)
    }

    /// The pair `(2i·I, 0)` of the reference operator itself (`Γ₁f = 0`).
    pub fn free_pair(&self) -> ParamPair {
        let n = 2 * self.len();
        ParamPair::new(linalg::identity(n) * Complex64::new(0.0, 2.0), DMatrix::zeros(n, n))
            .expect("square finite matrices")
    }

    pub fn q_matrix(&self, z: Complex64) -> Result<ComplexMatrix> {
        let k = kappa(z)?;
        let n = 2 * self.len();
        let mut q = DMatrix::zeros(n, n);
        for (j, aj) in self.positions().enumerate() {
            for (l, al) in self.positions().enumerate() {
                let s = sgn(aj - al);
                let e = (-k * (aj - al).abs()).exp() * 0.5;
                q[(2 * j, 2 * l)] = e / k;
                q[(2 * j, 2 * l + 1)] = e * s;
                q[(2 * j + 1, 2 * l)] = -e * s;
                q[(2 * j + 1, 2 * l + 1)] = -e * k;
            }
        }
        Ok(q)
    }

    /// `γ(z)e_i` evaluated at `x` for every boundary basis vector, written into `out`.
    fn gamma_basis_into(&self, k: Complex64, x: f64, out: &mut [Complex64]) {
        for (j, a) in self.positions().enumerate() {
            let e = (-k * (x - a).abs()).exp() * 0.5;
            out[2 * j] = e / k;
            out[2 * j + 1] = e * sgn(x - a);
        }
    }

    /// `(γ(z)e_i)(x)` for all `i`.
    pub fn gamma_basis(&self, z: Complex64, x: f64) -> Result<Vec<Complex64>> {
        let k = kappa(z)?;
        let mut out = vec![ZERO; 2 * self.len()];
        self.gamma_basis_into(k, x, &mut out);
        Ok(out)
    }

    /// `(γ(z)h)(x)`.
    pub fn gamma_apply(&self, h: &ComplexVector, z: Complex64, x: f64) -> Result<Complex64> {
        if h.len() != 2 * self.len() {
            return Err(Error::DimensionMismatch {
                expected: 2 * self.len(),
                found: h.len(),
            });
        }
        let basis = self.gamma_basis(z, x)?;
        Ok(basis.iter().zip(h.iter()).map(|(g, c)| g * c).sum())
    }

    /// Distance beyond which `|γ(z)e_i|` is below `TAIL_CUTOFF` of its peak.
    fn tail_length(k: Complex64) -> f64 {
        let scale = (1.0 / k.norm()).max(1.0);
        ((1.0 / TAIL_CUTOFF).ln() + scale.ln()) / k.re
    }

    /// `γ*(ζ)γ(z)` by adaptive quadrature.
    pub fn gamma_gram_quadrature(&self, zeta: Complex64, z: Complex64) -> Result<ComplexMatrix> {
        let kz = kappa(z)?;
        let kzeta = kappa(zeta)?;
        let n = 2 * self.len();
        let tail = Self::tail_length(kz).max(Self::tail_length(kzeta));
        let first = self.points[0].position;
        let last = self.points[self.len() - 1].position;
        let mut breaks = vec![first - tail];
        breaks.extend(self.positions());
        breaks.push(last + tail);
        let mut left = vec![ZERO; n];
        let mut right = vec![ZERO; n];
        let opts = QuadOptions {
            rel_tol: 1e-11,
            abs_tol: 1e-15,
            max_intervals: 20_000,
        };
        let (flat, _) = quadrature::integrate_vec(
            |x, out| {
                self.gamma_basis_into(kzeta, x, &mut left);
                self.gamma_basis_into(kz, x, &mut right);
                for i in 0..n {
                    for j in 0..n {
                        out[i * n + j] = left[i].conj() * right[j];
                    }
                }
            },
            n * n,
            &breaks,
            &opts,
        )?;
        Ok(DMatrix::from_row_slice(n, n, &flat))
    }

    /// Exact `L²` inner product `⟨γ(z)h₁, γ(z)h₂⟩` for real `z < 0`.
    pub fn l2_inner(&self, z: f64, h1: &ComplexVector, h2: &ComplexVector) -> Result<Complex64> {
        let k = kappa(Complex64::new(z, 0.0))?.re;
        let n = self.len();
        for h in [h1, h2] {
            if h.len() != 2 * n {
                return Err(Error::DimensionMismatch {
                    expected: 2 * n,
                    found: h.len(),
                });
            }
        }
        // On each interval g(x) = U e^{−κ(x−l)} + V e^{−κ(r−x)}; terms from points at or
        // left of l decay to the right, the others decay to the left.
        let pos: Vec<f64> = self.positions().collect();
        let right_going = |h: &ComplexVector, upto: usize, l: f64| -> Complex64 {
            (0..upto)
                .map(|j| (h[2 * j] / k + h[2 * j + 1]) * 0.5 * (-k * (l - pos[j])).exp())
                .sum()
        };
        let left_going = |h: &ComplexVector, from: usize, r: f64| -> Complex64 {
            (from..n)
                .map(|j| (h[2 * j] / k - h[2 * j + 1]) * 0.5 * (-k * (pos[j] - r)).exp())
                .sum()
        };
        let mut total = left_going(h1, 0, pos[0]).conj() * left_going(h2, 0, pos[0]) / (2.0 * k);
        total += right_going(h1, n, pos[n - 1]).conj() * right_going(h2, n, pos[n - 1]) / (2.0 * k);
        for m in 0..n - 1 {
            let (l, r) = (pos[m], pos[m + 1]);
            let len = r - l;
            let (u1, v1) = (right_going(h1, m + 1, l), left_going(h1, m + 1, r));
            let (u2, v2) = (right_going(h2, m + 1, l), left_going(h2, m + 1, r));
            let diag = -(-2.0 * k * len).exp_m1() / (2.0 * k);
            let cross = len * (-k * len).exp();
            total += (u1.conj() * u2 + v1.conj() * v2) * diag + (u1.conj() * v2 + v1.conj() * u2) * cross;
        }
        Ok(total)
    }

    /// Normalized eigenfunctions `γ(z)h` for an orthonormal basis of `ker(BQ(z) − A)`.
    pub fn eigenfunctions(&self, z: f64, kernel: &[ComplexVector]) -> Result<Vec<Eigenfunction>> {
        let mut out: Vec<Eigenfunction> = Vec::new();
        for h in kernel {
            let mut v = h.clone();
            for prev in &out {
                let proj = self.l2_inner(z, &prev.coefficients, &v)?;
                v -= &prev.coefficients * proj;
            }
            let norm = self.l2_inner(z, &v, &v)?.re.sqrt();
            if !(norm > 0.0) {
                return Err(Error::Singular {
                    what: "eigenfunction norm",
                    sigma_min: norm,
                });
            }
            v /= Complex64::new(norm, 0.0);
            // Fix the global phase: the largest coefficient becomes real positive.
            let lead = v.iter().copied().fold(ZERO, |m, c| if c.norm() > m.norm() { c } else { m });
            if lead.norm() > 0.0 {
                v *= lead.conj() / lead.norm();
            }
            out.push(Eigenfunction {
                model: self.clone(),
                z,
                coefficients: v,
            });
        }
        Ok(out)
    }
}

impl BoundaryModel for PointModel {
    fn dim(&self) -> usize {
        2 * self.len()
    }

    fn q_at(&self, z: Complex64) -> Result<ComplexMatrix> {
        self.q_matrix(z)
    }

    fn gamma_gram(&self, zeta: Complex64, z: Complex64) -> Result<ComplexMatrix> {
        self.gamma_gram_quadrature(zeta, z)
    }

    fn reference_spectrum_threshold(&self) -> f64 {
        0.0
    }
}

/// The resolvent of the extension `H^{A,B}` at a fixed `z`.
#[derive(Debug, Clone)]
pub struct Resolvent<'a> {
    model: &'a PointModel,
    z: Complex64,
    kappa: Complex64,
    correction: ComplexMatrix,
}

impl<'a> Resolvent<'a> {
    /// Refuses `z` where the spectral indicator is at most `accept_rtol·(1 + ‖BQ − A‖)`.
    pub fn new(model: &'a PointModel, pair: &ParamPair, z: Complex64, accept_rtol: f64) -> Result<Self> {
        let k = kappa(z)?;
        let q = model.q_matrix(z)?;
        let m = krein::boundary_matrix(pair, &q)?;
        let indicator = linalg::sigma_min(&m);
        if indicator <= accept_rtol * (1.0 + m.norm()) {
            return Err(Error::InSpectrum { z, indicator });
        }
        let correction = krein::correction_right(pair, &q)?.matrix;
        Ok(Self {
            model,
            z,
            kappa: k,
            correction,
        })
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn correction(&self) -> &ComplexMatrix {
        &self.correction
    }

    /// `G(x, y; z)`.
    pub fn kernel(&self, x: f64, y: f64) -> Complex64 {
        let n = self.model.dim();
        let mut gx = vec![ZERO; n];
        let mut gy = vec![ZERO; n];
        self.model.gamma_basis_into(self.kappa, x, &mut gx);
        self.model.gamma_basis_into(self.kappa, y, &mut gy);
        let mut corr = ZERO;
        for (i, gi) in gx.iter().enumerate() {
            for (j, gj) in gy.iter().enumerate() {
                corr += gi * self.correction[(i, j)] * gj;
            }
        }
        free_green(x, y, self.z) - corr
    }

    /// `((H^{A,B} − z)⁻¹ f)(x)` by quadrature over `y`, truncated where the kernel is negligible.
    pub fn apply<F: FnMut(f64) -> Complex64>(&self, mut f: F, x: f64) -> Result<Complex64> {
        let tail = TAIL_DECAY / self.kappa.re;
        let mut breaks: Vec<f64> = self.model.positions().collect();
        breaks.push(x);
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();
        let lo = breaks[0] - tail;
        let hi = breaks[breaks.len() - 1] + tail;
        breaks.insert(0, lo);
        breaks.push(hi);
        let opts = QuadOptions {
            rel_tol: 1e-9,
            abs_tol: 1e-14,
            max_intervals: 20_000,
        };
        Ok(quadrature::integrate(|y| self.kernel(x, y) * f(y), &breaks, &opts)?.0)
    }
}

/// `G(x, y; z)` of the extension with boundary conditions `pair`.
pub fn green_function(model: &PointModel, pair: &ParamPair, x: f64, y: f64, z: Complex64) -> Result<Complex64> {
    Ok(Resolvent::new(model, pair, z, ScanOptions::default().accept_rtol)?.kernel(x, y))
}

/// `((H^{A,B} − z)⁻¹ f)(x)`.
pub fn resolve_apply<F: FnMut(f64) -> Complex64>(
    model: &PointModel,
    pair: &ParamPair,
    f: F,
    z: Complex64,
    x: f64,
) -> Result<Complex64> {
    Resolvent::new(model, pair, z, ScanOptions::default().accept_rtol)?.apply(f, x)
}

/// An `L²`-normalized bound state `γ(z)h`.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenfunction {
    model: PointModel,
    z: f64,
    coefficients: ComplexVector,
}

impl Eigenfunction {
    pub fn eigenvalue(&self) -> f64 {
        self.z
    }

    /// The boundary vector `h`, scaled so that `‖γ(z)h‖ = 1`.
    pub fn coefficients(&self) -> &ComplexVector {
        &self.coefficients
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let k = Complex64::new((-self.z).sqrt(), 0.0);
        let mut basis = vec![ZERO; self.coefficients.len()];
        self.model.gamma_basis_into(k, x, &mut basis);
        basis.iter().zip(self.coefficients.iter()).map(|(g, c)| g * c).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundState {
    pub spectral: SpectralResult,
    pub eigenfunctions: Vec<Eigenfunction>,
}

/// Negative eigenvalues in `[z_lo, z_hi]` with normalized eigenfunctions.
pub fn bound_states(
    model: &PointModel,
    pair: &ParamPair,
    z_lo: f64,
    z_hi: f64,
    opts: &ScanOptions,
) -> Result<Vec<BoundState>> {
    krein::eigenvalue_scan(model, pair, z_lo, z_hi, opts)?
        .into_iter()
        .map(|spectral| {
            let eigenfunctions = model.eigenfunctions(spectral.eigenvalue, &spectral.kernel_vectors)?;
            Ok(BoundState {
                spectral,
                eigenfunctions,
            })
        })
        .collect()
}
