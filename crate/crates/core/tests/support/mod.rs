//! Independent oracles and random generators shared by the integration tests.
#![allow(dead_code)]

use kreinkit_core::linalg::{self, ComplexMatrix};
use kreinkit_core::Complex64;
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

pub fn gaussian_matrix(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) / std::f64::consts::SQRT_2
    })
}

/// Haar-distributed unitary: QR of a complex Gaussian with the phases of `diag R` removed.
pub fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let qr = gaussian_matrix(rng, n).qr();
    let (q, r) = (qr.q(), qr.r());
    let phases = DMatrix::from_fn(n, n, |i, j| {
        if i == j && r[(i, i)].norm() > 0.0 {
            r[(i, i)] / r[(i, i)].norm()
        } else if i == j {
            c(1.0)
        } else {
            c(0.0)
        }
    });
    q * phases
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let g = gaussian_matrix(rng, n);
    (&g + g.adjoint()) * c(0.5)
}

/// Random complex matrix with condition number at most `max_cond`.
pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize, max_cond: f64) -> ComplexMatrix {
    loop {
        let l = gaussian_matrix(rng, n);
        let sv = linalg::singular_values(&l);
        if sv[0] / sv[n - 1] <= max_cond {
            return l;
        }
    }
}

/// Uniform grid `lo + i·h`, `i = 1, …, N` (interior points of a Dirichlet problem on `[lo, hi]`).
pub struct Grid1d {
    pub lo: f64,
    pub h: f64,
    pub n: usize,
}

impl Grid1d {
    pub fn new(lo: f64, hi: f64, h: f64) -> Self {
        let n = ((hi - lo) / h).round() as usize - 1;
        Self { lo, h, n }
    }

    pub fn x(&self, i: usize) -> f64 {
        self.lo + self.h * (i + 1) as f64
    }

    pub fn index_of(&self, x: f64) -> usize {
        let i = ((x - self.lo) / self.h).round() as usize - 1;
        assert!((self.x(i) - x).abs() < 1e-9 * self.h.max(1.0), "{x} is not a grid node");
        i
    }

    /// Diagonal of `−d²/dx² + Σ c_k δ(x − a_k)` discretized with three-point differences;
    /// each well contributes `c_k/h` at its node (the jump condition on the grid).
    /// The off-diagonal is constant `−1/h²`.
    pub fn delta_diagonal(&self, wells: &[(f64, f64)]) -> Vec<f64> {
        let mut d = vec![2.0 / (self.h * self.h); self.n];
        for &(a, strength) in wells {
            d[self.index_of(a)] += strength / self.h;
        }
        d
    }
}

/// Number of eigenvalues below `x` of the symmetric tridiagonal matrix (Sturm count).
pub fn sturm_count(diag: &[f64], off: f64, x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for (i, &d) in diag.iter().enumerate() {
        let prev = if i == 0 { 0.0 } else { off * off / q };
        q = d - x - prev;
        if q == 0.0 {
            q = -1e-300;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `k` smallest eigenvalues of the tridiagonal matrix, by bisection on `[lo, hi]`.
pub fn tridiagonal_lowest(diag: &[f64], off: f64, k: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..k)
        .map(|j| {
            let (mut a, mut b) = (lo, hi);
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if sturm_count(diag, off, m) > j {
                    b = m;
                } else {
                    a = m;
                }
                if b - a < 1e-15 * a.abs().max(1.0) {
                    break;
                }
            }
            0.5 * (a + b)
        })
        .collect()
}

/// Solves `(T − z) x = rhs` for the tridiagonal `T` (Thomas algorithm, no pivoting).
pub fn tridiagonal_solve(diag: &[f64], off: f64, z: Complex64, rhs: &[Complex64]) -> Vec<Complex64> {
    let n = diag.len();
    let mut cp = vec![c(0.0); n];
    let mut dp = vec![c(0.0); n];
    let mut denom = c(diag[0]) - z;
    cp[0] = c(off) / denom;
    dp[0] = rhs[0] / denom;
    for i in 1..n {
        denom = c(diag[i]) - z - cp[i - 1] * off;
        cp[i] = c(off) / denom;
        dp[i] = (rhs[i] - dp[i - 1] * off) / denom;
    }
    let mut x = vec![c(0.0); n];
    x[n - 1] = dp[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = dp[i] - cp[i] * x[i + 1];
    }
    x
}

/// Column `G(·, y)` of the discrete resolvent kernel `(T − z)⁻¹/h` for a δ-well operator.
pub fn fd_green_column(grid: &Grid1d, wells: &[(f64, f64)], z: Complex64, y: f64) -> Vec<Complex64> {
    let diag = grid.delta_diagonal(wells);
    let mut rhs = vec![c(0.0); grid.n];
    rhs[grid.index_of(y)] = c(1.0 / grid.h);
    tridiagonal_solve(&diag, -1.0 / (grid.h * grid.h), z, &rhs)
}

/// Smallest eigenvalue of a symmetric operator by Lanczos without reorthogonalization.
/// Loss of orthogonality only duplicates converged Ritz values, so the minimum is reliable.
pub fn lanczos_min<F: Fn(&[f64], &mut [f64])>(apply: F, n: usize, max_iter: usize, seed: u64) -> f64 {
    let mut r = rng(seed);
    let mut v: Vec<f64> = (0..n).map(|_| r.random::<f64>() - 0.5).collect();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
    let mut v_prev = vec![0.0; n];
    let mut w = vec![0.0; n];
    let (mut alphas, mut betas) = (Vec::new(), Vec::new());
    let mut beta = 0.0;
    let mut last = f64::INFINITY;
    let mut stable = 0;
    for it in 0..max_iter {
        apply(&v, &mut w);
        let alpha: f64 = w.iter().zip(&v).map(|(a, b)| a * b).sum();
        for i in 0..n {
            w[i] -= alpha * v[i] + beta * v_prev[i];
        }
        alphas.push(alpha);
        beta = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if it % 10 == 9 || beta == 0.0 {
            let ritz = ritz_min(&alphas, &betas);
            if (ritz - last).abs() <= 1e-13 * ritz.abs().max(1.0) {
                stable += 1;
                if stable >= 3 {
                    return ritz;
                }
            } else {
                stable = 0;
            }
            last = ritz;
        }
        if beta == 0.0 {
            return last;
        }
        betas.push(beta);
        for i in 0..n {
            v_prev[i] = v[i];
            v[i] = w[i] / beta;
        }
    }
    panic!("Lanczos did not converge in {max_iter} iterations (last {last})");
}

fn ritz_min(alphas: &[f64], betas: &[f64]) -> f64 {
    let k = alphas.len();
    let bound = alphas
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let l = if i > 0 { betas[i - 1].abs() } else { 0.0 };
            let r = if i < k - 1 { betas[i].abs() } else { 0.0 };
            (a - l - r, a + l + r)
        })
        .fold((f64::INFINITY, f64::NEG_INFINITY), |acc, (lo, hi)| (acc.0.min(lo), acc.1.max(hi)));
    let count = |x: f64| {
        let mut n = 0;
        let mut q = 1.0;
        for i in 0..k {
            let prev = if i == 0 { 0.0 } else { betas[i - 1] * betas[i - 1] / q };
            q = alphas[i] - x - prev;
            if q == 0.0 {
                q = -1e-300;
            }
            if q < 0.0 {
                n += 1;
            }
        }
        n
    };
    let (mut a, mut b) = bound;
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if count(m) > 0 {
            b = m;
        } else {
            a = m;
        }
    }
    0.5 * (a + b)
}

/// Lowest eigenvalue of the five-point Laplacian on the half-strip `[0, P) × (0, Y)`,
/// periodic in `x`, Dirichlet at `y = Y`, and `a u + b ∂_y u = 0` at `y = 0`.
///
/// Cells are centred at `x_i = i·P/nx` and `y_j = (j + ½)·hy`; the boundary condition
/// enters through a ghost cell `u(−hy/2) = r·u(hy/2)` with
/// `r = (b/hy + a/2)/(b/hy − a/2)`, keeping the matrix symmetric.
pub fn robin_fd_ground_state<F: Fn(f64) -> (f64, f64)>(
    period: f64,
    nx: usize,
    depth: f64,
    ny: usize,
    coeffs: F,
) -> f64 {
    let hx = period / nx as f64;
    let hy = depth / ny as f64;
    let (ix2, iy2) = (1.0 / (hx * hx), 1.0 / (hy * hy));
    let ghost: Vec<f64> = (0..nx)
        .map(|i| {
            let (a, b) = coeffs(hx * i as f64);
            (b / hy + a / 2.0) / (b / hy - a / 2.0)
        })
        .collect();
    let apply = |u: &[f64], out: &mut [f64]| {
        for (i, &g) in ghost.iter().enumerate() {
            let left = (i + nx - 1) % nx;
            let right = (i + 1) % nx;
            for j in 0..ny {
                let k = i * ny + j;
                let mut diag = 2.0 * ix2 + 2.0 * iy2;
                let mut acc = -ix2 * (u[left * ny + j] + u[right * ny + j]);
                if j > 0 {
                    acc -= iy2 * u[k - 1];
                } else {
                    diag -= iy2 * g;
                }
                if j + 1 < ny {
                    acc -= iy2 * u[k + 1];
                } else {
                    diag += iy2;
                }
                out[k] = acc + diag * u[k];
            }
        }
    };
    lanczos_min(apply, nx * ny, 20_000, 7)
}

/// One-sided limits at `a` of a function and its derivative, from second-order stencils.
pub struct OneSided {
    pub value_minus: Complex64,
    pub value_plus: Complex64,
    pub deriv_minus: Complex64,
    pub deriv_plus: Complex64,
}

pub fn one_sided<F: Fn(f64) -> Complex64>(f: F, a: f64, h: f64) -> OneSided {
    let p = [f(a + h), f(a + 2.0 * h), f(a + 3.0 * h)];
    let m = [f(a - h), f(a - 2.0 * h), f(a - 3.0 * h)];
    // Quadratic extrapolation to the point from h, 2h, 3h and the matching derivative stencil.
    let value = |s: &[Complex64; 3]| s[0] * 3.0 - s[1] * 3.0 + s[2];
    let deriv = |s: &[Complex64; 3]| (s[0] * -2.5 + s[1] * 4.0 - s[2] * 1.5) / h;
    OneSided {
        value_minus: value(&m),
        value_plus: value(&p),
        deriv_minus: -deriv(&m),
        deriv_plus: deriv(&p),
    }
}
