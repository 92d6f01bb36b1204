//! Grid scan for local minima of a real function with golden-section refinement.

use alloc::vec::Vec;

// `f64::abs` is inherent in `core` only on newer toolchains.
#[cfg(not(feature = "std"))]
#[allow(unused_imports)]
use num_traits::Float;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Minimizes `f` on `[a, b]` to bracket width `tol`. Returns `(x, f(x))`.
pub fn golden_section_min<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        // Stalls once the bracket reaches rounding level.
        if c >= d {
            break;
        }
    }
    let mid = 0.5 * (a + b);
    let fm = f(mid);
    [(c, fc), (d, fd), (mid, fm)]
        .into_iter()
        .fold((mid, fm), |best, p| if p.1 < best.1 { p } else { best })
}

/// Samples `f` on `grid` uniformly spaced points of `[lo, hi]`, refines every discrete
/// local minimum by golden section and returns the refined `(x, f(x))` in ascending `x`.
///
/// Minima closer than `10·tol` after refinement are merged, keeping the smaller value.
pub fn scan_minima<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    grid: usize,
    tol: f64,
) -> Vec<(f64, f64)> {
    debug_assert!(grid >= 2 && lo < hi);
    let step = (hi - lo) / (grid - 1) as f64;
    let xs: Vec<f64> = (0..grid).map(|i| lo + step * i as f64).collect();
    let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let mut found: Vec<(f64, f64)> = Vec::new();
    for i in 0..grid {
        let left_ok = i == 0 || ys[i] < ys[i - 1];
        let right_ok = i == grid - 1 || ys[i] <= ys[i + 1];
        if !(left_ok && right_ok) {
            continue;
        }
        let a = if i == 0 { xs[0] } else { xs[i - 1] };
        let b = if i == grid - 1 { xs[grid - 1] } else { xs[i + 1] };
        let refined = golden_section_min(&mut f, a, b, tol);
        match found.last_mut() {
            Some(prev) if (refined.0 - prev.0).abs() <= 10.0 * tol => {
                if refined.1 < prev.1 {
                    *prev = refined;
                }
            }
            _ => found.push(refined),
        }
    }
    found
}
