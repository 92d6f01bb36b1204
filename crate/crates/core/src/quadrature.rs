//! Globally adaptive Gauss–Kronrod (7/15) quadrature for complex vector integrands
//! on finite intervals.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};

/// Kronrod abscissae on `[0, 1]`, descending; the last one is the centre.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights for the odd-indexed Kronrod abscissae `XGK[1], XGK[3], XGK[5], XGK[7]`.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Upper bound on the number of subintervals.
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_intervals: 4000,
        }
    }
}

struct Piece {
    a: f64,
    b: f64,
    value: Vec<Complex64>,
    error: f64,
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn gk15<F: FnMut(f64, &mut [Complex64])>(f: &mut F, a: f64, b: f64, dim: usize) -> Piece {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut kronrod = vec![Complex64::new(0.0, 0.0); dim];
    let mut gauss = vec![Complex64::new(0.0, 0.0); dim];
    let mut buf = vec![Complex64::new(0.0, 0.0); dim];
    let mut add = |x: f64, wk: f64, wg: f64, f: &mut F, buf: &mut [Complex64]| {
        f(x, buf);
        for ((k, g), v) in kronrod.iter_mut().zip(gauss.iter_mut()).zip(buf.iter()) {
            *k += v * wk;
            *g += v * wg;
        }
    };
    add(centre, WGK[7], WG[3], f, &mut buf);
    for j in 0..7 {
        let wg = if j % 2 == 1 { WG[j / 2] } else { 0.0 };
        let dx = half * XGK[j];
        add(centre - dx, WGK[j], wg, f, &mut buf);
        add(centre + dx, WGK[j], wg, f, &mut buf);
    }
    let diff: Vec<Complex64> = kronrod
        .iter()
        .zip(gauss.iter())
        .map(|(k, g)| (k - g) * half)
        .collect();
    Piece {
        a,
        b,
        value: kronrod.into_iter().map(|k| k * half).collect(),
        error: norm(&diff),
    }
}

/// Integrates the `dim`-component integrand over `[breakpoints[0], breakpoints[last]]`,
/// starting from the subintervals between consecutive breakpoints (which must ascend).
///
/// `f(x, out)` writes the integrand at `x` into `out`. Returns the integral and the
/// estimated absolute error (Euclidean norm over components).
pub fn integrate_vec<F>(
    mut f: F,
    dim: usize,
    breakpoints: &[f64],
    opts: &QuadOptions,
) -> Result<(Vec<Complex64>, f64)>
where
    F: FnMut(f64, &mut [Complex64]),
{
    let mut pieces: Vec<Piece> = breakpoints
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| gk15(&mut f, w[0], w[1], dim))
        .collect();
    loop {
        let mut total = vec![Complex64::new(0.0, 0.0); dim];
        let mut error = 0.0;
        for p in &pieces {
            for (t, v) in total.iter_mut().zip(&p.value) {
                *t += v;
            }
            error += p.error;
        }
        if !error.is_finite() || total.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::Quadrature { error });
        }
        if error <= opts.abs_tol.max(opts.rel_tol * norm(&total)) {
            return Ok((total, error));
        }
        if pieces.len() >= opts.max_intervals {
            return Err(Error::Quadrature { error });
        }
        let worst = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .expect("at least one piece while error is positive");
        let Piece { a, b, .. } = pieces.swap_remove(worst);
        let mid = 0.5 * (a + b);
        if !(a < mid && mid < b) {
            return Err(Error::Quadrature { error });
        }
        pieces.push(gk15(&mut f, a, mid, dim));
        pieces.push(gk15(&mut f, mid, b, dim));
    }
}

/// Scalar version of [`integrate_vec`].
pub fn integrate<F>(mut f: F, breakpoints: &[f64], opts: &QuadOptions) -> Result<(Complex64, f64)>
where
    F: FnMut(f64) -> Complex64,
{
    let (v, err) = integrate_vec(|x, out| out[0] = f(x), 1, breakpoints, opts)?;
    Ok((v[0], err))
}
